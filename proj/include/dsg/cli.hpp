#ifndef DSG_CLI_HPP_
#define DSG_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace dsg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

// Default directory for simulate/grid outputs when --out is not given.
inline constexpr const char* kOutDirEnv = "DSG_OUT_DIR";
// Directory searched for <name>.json scenario files before the registry.
inline constexpr const char* kScenarioDirEnv = "DSG_SCENARIO_DIR";

// Entry point of the `dsg` tool. Subcommands: simulate, analyze-oneshot,
// grid-search-forgiveness, list-scenarios, show-scenario.
int CliMain(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace dsg

#endif  // DSG_CLI_HPP_
