#ifndef DSG_SCENARIO_HPP_
#define DSG_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dsg/agents.hpp"
#include "dsg/game.hpp"
#include "dsg/regulator.hpp"

namespace dsg {

enum class RegulatorKind { kNone, kDiscrete, kGaussian };

std::string ToString(RegulatorKind kind);
RegulatorKind RegulatorKindFromString(const std::string& name);

// Default step sizes per regulator family.
inline constexpr double kDefaultGaussianEta = 0.0007;
inline constexpr double kDefaultDiscreteEta = 0.02;
// Gaussian starting mean; 0.5 * sigmoid(0.75) is a rate of about 0.34.
inline constexpr double kDefaultGaussianMean = 0.75;

struct RegulatorSpec {
  RegulatorKind kind = RegulatorKind::kNone;
  RegulatorConfig config;
  // Starting parameters; which one is used depends on `kind`.
  double initial_mean = kDefaultGaussianMean;
  std::array<double, 4> initial_logits{0.0, 0.0, 0.0, 0.0};

  TaxPolicy InitialPolicy() const;
  bool operator==(const RegulatorSpec&) const = default;
};

struct ScenarioConfig {
  std::string name;
  std::string description;
  PayoffMatrix matrix = PayoffMatrix::Default();
  AgentSpec citizen = AgentSpec::Simple("fpm");
  AgentSpec ddo = AgentSpec::Simple("tft");
  RegulatorSpec regulator;
  IncentiveSchedule incentive;
  bool tax_enabled = true;
  int iterations = 1000;
  double gamma = 0.96;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};

  bool operator==(const ScenarioConfig&) const = default;
};

// One iteration of a run. `raw` is the game payoff before incentives,
// `incentive_added` the amount paid to each agent, `adjusted` what the agents
// actually receive after taxation and redistribution, `su` the social utility
// of `adjusted`.
struct StepRecord {
  int t = 0;
  JointAction joint;
  RewardPair raw;
  double incentive_added = 0.0;
  double tax_rate = 0.0;
  RewardPair adjusted;
  double su = 0.0;

  bool operator==(const StepRecord&) const = default;
};

// Hard gate run before any iteration: IPD matrix, agent kinds and ranges,
// regulator and incentive settings. Throws ConfigError.
void ValidateScenario(const ScenarioConfig& config);

// JSON scenario files (one scenario per file).
ScenarioConfig ScenarioFromJson(const std::string& text);
std::string ScenarioToJson(const ScenarioConfig& config);
ScenarioConfig LoadScenarioFile(const std::filesystem::path& path);

}  // namespace dsg

#endif  // DSG_SCENARIO_HPP_
