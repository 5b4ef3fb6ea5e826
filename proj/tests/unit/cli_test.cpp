#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dsg/cli.hpp"
#include "dsg/report.hpp"
#include "json.hpp"

using namespace dsg;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = CliMain(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json LastJsonLine(const std::string& text) {
  const auto start = text.rfind("\n{");
  return nlohmann::json::parse(text.substr(start == std::string::npos ? 0 : start + 1));
}

}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(Run({}).code == kExitUsage);
  CHECK(Run({"frobnicate"}).code == kExitUsage);
  const auto missing = Run({"simulate"});
  CHECK(missing.code == kExitUsage);
  CHECK(missing.err.find("--scenario") != std::string::npos);
  CHECK(Run({"simulate", "--scenario", "no_such_thing"}).code == kExitUsage);
  CHECK(Run({"simulate", "--scenario", "tft_ddo", "--format", "xml"}).code == kExitUsage);
  CHECK(Run({"analyze-oneshot", "--t", "5", "--r", "5", "--p", "1", "--s", "0", "--tax", "0.1"}).code ==
        kExitUsage);
  CHECK(Run({"grid-search-forgiveness", "--grid-step", "0"}).code == kExitUsage);
}

TEST_CASE("help exits with 0") { CHECK(Run({"--help"}).code == kExitOk); }

TEST_CASE("runtime errors exit with 2") {
  const auto blocker = std::filesystem::temp_directory_path() / "dsg_cli_blocker";
  std::filesystem::remove_all(blocker);
  { std::ofstream(blocker) << "x"; }
  const auto r = Run({"simulate", "--scenario", "alld_vs_alld", "--iterations", "5", "--seeds", "1",
                      "--out", (blocker / "sub").string()});
  CHECK(r.code == kExitRuntime);
  std::filesystem::remove_all(blocker);
}

TEST_CASE("simulate writes trajectories and a plot") {
  const auto dir = std::filesystem::temp_directory_path() / "dsg_cli_sim";
  std::filesystem::remove_all(dir);
  const auto r = Run({"simulate", "--scenario", "tft_vs_tft", "--seeds", "2", "--iterations", "30",
                      "--out", dir.string(), "--plot", "--smooth", "5"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("tft_vs_tft") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "tft_vs_tft.csv"));
  CHECK(std::filesystem::exists(dir / "tft_vs_tft.svg"));

  const auto j = Run({"simulate", "--scenario", "tft_vs_tft", "--seeds", "1", "--iterations", "10",
                      "--out", dir.string(), "--format", "json"});
  REQUIRE(j.code == kExitOk);
  CHECK(std::filesystem::exists(dir / "tft_vs_tft.json"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("analyze-oneshot reports the regime and equilibria") {
  const auto a = Run({"analyze-oneshot", "--t", "6", "--r", "5", "--p", "1", "--s", "0", "--tax", "0.4"});
  REQUIRE(a.code == kExitOk);
  const auto ja = LastJsonLine(a.out);
  CHECK(ja.at("regime") == "CooperationDominant");
  CHECK(ja.at("nash") == nlohmann::json::array({"CC"}));
  CHECK(ja.at("thresholds").at("spe").get<double>() == doctest::Approx(1.0 / 3.0));

  const auto b = Run({"analyze-oneshot", "--t", "6", "--r", "5", "--p", "1", "--s", "0", "--tax", "0",
                      "--incentive", "1.5", "--appendix", "b"});
  REQUIRE(b.code == kExitOk);
  const auto jb = LastJsonLine(b.out);
  CHECK(jb.at("stag_hunt") == true);
  CHECK(jb.at("nash") == nlohmann::json::array({"CC", "DD"}));
  CHECK(jb.at("cooperation_is_nash") == false);
}

TEST_CASE("grid search, listing and showing") {
  const auto g = Run({"grid-search-forgiveness", "--grid-step", "0.5", "--seeds", "1", "--iterations", "50"});
  REQUIRE(g.code == kExitOk);
  CHECK(g.out.find("best p = ") != std::string::npos);

  const auto l = Run({"list-scenarios"});
  CHECK(l.code == kExitOk);
  CHECK(l.out.find("gaussian_regulator") != std::string::npos);

  const auto s = Run({"show-scenario", "--scenario", "selfish_ddo"});
  CHECK(s.code == kExitOk);
  CHECK(nlohmann::json::parse(s.out).at("ddo").at("kind") == "alld");
}
