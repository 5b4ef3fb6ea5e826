#include <cmath>
#include <vector>

#include "doctest.h"
#include "dsg/harness.hpp"
#include "oracles.hpp"

using namespace dsg;

TEST_CASE("registry") {
  const auto names = BuiltinScenarioNames();
  for (const char* n : {"selfish_ddo", "tft_ddo", "memoryless_tft_ddo", "random_citizen_tft",
                        "forgiving_ddo", "overforgiving_ddo", "no_regulator_pg",
                        "discrete_regulator", "gaussian_regulator", "incentive_tax_0.5",
                        "incentive_tax_1", "incentive_tax_2", "incentive_no_tax_1"})
    CHECK(HasBuiltinScenario(n));
  CHECK_FALSE(HasBuiltinScenario("nope"));
  try {
    BuiltinScenario("nope");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("tft_ddo") != std::string::npos);
  }
}

TEST_CASE("window statistics") {
  const std::vector<double> s{1, 2, 3, 4, 5, 6};
  CHECK(WindowMean(s, 0, 6) == 3.5);
  CHECK(WindowMean(s, 4, 100) == 5.5);
  CHECK(FinalWindowMean(s, 2) == 5.5);
  CHECK(FinalWindowMean(s, 100) == 3.5);
  CHECK(std::isnan(WindowMean(s, 6, 6)));
}

TEST_CASE("rolling mean") {
  const std::vector<double> s{2, 4, 6, 8};
  CHECK(RollingMean(s, 1) == s);
  CHECK(RollingMean(s, 2) == std::vector<double>{2, 3, 5, 7});
  CHECK(RollingMean(s, 10) == std::vector<double>(4, 5.0));
  CHECK_THROWS(RollingMean(s, 0));

  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0, 6);
  std::vector<double> r(300);
  for (auto& v : r) v = u(gen);
  const auto rm = RollingMean(r, 25);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const std::size_t begin = i + 1 >= 25 ? i + 1 - 25 : 0;
    CHECK(rm[i] == doctest::Approx(oracle::Mean(r, begin, i + 1)).epsilon(1e-12));
  }
}

TEST_CASE("seed and horizon overrides") {
  const auto c = WithSeedCount(BuiltinScenario("tft_ddo"), 3);
  CHECK(c.seeds == std::vector<std::uint64_t>{0, 1, 2});
  const auto short_run = WithIterations(BuiltinScenario("incentive_tax_1"), 100);
  CHECK(short_run.iterations == 100);
  CHECK(short_run.incentive.active_until == 100);
  CHECK_NOTHROW(ValidateScenario(short_run));
}

TEST_CASE("runs are deterministic and parallel execution changes nothing") {
  const auto c = WithIterations(BuiltinScenario("gaussian_regulator"), 300);
  const auto a = RunMany(c, true);
  const auto b = RunMany(c, false);
  REQUIRE(a.runs.size() == 5);
  CHECK(a.runs == b.runs);
  CHECK(a.mean == b.mean);
  CHECK(RunScenario(c, 2) == a.runs[2]);
  CHECK(a.runs[0] != a.runs[1]);
}

TEST_CASE("summary reduction") {
  std::vector<std::vector<StepRecord>> runs(2, std::vector<StepRecord>(4));
  for (int t = 0; t < 4; ++t) {
    runs[0][t].su = 1.0;
    runs[1][t].su = 3.0 + t;
  }
  const auto s = Summarize("x", {0, 1}, runs);
  CHECK(s.mean == std::vector<double>{2.0, 2.5, 3.0, 3.5});
  CHECK(s.stddev[0] == doctest::Approx(1.0));
  CHECK(s.whole_run_means == std::vector<double>{1.0, 4.5});
  CHECK(s.WholeRunAverage() == 2.75);
}

TEST_CASE("forgiveness grid") {
  const auto grid = ForgivenessGrid(0.1);
  REQUIRE(grid.size() == 11);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 1.0);
  CHECK(ForgivenessGrid(0.3).back() == 1.0);
  CHECK_THROWS_AS(ForgivenessGrid(0.0), ConfigError);

  auto base = WithIterations(BuiltinScenario("forgiving_ddo"), 200);
  const std::vector<double> zero{0.0};
  const auto single = ForgivenessGridSearch(base, zero);
  CHECK(single.best_p == 0.0);
  auto plain = base;
  plain.ddo = AgentSpec::Simple("tft");
  CHECK(single.table[0].whole_run_su == doctest::Approx(RunMany(plain).WholeRunAverage()));
  CHECK_THROWS_AS(ForgivenessGridSearch(BuiltinScenario("tft_ddo"), zero), ConfigError);
}
