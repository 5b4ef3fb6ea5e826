#ifndef DSG_HARNESS_HPP_
#define DSG_HARNESS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dsg/bilevel.hpp"
#include "dsg/scenario.hpp"

namespace dsg {

// Trailing window used for every "converged to" statistic.
inline constexpr int kFinalWindow = 100;

// --- scenario registry ------------------------------------------------------

const std::vector<ScenarioConfig>& BuiltinScenarios();
std::vector<std::string> BuiltinScenarioNames();
bool HasBuiltinScenario(const std::string& name);
// Throws ConfigError listing the known names.
ScenarioConfig BuiltinScenario(const std::string& name);

// Resolves `name` as <dir>/<name>.json when such a file exists, otherwise
// from the built-in registry.
ScenarioConfig ResolveScenario(const std::string& name,
                               const std::string& scenario_dir = "");

// Copy with a new horizon; the incentive cutoff is clamped to fit.
ScenarioConfig WithIterations(ScenarioConfig config, int iterations);

// Copy whose seeds are 0..n-1.
ScenarioConfig WithSeedCount(ScenarioConfig config, int n);

// --- running ----------------------------------------------------------------

// Deterministic in (config, seed); one record per iteration.
std::vector<StepRecord> RunScenario(const ScenarioConfig& config,
                                    std::uint64_t seed);

std::vector<double> SuSeries(std::span<const StepRecord> records);

// Mean of series[begin, end), clamped to the series.
double WindowMean(std::span<const double> series, int begin, int end);
double FinalWindowMean(std::span<const double> series, int window = kFinalWindow);

struct RunSummary {
  std::string scenario;
  std::vector<std::uint64_t> seeds;
  std::vector<std::vector<StepRecord>> runs;  // one per seed
  std::vector<std::vector<double>> su;        // one per seed
  std::vector<double> mean;                   // pointwise across seeds
  std::vector<double> stddev;                 // population std across seeds
  int final_window = kFinalWindow;
  std::vector<double> final_window_means;     // per seed
  std::vector<double> whole_run_means;        // per seed

  double FinalWindowAverage() const;
  double WholeRunAverage() const;
};

// Runs every seed of the config (in parallel when `parallel`), then reduces.
RunSummary RunMany(const ScenarioConfig& config, bool parallel = true);

// Pure reduction over already completed runs.
RunSummary Summarize(const std::string& scenario,
                     std::vector<std::uint64_t> seeds,
                     std::vector<std::vector<StepRecord>> runs);

// --- forgiveness grid -------------------------------------------------------

struct GridEntry {
  double p = 0.0;
  double whole_run_su = 0.0;    // averaged over seeds
  double final_window_su = 0.0; // averaged over seeds
};

struct GridSearchResult {
  double best_p = 0.0;  // by whole-run SU; first grid point wins ties
  std::vector<GridEntry> table;
};

// {0, step, 2*step, ..., 1}.
std::vector<double> ForgivenessGrid(double step = 0.1);

// `base` must pair a citizen with a forgiving_tft DDO; its p is swept.
GridSearchResult ForgivenessGridSearch(const ScenarioConfig& base,
                                       std::span<const double> grid);

// --- smoothing --------------------------------------------------------------

// Trailing mean; output length equals input length. A window longer than the
// series yields the full-series mean at every position.
std::vector<double> RollingMean(std::span<const double> series, int window);

}  // namespace dsg

#endif  // DSG_HARNESS_HPP_
