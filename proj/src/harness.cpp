#include "dsg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dsg {

namespace {

ScenarioConfig Make(std::string name, std::string description,
                    AgentSpec citizen, AgentSpec ddo) {
  ScenarioConfig c;
  c.name = std::move(name);
  c.description = std::move(description);
  c.citizen = std::move(citizen);
  c.ddo = std::move(ddo);
  return c;
}

RegulatorSpec Gaussian() {
  RegulatorSpec r;
  r.kind = RegulatorKind::kGaussian;
  r.config.eta = kDefaultGaussianEta;
  return r;
}

RegulatorSpec Discrete() {
  RegulatorSpec r;
  r.kind = RegulatorKind::kDiscrete;
  r.config.eta = kDefaultDiscreteEta;
  return r;
}

std::string Label(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<ScenarioConfig> BuildRegistry() {
  const AgentSpec fpm = AgentSpec::Simple("fpm");
  const AgentSpec pg = AgentSpec::Simple("pg");
  const AgentSpec random_fpm = AgentSpec::EpsilonRandom(0.7, fpm);
  std::vector<ScenarioConfig> out;

  out.push_back(Make("selfish_ddo",
                     "FPM citizen with a strong cooperative prior vs an "
                     "always-defecting DDO",
                     AgentSpec::Simple("fpm", {{"prior_alpha", 20.0},
                                               {"prior_beta", 1.0}}),
                     AgentSpec::Simple("alld")));
  out.push_back(Make("tft_ddo", "FPM citizen vs a Tit-for-Tat DDO", fpm,
                     AgentSpec::Simple("tft")));
  out.push_back(Make("memoryless_tft_ddo",
                     "memoryless FPQ citizen vs a Tit-for-Tat DDO",
                     AgentSpec::Simple("fpq"), AgentSpec::Simple("tft")));
  out.push_back(Make("random_citizen_tft",
                     "FPM citizen acting at random 70% of the time vs TfT",
                     random_fpm, AgentSpec::Simple("tft")));
  out.push_back(Make("forgiving_ddo",
                     "random (eps=0.7) FPM citizen vs a TfT DDO forgiving 70% "
                     "of the time",
                     random_fpm, AgentSpec::Simple("forgiving_tft", {{"p", 0.7}})));
  out.push_back(Make("overforgiving_ddo",
                     "random (eps=0.7) FPM citizen vs a TfT DDO forgiving 95% "
                     "of the time",
                     random_fpm,
                     AgentSpec::Simple("forgiving_tft", {{"p", 0.95}})));

  out.push_back(Make("no_regulator_pg",
                     "two policy-gradient agents without intervention", pg, pg));
  auto discrete = Make("discrete_regulator",
                       "two policy-gradient agents under a categorical tax "
                       "regulator",
                       pg, pg);
  discrete.regulator = Discrete();
  out.push_back(discrete);
  auto gaussian = Make("gaussian_regulator",
                       "two policy-gradient agents under a Gaussian tax "
                       "regulator",
                       pg, pg);
  gaussian.regulator = Gaussian();
  out.push_back(gaussian);

  for (double amount : {0.5, 1.0, 2.0}) {
    auto taxed = Make("incentive_tax_" + Label(amount),
                      "Gaussian regulator paying I=" + Label(amount) +
                          " on mutual cooperation for 500 steps, taxes on",
                      pg, pg);
    taxed.regulator = Gaussian();
    taxed.incentive = {amount, 500};
    out.push_back(taxed);

    auto untaxed = taxed;
    untaxed.name = "incentive_no_tax_" + Label(amount);
    untaxed.description = "incentive I=" + Label(amount) +
                          " for 500 steps without tax collection";
    untaxed.tax_enabled = false;
    out.push_back(untaxed);
  }

  out.push_back(Make("alld_vs_alld", "two unconditional defectors",
                     AgentSpec::Simple("alld"), AgentSpec::Simple("alld")));
  out.push_back(Make("tft_vs_tft", "two Tit-for-Tat players",
                     AgentSpec::Simple("tft"), AgentSpec::Simple("tft")));
  return out;
}

}  // namespace

const std::vector<ScenarioConfig>& BuiltinScenarios() {
  static const std::vector<ScenarioConfig> kRegistry = BuildRegistry();
  return kRegistry;
}

std::vector<std::string> BuiltinScenarioNames() {
  std::vector<std::string> names;
  for (const auto& c : BuiltinScenarios()) names.push_back(c.name);
  return names;
}

bool HasBuiltinScenario(const std::string& name) {
  const auto& all = BuiltinScenarios();
  return std::any_of(all.begin(), all.end(),
                     [&](const ScenarioConfig& c) { return c.name == name; });
}

ScenarioConfig BuiltinScenario(const std::string& name) {
  for (const auto& c : BuiltinScenarios())
    if (c.name == name) return c;
  std::string known;
  for (const auto& n : BuiltinScenarioNames()) known += (known.empty() ? "" : ", ") + n;
  throw ConfigError("unknown scenario '" + name + "'; known scenarios: " + known);
}

ScenarioConfig ResolveScenario(const std::string& name,
                               const std::string& scenario_dir) {
  if (!scenario_dir.empty()) {
    const auto path = std::filesystem::path(scenario_dir) / (name + ".json");
    if (std::filesystem::exists(path)) return LoadScenarioFile(path);
  }
  return BuiltinScenario(name);
}

ScenarioConfig WithIterations(ScenarioConfig config, int iterations) {
  config.iterations = iterations;
  config.incentive.active_until =
      std::min(config.incentive.active_until, std::max(iterations, 0));
  return config;
}

ScenarioConfig WithSeedCount(ScenarioConfig config, int n) {
  config.seeds.clear();
  for (int i = 0; i < n; ++i) config.seeds.push_back(static_cast<std::uint64_t>(i));
  return config;
}

std::vector<StepRecord> RunScenario(const ScenarioConfig& config,
                                    std::uint64_t seed) {
  return BilevelTrain(config, seed);
}

std::vector<double> SuSeries(std::span<const StepRecord> records) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.su);
  return out;
}

double WindowMean(std::span<const double> series, int begin, int end) {
  const int n = static_cast<int>(series.size());
  begin = std::clamp(begin, 0, n);
  end = std::clamp(end, begin, n);
  if (begin == end) return std::nan("");
  return std::accumulate(series.begin() + begin, series.begin() + end, 0.0) /
         (end - begin);
}

double FinalWindowMean(std::span<const double> series, int window) {
  const int n = static_cast<int>(series.size());
  return WindowMean(series, n - window, n);
}

double RunSummary::FinalWindowAverage() const {
  return std::accumulate(final_window_means.begin(), final_window_means.end(),
                         0.0) /
         static_cast<double>(final_window_means.size());
}

double RunSummary::WholeRunAverage() const {
  return std::accumulate(whole_run_means.begin(), whole_run_means.end(), 0.0) /
         static_cast<double>(whole_run_means.size());
}

RunSummary Summarize(const std::string& scenario,
                     std::vector<std::uint64_t> seeds,
                     std::vector<std::vector<StepRecord>> runs) {
  RunSummary s;
  s.scenario = scenario;
  s.seeds = std::move(seeds);
  s.runs = std::move(runs);
  for (const auto& run : s.runs) s.su.push_back(SuSeries(run));
  const std::size_t len = s.su.empty() ? 0 : s.su.front().size();
  s.mean.assign(len, 0.0);
  s.stddev.assign(len, 0.0);
  const double n = static_cast<double>(s.su.size());
  for (std::size_t t = 0; t < len; ++t) {
    double sum = 0.0;
    for (const auto& series : s.su) sum += series[t];
    const double m = sum / n;
    double var = 0.0;
    for (const auto& series : s.su) var += (series[t] - m) * (series[t] - m);
    s.mean[t] = m;
    s.stddev[t] = std::sqrt(var / n);
  }
  for (const auto& series : s.su) {
    s.final_window_means.push_back(FinalWindowMean(series, s.final_window));
    s.whole_run_means.push_back(
        WindowMean(series, 0, static_cast<int>(series.size())));
  }
  return s;
}

RunSummary RunMany(const ScenarioConfig& config, bool parallel) {
  ValidateScenario(config);
  std::vector<std::vector<StepRecord>> runs(config.seeds.size());
  if (parallel && config.seeds.size() > 1) {
    std::vector<std::future<std::vector<StepRecord>>> pending;
    for (std::uint64_t seed : config.seeds)
      pending.push_back(std::async(std::launch::async, [&config, seed] {
        return RunScenario(config, seed);
      }));
    for (std::size_t i = 0; i < pending.size(); ++i) runs[i] = pending[i].get();
  } else {
    for (std::size_t i = 0; i < config.seeds.size(); ++i)
      runs[i] = RunScenario(config, config.seeds[i]);
  }
  return Summarize(config.name, config.seeds, std::move(runs));
}

std::vector<double> ForgivenessGrid(double step) {
  if (!(step > 0.0) || step > 1.0)
    throw ConfigError("grid step must lie in (0, 1]");
  std::vector<double> grid;
  const int n = static_cast<int>(std::floor(1.0 / step + 1e-9));
  for (int i = 0; i <= n; ++i) grid.push_back(std::min(1.0, i * step));
  if (grid.back() < 1.0 - 1e-12) grid.push_back(1.0);
  return grid;
}

GridSearchResult ForgivenessGridSearch(const ScenarioConfig& base,
                                       std::span<const double> grid) {
  if (grid.empty()) throw ConfigError("forgiveness grid is empty");
  if (base.ddo.kind != "forgiving_tft")
    throw ConfigError("forgiveness grid search needs a forgiving_tft DDO");
  GridSearchResult result;
  for (double p : grid) {
    if (!(p >= 0.0 && p <= 1.0))
      throw ConfigError("forgiveness probabilities must lie in [0,1]");
    ScenarioConfig cfg = base;
    cfg.ddo.params["p"] = p;
    const RunSummary s = RunMany(cfg);
    result.table.push_back({p, s.WholeRunAverage(), s.FinalWindowAverage()});
  }
  auto best = std::max_element(
      result.table.begin(), result.table.end(),
      [](const GridEntry& a, const GridEntry& b) {
        return a.whole_run_su < b.whole_run_su;
      });
  result.best_p = best->p;
  return result;
}

std::vector<double> RollingMean(std::span<const double> series, int window) {
  if (window < 1) throw std::invalid_argument("rolling window must be >= 1");
  const std::size_t n = series.size();
  if (static_cast<std::size_t>(window) > n) {
    const double m = n ? std::accumulate(series.begin(), series.end(), 0.0) / n : 0.0;
    return std::vector<double>(n, m);
  }
  std::vector<double> out(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += series[i];
    if (i >= static_cast<std::size_t>(window)) acc -= series[i - window];
    const std::size_t count = std::min<std::size_t>(i + 1, window);
    out[i] = acc / static_cast<double>(count);
  }
  return out;
}

}  // namespace dsg
