#include "dsg/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "dsg/harness.hpp"
#include "dsg/oneshot.hpp"
#include "dsg/report.hpp"
#include "json.hpp"

namespace dsg {

namespace {

// Bad user input that should exit with the usage code.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string EnvOr(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return (v && *v) ? std::string(v) : fallback;
}

ScenarioConfig ResolveOrUsage(const std::string& name, const std::string& dir) {
  try {
    return ResolveScenario(name, dir);
  } catch (const ConfigError& e) {
    if (!HasBuiltinScenario(name)) throw UsageError(e.what());
    throw;
  }
}

std::string NashList(const std::vector<JointAction>& eq) {
  std::string s;
  for (const auto& j : eq) s += (s.empty() ? "" : " ") + ToString(j);
  return s.empty() ? "none" : s;
}

nlohmann::json NashJson(const std::vector<JointAction>& eq) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& j : eq)
    arr.push_back(std::string{ToChar(j.citizen), ToChar(j.ddo)});
  return arr;
}

struct SimulateArgs {
  std::string scenario;
  std::string scenario_dir;
  int seeds = 0;
  int iterations = 0;
  std::string out_dir;
  std::string format = "csv";
  bool plot = false;
  int smooth = 1;
};

int RunSimulate(const SimulateArgs& a, std::ostream& out) {
  ScenarioConfig cfg =
      ResolveOrUsage(a.scenario, a.scenario_dir.empty()
                                     ? EnvOr(kScenarioDirEnv, "")
                                     : a.scenario_dir);
  if (a.iterations > 0) cfg = WithIterations(std::move(cfg), a.iterations);
  if (a.seeds > 0) cfg = WithSeedCount(std::move(cfg), a.seeds);
  const RunSummary summary = RunMany(cfg);

  const std::filesystem::path dir = a.out_dir.empty() ? EnvOr(kOutDirEnv, ".") : a.out_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto data_path = dir / (cfg.name + (a.format == "json" ? ".json" : ".csv"));
  if (a.format == "json") {
    ExportJson(summary, data_path);
  } else {
    ExportCsv(summary, data_path);
  }
  out << "scenario " << cfg.name << ": " << summary.seeds.size() << " run(s) x "
      << cfg.iterations << " steps\n";
  for (std::size_t i = 0; i < summary.seeds.size(); ++i) {
    out << "  seed " << summary.seeds[i] << ": mean SU " << std::setprecision(4)
        << summary.whole_run_means[i] << ", final-window SU "
        << summary.final_window_means[i] << "\n";
  }
  out << "  average final-window SU " << summary.FinalWindowAverage() << "\n";
  out << "wrote " << data_path.string() << "\n";
  if (a.plot) {
    const auto plot_path = dir / (cfg.name + ".svg");
    PlotOptions opt;
    opt.smoothing_window = a.smooth;
    EmitPlot(summary, plot_path, opt);
    out << "wrote " << plot_path.string() << "\n";
  }
  return kExitOk;
}

struct OneShotArgs {
  double t = 6, r = 5, p = 1, s = 0;
  double tax = 0.0;
  double incentive = 0.0;
  std::string appendix = "a";
};

int RunAnalyze(const OneShotArgs& a, std::ostream& out) {
  const PayoffMatrix m{a.t, a.r, a.p, a.s};
  const IpdValidation v = ValidateIpd(m);
  if (!v.ok()) throw UsageError("payoff matrix is not an IPD: " + v.Describe());
  if (!(a.tax >= 0.0 && a.tax <= 1.0)) throw UsageError("--tax must lie in [0,1]");
  if (!(a.incentive >= 0.0)) throw UsageError("--incentive must be >= 0");

  nlohmann::json rec;
  rec["appendix"] = a.appendix;
  rec["matrix"] = {{"t", m.t}, {"r", m.r}, {"p", m.p}, {"s", m.s}};
  rec["tax"] = a.tax;
  out << std::setprecision(10);
  out << "payoffs T=" << m.t << " R=" << m.r << " P=" << m.p << " S=" << m.s
      << ", tax x=" << a.tax << "\n";
  if (a.appendix == "a") {
    const RegimeReport rep = ClassifyRegime(m, a.tax);
    const auto nash = PureNash2x2(TaxedBimatrix(m, a.tax));
    out << "defectors taxed, levy shared evenly\n"
        << "regime: " << ToString(rep.regime)
        << (rep.on_boundary ? " (on threshold)" : "") << "\n"
        << "  prisoner's dilemma below 2(P-S)/T = " << rep.lower_threshold << "\n"
        << "  cooperation dominant above 2(1-R/T) = " << rep.upper_threshold << "\n"
        << "  valid while x < 1-S/T = " << rep.validity_bound << "\n"
        << "subgame-perfect tax threshold: " << SpeTaxThreshold(m) << "\n"
        << "pure Nash equilibria: " << NashList(nash) << "\n";
    rec["regime"] = ToString(rep.regime);
    rec["on_boundary"] = rep.on_boundary;
    rec["thresholds"] = {{"lower", rep.lower_threshold},
                         {"upper", rep.upper_threshold},
                         {"validity_bound", rep.validity_bound},
                         {"spe", SpeTaxThreshold(m)}};
    rec["nash"] = NashJson(nash);
  } else {
    const IncentiveNashReport rep = IncentiveCcNash(m, a.tax, a.incentive);
    const auto nash = PureNash2x2(TaxedIncentivizedBimatrix(m, a.tax, a.incentive));
    const bool stag = IsStagHunt(m, a.incentive);
    out << "both agents taxed, incentive I=" << a.incentive
        << " on mutual cooperation\n"
        << "  " << rep.no_switch_to_defection.description << ": "
        << (rep.no_switch_to_defection.holds ? "holds" : "fails") << "\n"
        << "  " << rep.no_temptation.description << ": "
        << (rep.no_temptation.holds ? "holds" : "fails") << "\n"
        << "(C,C) " << (rep.cooperation_is_nash ? "is" : "is not")
        << " the equilibrium\n"
        << "stag hunt without tax (I > T-R): " << (stag ? "yes" : "no") << "\n"
        << "pure Nash equilibria: " << NashList(nash) << "\n";
    rec["incentive"] = a.incentive;
    rec["cooperation_is_nash"] = rep.cooperation_is_nash;
    rec["thresholds"] = {{"no_switch_to_defection", rep.no_switch_to_defection.threshold},
                         {"no_temptation", rep.no_temptation.threshold}};
    rec["conditions"] = {{"no_switch_to_defection", rep.no_switch_to_defection.holds},
                         {"no_temptation", rep.no_temptation.holds}};
    rec["stag_hunt"] = stag;
    rec["nash"] = NashJson(nash);
  }
  out << rec.dump() << "\n";
  return kExitOk;
}

struct GridArgs {
  double step = 0.1;
  std::string scenario = "forgiving_ddo";
  std::string scenario_dir;
  int seeds = 0;
  int iterations = 0;
  std::string out_dir;
};

int RunGrid(const GridArgs& a, std::ostream& out) {
  ScenarioConfig cfg = ResolveOrUsage(
      a.scenario, a.scenario_dir.empty() ? EnvOr(kScenarioDirEnv, "") : a.scenario_dir);
  if (a.iterations > 0) cfg = WithIterations(std::move(cfg), a.iterations);
  if (a.seeds > 0) cfg = WithSeedCount(std::move(cfg), a.seeds);
  std::vector<double> grid;
  try {
    grid = ForgivenessGrid(a.step);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const GridSearchResult res = ForgivenessGridSearch(cfg, grid);
  std::ostringstream csv;
  csv << "p,whole_run_su,final_window_su\n";
  out << "p       whole-run SU   final-window SU\n";
  for (const auto& e : res.table) {
    out << std::fixed << std::setprecision(2) << std::setw(4) << e.p << "    "
        << std::setprecision(4) << std::setw(10) << e.whole_run_su << "     "
        << std::setw(10) << e.final_window_su << "\n";
    csv << FormatDouble(e.p) << ',' << FormatDouble(e.whole_run_su) << ','
        << FormatDouble(e.final_window_su) << '\n';
  }
  const double base = res.table.front().whole_run_su;
  const auto best = std::find_if(res.table.begin(), res.table.end(),
                                 [&](const GridEntry& e) { return e.p == res.best_p; });
  out << std::setprecision(4) << "best p = " << res.best_p << " (SU gain over p="
      << res.table.front().p << ": " << best->whole_run_su - base << ")\n";
  out.unsetf(std::ios::fixed);
  const std::string dir = a.out_dir.empty() ? EnvOr(kOutDirEnv, "") : a.out_dir;
  if (!dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
    const auto path = std::filesystem::path(dir) / "forgiveness_grid.csv";
    WriteTextFile(path, csv.str());
    out << "wrote " << path.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int CliMain(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Iterated data sharing game: simulations and one-shot analysis", "dsg"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "run a scenario over one or more seeds");
  sim->add_option("--scenario", sim_args.scenario, "scenario name")->required();
  sim->add_option("--scenario-dir", sim_args.scenario_dir,
                  "directory searched for <name>.json before the built-ins");
  sim->add_option("--seeds", sim_args.seeds, "run seeds 0..N-1")->check(CLI::PositiveNumber);
  sim->add_option("--iterations", sim_args.iterations, "steps per run")
      ->check(CLI::PositiveNumber);
  sim->add_option("--out", sim_args.out_dir, "output directory");
  sim->add_option("--format", sim_args.format, "trajectory format")
      ->check(CLI::IsMember({"csv", "json"}));
  sim->add_flag("--plot", sim_args.plot, "also write an SVG plot");
  sim->add_option("--smooth", sim_args.smooth, "rolling-mean window for the plot")
      ->check(CLI::PositiveNumber);

  OneShotArgs shot_args;
  auto* shot = app.add_subcommand("analyze-oneshot", "equilibria of the one-shot taxed game");
  shot->add_option("--t", shot_args.t, "temptation")->required();
  shot->add_option("--r", shot_args.r, "reward")->required();
  shot->add_option("--p", shot_args.p, "punishment")->required();
  shot->add_option("--s", shot_args.s, "sucker's payoff")->required();
  shot->add_option("--tax", shot_args.tax, "tax rate x")->required();
  shot->add_option("--incentive", shot_args.incentive, "incentive I on mutual cooperation");
  shot->add_option("--appendix", shot_args.appendix,
                   "a: defectors taxed; b: both taxed plus incentive")
      ->check(CLI::IsMember({"a", "b"}));

  GridArgs grid_args;
  auto* grid = app.add_subcommand("grid-search-forgiveness",
                                  "sweep the DDO forgiveness probability");
  grid->add_option("--grid-step", grid_args.step, "spacing of p in (0,1]")->required();
  grid->add_option("--scenario", grid_args.scenario, "base scenario");
  grid->add_option("--scenario-dir", grid_args.scenario_dir, "scenario file directory");
  grid->add_option("--seeds", grid_args.seeds, "run seeds 0..N-1")->check(CLI::PositiveNumber);
  grid->add_option("--iterations", grid_args.iterations, "steps per run")
      ->check(CLI::PositiveNumber);
  grid->add_option("--out", grid_args.out_dir, "write forgiveness_grid.csv here");

  auto* list = app.add_subcommand("list-scenarios", "print the built-in scenarios");

  std::string show_name;
  auto* show = app.add_subcommand("show-scenario", "print a scenario as JSON");
  show->add_option("--scenario", show_name, "scenario name")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sim) return RunSimulate(sim_args, out);
    if (*shot) return RunAnalyze(shot_args, out);
    if (*grid) return RunGrid(grid_args, out);
    if (*list) {
      for (const auto& c : BuiltinScenarios())
        out << std::left << std::setw(24) << c.name << c.description << "\n";
      return kExitOk;
    }
    if (*show) {
      out << ScenarioToJson(ResolveOrUsage(show_name, EnvOr(kScenarioDirEnv, "")));
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    for (const CLI::App* sub : app.get_subcommands()) err << sub->help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace dsg
