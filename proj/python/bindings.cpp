#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dsg/cli.hpp"
#include "dsg/harness.hpp"
#include "dsg/oneshot.hpp"
#include "dsg/report.hpp"

namespace py = pybind11;
using namespace dsg;

namespace {

ScenarioConfig Resolve(const std::string& scenario, int iterations, int seeds) {
  ScenarioConfig cfg = scenario.find('{') != std::string::npos ? ScenarioFromJson(scenario)
                                                               : ResolveScenario(scenario);
  if (iterations > 0) cfg = WithIterations(cfg, iterations);
  if (seeds > 0) cfg = WithSeedCount(cfg, seeds);
  return cfg;
}

py::dict Columns(const std::vector<StepRecord>& run) {
  std::vector<int> t;
  std::vector<std::string> ac, ad;
  std::vector<double> rc, rd, tax, adjc, adjd, inc, su;
  for (const auto& r : run) {
    t.push_back(r.t);
    ac.emplace_back(1, ToChar(r.joint.citizen));
    ad.emplace_back(1, ToChar(r.joint.ddo));
    rc.push_back(r.raw.citizen);
    rd.push_back(r.raw.ddo);
    tax.push_back(r.tax_rate);
    adjc.push_back(r.adjusted.citizen);
    adjd.push_back(r.adjusted.ddo);
    inc.push_back(r.incentive_added);
    su.push_back(r.su);
  }
  py::dict d;
  d["t"] = t;
  d["action_c"] = ac;
  d["action_d"] = ad;
  d["r_c"] = rc;
  d["r_d"] = rd;
  d["tax_rate"] = tax;
  d["adj_c"] = adjc;
  d["adj_d"] = adjd;
  d["incentive"] = inc;
  d["su"] = su;
  return d;
}

std::vector<std::string> NashStrings(const std::vector<JointAction>& eq) {
  std::vector<std::string> out;
  for (const auto& j : eq) out.push_back(std::string{ToChar(j.citizen), ToChar(j.ddo)});
  return out;
}

}  // namespace

PYBIND11_MODULE(_dsgame, m) {
  m.doc() = "Iterated prisoner's dilemma with a learning tax regulator";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<PayoffMatrix>(m, "PayoffMatrix")
      .def(py::init([](double t, double r, double p, double s) { return PayoffMatrix{t, r, p, s}; }),
           py::arg("t") = 6.0, py::arg("r") = 5.0, py::arg("p") = 1.0, py::arg("s") = 0.0)
      .def_readwrite("t", &PayoffMatrix::t)
      .def_readwrite("r", &PayoffMatrix::r)
      .def_readwrite("p", &PayoffMatrix::p)
      .def_readwrite("s", &PayoffMatrix::s)
      .def("validate", [](const PayoffMatrix& pm) { return ValidateIpd(pm).Describe(); })
      .def("is_ipd", [](const PayoffMatrix& pm) { return ValidateIpd(pm).ok(); })
      .def("__repr__", [](const PayoffMatrix& pm) {
        std::ostringstream os;
        os << "PayoffMatrix(t=" << pm.t << ", r=" << pm.r << ", p=" << pm.p << ", s=" << pm.s << ")";
        return os.str();
      });

  m.def("scenario_names", &BuiltinScenarioNames);
  m.def("scenario_json", [](const std::string& name) { return ScenarioToJson(ResolveScenario(name)); },
        py::arg("name"));

  m.def(
      "run_scenario",
      [](const std::string& scenario, std::uint64_t seed, int iterations) {
        const auto cfg = Resolve(scenario, iterations, 0);
        std::vector<StepRecord> run;
        {
          py::gil_scoped_release release;
          run = RunScenario(cfg, seed);
        }
        return Columns(run);
      },
      py::arg("scenario"), py::arg("seed") = 0, py::arg("iterations") = 0,
      "One run as a dict of columns. `scenario` is a built-in name or a JSON document.");

  m.def(
      "run_many",
      [](const std::string& scenario, int seeds, int iterations) {
        const auto cfg = Resolve(scenario, iterations, seeds);
        RunSummary s;
        {
          py::gil_scoped_release release;
          s = RunMany(cfg);
        }
        py::dict d;
        d["scenario"] = s.scenario;
        d["seeds"] = s.seeds;
        d["su"] = s.su;
        d["mean"] = s.mean;
        d["stddev"] = s.stddev;
        d["final_window_means"] = s.final_window_means;
        d["whole_run_means"] = s.whole_run_means;
        d["final_window_average"] = s.FinalWindowAverage();
        d["whole_run_average"] = s.WholeRunAverage();
        return d;
      },
      py::arg("scenario"), py::arg("seeds") = 0, py::arg("iterations") = 0);

  m.def(
      "trajectory_csv",
      [](const std::string& scenario, int seeds, int iterations) {
        return ToCsv(ExportRows(RunMany(Resolve(scenario, iterations, seeds))));
      },
      py::arg("scenario"), py::arg("seeds") = 0, py::arg("iterations") = 0);

  m.def(
      "grid_search_forgiveness",
      [](double step, const std::string& scenario, int seeds, int iterations) {
        const auto cfg = Resolve(scenario, iterations, seeds);
        const auto grid = ForgivenessGrid(step);
        GridSearchResult res;
        {
          py::gil_scoped_release release;
          res = ForgivenessGridSearch(cfg, grid);
        }
        py::list table;
        for (const auto& e : res.table) {
          py::dict row;
          row["p"] = e.p;
          row["whole_run_su"] = e.whole_run_su;
          row["final_window_su"] = e.final_window_su;
          table.append(row);
        }
        py::dict d;
        d["best_p"] = res.best_p;
        d["table"] = table;
        return d;
      },
      py::arg("step") = 0.1, py::arg("scenario") = "forgiving_ddo", py::arg("seeds") = 0,
      py::arg("iterations") = 0);

  m.def(
      "classify_regime",
      [](const PayoffMatrix& pm, double x) {
        const RegimeReport r = ClassifyRegime(pm, x);
        py::dict d;
        d["regime"] = ToString(r.regime);
        d["on_boundary"] = r.on_boundary;
        d["lower_threshold"] = r.lower_threshold;
        d["upper_threshold"] = r.upper_threshold;
        d["validity_bound"] = r.validity_bound;
        return d;
      },
      py::arg("matrix"), py::arg("x"));
  m.def("taxed_nash", [](const PayoffMatrix& pm, double x) { return NashStrings(PureNash2x2(TaxedBimatrix(pm, x))); },
        py::arg("matrix"), py::arg("x"));
  m.def(
      "incentivized_nash",
      [](const PayoffMatrix& pm, double x, double incentive) {
        return NashStrings(PureNash2x2(TaxedIncentivizedBimatrix(pm, x, incentive)));
      },
      py::arg("matrix"), py::arg("x"), py::arg("incentive"));
  m.def(
      "incentive_cc_nash",
      [](const PayoffMatrix& pm, double x, double incentive) {
        return IncentiveCcNash(pm, x, incentive).cooperation_is_nash;
      },
      py::arg("matrix"), py::arg("x"), py::arg("incentive"));
  m.def("is_stag_hunt", &IsStagHunt, py::arg("matrix"), py::arg("incentive"));
  m.def("spe_tax_threshold", &SpeTaxThreshold, py::arg("matrix"));

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = CliMain(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the dsg tool in-process; returns (exit code, stdout, stderr).");
}
