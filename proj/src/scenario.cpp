#include "dsg/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dsg {

using nlohmann::json;

std::string ToString(RegulatorKind kind) {
  switch (kind) {
    case RegulatorKind::kNone:
      return "none";
    case RegulatorKind::kDiscrete:
      return "discrete";
    case RegulatorKind::kGaussian:
      return "gaussian";
  }
  return "none";
}

RegulatorKind RegulatorKindFromString(const std::string& name) {
  if (name == "none") return RegulatorKind::kNone;
  if (name == "discrete") return RegulatorKind::kDiscrete;
  if (name == "gaussian") return RegulatorKind::kGaussian;
  throw ConfigError("unknown regulator kind '" + name +
                    "' (expected none, discrete or gaussian)");
}

TaxPolicy RegulatorSpec::InitialPolicy() const {
  if (kind == RegulatorKind::kDiscrete) return DiscreteTaxPolicy{initial_logits};
  return GaussianTaxPolicy{initial_mean};
}

void ValidateScenario(const ScenarioConfig& c) {
  const std::string where = "scenario '" + c.name + "': ";
  try {
    RequireIpd(c.matrix);
    ValidateAgentSpec(c.citizen);
    ValidateAgentSpec(c.ddo);
  } catch (const ConfigError& e) {
    throw ConfigError(where + e.what());
  }
  if (c.iterations < 1) throw ConfigError(where + "iterations must be >= 1");
  if (!(c.gamma > 0.0 && c.gamma < 1.0))
    throw ConfigError(where + "gamma must lie in (0,1)");
  if (c.seeds.empty()) throw ConfigError(where + "at least one seed is required");
  const auto& reg = c.regulator;
  if (reg.kind != RegulatorKind::kNone) {
    if (reg.config.update_period < 1)
      throw ConfigError(where + "regulator.update_period must be >= 1");
    if (!(reg.config.eta >= 0.0) || !std::isfinite(reg.config.eta))
      throw ConfigError(where + "regulator.eta must be a finite non-negative number");
    if (!(reg.config.gamma > 0.0 && reg.config.gamma < 1.0))
      throw ConfigError(where + "regulator.gamma must lie in (0,1)");
    for (double l : reg.initial_logits)
      if (!std::isfinite(l)) throw ConfigError(where + "regulator logits must be finite");
    if (!std::isfinite(reg.initial_mean))
      throw ConfigError(where + "regulator mean must be finite");
  }
  if (!(c.incentive.amount >= 0.0) || !std::isfinite(c.incentive.amount))
    throw ConfigError(where + "incentive.amount must be >= 0");
  if (c.incentive.active_until < 0 || c.incentive.active_until > c.iterations)
    throw ConfigError(where + "incentive.active_until must lie in [0, iterations]");
}

namespace {

json AgentToJson(const AgentSpec& spec) {
  json j;
  j["kind"] = spec.kind;
  if (!spec.params.empty()) j["params"] = spec.params;
  if (!spec.inner.empty()) j["inner"] = AgentToJson(spec.inner.front());
  return j;
}

AgentSpec AgentFromJson(const json& j) {
  if (j.is_string()) return AgentSpec::Simple(j.get<std::string>());
  AgentSpec spec;
  spec.kind = j.at("kind").get<std::string>();
  if (j.contains("params"))
    spec.params = j.at("params").get<std::map<std::string, double>>();
  if (j.contains("inner")) spec.inner.push_back(AgentFromJson(j.at("inner")));
  return spec;
}

template <typename T>
void ReadIfPresent(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ScenarioConfig ScenarioFromJson(const std::string& text) {
  ScenarioConfig c;
  try {
    const json j = json::parse(text);
    ReadIfPresent(j, "name", c.name);
    ReadIfPresent(j, "description", c.description);
    if (j.contains("matrix")) {
      const json& m = j.at("matrix");
      c.matrix = {m.at("t").get<double>(), m.at("r").get<double>(),
                  m.at("p").get<double>(), m.at("s").get<double>()};
    }
    if (j.contains("citizen")) c.citizen = AgentFromJson(j.at("citizen"));
    if (j.contains("ddo")) c.ddo = AgentFromJson(j.at("ddo"));
    if (j.contains("regulator")) {
      const json& r = j.at("regulator");
      c.regulator.kind =
          RegulatorKindFromString(r.value("kind", std::string("none")));
      if (c.regulator.kind == RegulatorKind::kDiscrete)
        c.regulator.config.eta = kDefaultDiscreteEta;
      else if (c.regulator.kind == RegulatorKind::kGaussian)
        c.regulator.config.eta = kDefaultGaussianEta;
      ReadIfPresent(r, "update_period", c.regulator.config.update_period);
      ReadIfPresent(r, "eta", c.regulator.config.eta);
      ReadIfPresent(r, "gamma", c.regulator.config.gamma);
      ReadIfPresent(r, "initial_mean", c.regulator.initial_mean);
      ReadIfPresent(r, "initial_logits", c.regulator.initial_logits);
    }
    if (j.contains("incentive")) {
      const json& inc = j.at("incentive");
      ReadIfPresent(inc, "amount", c.incentive.amount);
      ReadIfPresent(inc, "active_until", c.incentive.active_until);
    }
    ReadIfPresent(j, "tax_enabled", c.tax_enabled);
    ReadIfPresent(j, "iterations", c.iterations);
    ReadIfPresent(j, "gamma", c.gamma);
    ReadIfPresent(j, "seeds", c.seeds);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scenario file: ") + e.what());
  }
  return c;
}

std::string ScenarioToJson(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  if (!c.description.empty()) j["description"] = c.description;
  j["matrix"] = {{"t", c.matrix.t}, {"r", c.matrix.r}, {"p", c.matrix.p},
                 {"s", c.matrix.s}};
  j["citizen"] = AgentToJson(c.citizen);
  j["ddo"] = AgentToJson(c.ddo);
  json reg;
  reg["kind"] = ToString(c.regulator.kind);
  if (c.regulator.kind != RegulatorKind::kNone) {
    reg["update_period"] = c.regulator.config.update_period;
    reg["eta"] = c.regulator.config.eta;
    reg["gamma"] = c.regulator.config.gamma;
    if (c.regulator.kind == RegulatorKind::kGaussian)
      reg["initial_mean"] = c.regulator.initial_mean;
    else
      reg["initial_logits"] = c.regulator.initial_logits;
  }
  j["regulator"] = reg;
  j["incentive"] = {{"amount", c.incentive.amount},
                    {"active_until", c.incentive.active_until}};
  j["tax_enabled"] = c.tax_enabled;
  j["iterations"] = c.iterations;
  j["gamma"] = c.gamma;
  j["seeds"] = c.seeds;
  return j.dump(2) + "\n";
}

ScenarioConfig LoadScenarioFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  ScenarioConfig c = ScenarioFromJson(buf.str());
  if (c.name.empty()) c.name = path.stem().string();
  return c;
}

}  // namespace dsg
