#include "dsg/agents.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace dsg {

MemoryState MemoryOf(Action own, Action opponent) {
  return static_cast<MemoryState>(1 + 2 * Index(own) + Index(opponent));
}

Action OwnLast(MemoryState s) {
  return (Index(s) - 1) / 2 == 0 ? Action::kCooperate : Action::kDefect;
}

Action OpponentLast(MemoryState s) {
  return (Index(s) - 1) % 2 == 0 ? Action::kCooperate : Action::kDefect;
}

std::string ToString(MemoryState s) {
  static constexpr const char* kNames[] = {"initial", "CC", "CD", "DC", "DD"};
  return kNames[Index(s)];
}

BetaBelief FpUpdate(BetaBelief belief, Action observed) {
  if (observed == Action::kCooperate) {
    belief.alpha += 1.0;
  } else {
    belief.beta += 1.0;
  }
  return belief;
}

BeliefTable::BeliefTable(BetaBelief prior, bool with_memory)
    : with_memory_(with_memory) {
  if (!(prior.alpha > 0.0) || !(prior.beta > 0.0))
    throw ConfigError("Beta prior pseudo-counts must be positive");
  entries_.fill(prior);
}

QTable::QTable(bool with_memory, double init) : with_memory_(with_memory) {
  values_.fill(init);
}

Action TftAct(MemoryState memory) {
  if (memory == MemoryState::kInitial) return Action::kCooperate;
  return OpponentLast(memory);
}

Action ForgivingTftAct(MemoryState memory, double p_forgive, Rng& rng) {
  if (Bernoulli(rng, p_forgive)) return Action::kCooperate;
  return TftAct(memory);
}

Action EpsilonWrapAct(Action base_action, double epsilon, Rng& rng) {
  if (Bernoulli(rng, epsilon)) {
    return Bernoulli(rng, 0.5) ? Action::kCooperate : Action::kDefect;
  }
  return base_action;
}

double ExpectedPsi(const QTable& q, const BeliefTable& belief,
                   MemoryState state, Action own) {
  if (q.with_memory() != belief.with_memory())
    throw ConfigError("Q-table and belief table disagree on memory");
  const double p_c = belief.at(state).ProbCooperate();
  return q.at(state, own, Action::kCooperate) * p_c +
         q.at(state, own, Action::kDefect) * (1.0 - p_c);
}

Action FpAgentAct(const QTable& q, const BeliefTable& belief,
                  MemoryState state, double epsilon_explore, Rng& rng) {
  if (epsilon_explore > 0.0 && Bernoulli(rng, epsilon_explore)) {
    return Bernoulli(rng, 0.5) ? Action::kCooperate : Action::kDefect;
  }
  const double psi_c = ExpectedPsi(q, belief, state, Action::kCooperate);
  const double psi_d = ExpectedPsi(q, belief, state, Action::kDefect);
  return psi_d > psi_c ? Action::kDefect : Action::kCooperate;
}

QTable QUpdate(QTable q, MemoryState state, JointAction joint, double reward,
               MemoryState next_state, const BeliefTable& belief,
               const AgentConfig& cfg) {
  double best_next = ExpectedPsi(q, belief, next_state, Action::kCooperate);
  best_next = std::max(best_next,
                       ExpectedPsi(q, belief, next_state, Action::kDefect));
  const double target = reward + cfg.gamma * best_next;
  double& entry = q.at(state, joint.citizen, joint.ddo);
  entry = (1.0 - cfg.q_learning_rate) * entry + cfg.q_learning_rate * target;
  return q;
}

std::array<double, 2> PolicyLogits::Probabilities() const {
  const double m = std::max(theta[0], theta[1]);
  const double e0 = std::exp(theta[0] - m);
  const double e1 = std::exp(theta[1] - m);
  const double z = e0 + e1;
  return {e0 / z, e1 / z};
}

std::array<double, 2> GradLogSoftmax(const PolicyLogits& logits, Action action) {
  const auto pi = logits.Probabilities();
  std::array<double, 2> g{-pi[0], -pi[1]};
  g[Index(action)] += 1.0;
  return g;
}

std::pair<Action, double> PgAct(const PolicyLogits& logits, Rng& rng) {
  const auto pi = logits.Probabilities();
  const Action a =
      Uniform01(rng) < pi[0] ? Action::kCooperate : Action::kDefect;
  return {a, std::log(pi[Index(a)])};
}

PolicyLogits PgUpdate(PolicyLogits logits, Action action, double advantage,
                      double eta) {
  const auto g = GradLogSoftmax(logits, action);
  logits.theta[0] += eta * advantage * g[0];
  logits.theta[1] += eta * advantage * g[1];
  return logits;
}

// --- agent objects ----------------------------------------------------------

ForgivingTftAgent::ForgivingTftAgent(double p_forgive, Rng rng)
    : p_forgive_(p_forgive), rng_(std::move(rng)) {}

Action ForgivingTftAgent::Act(const AgentView& view) {
  return ForgivingTftAct(view.memory, p_forgive_, rng_);
}

EpsilonRandomAgent::EpsilonRandomAgent(double epsilon,
                                       std::unique_ptr<Agent> inner, Rng rng)
    : epsilon_(epsilon), inner_(std::move(inner)), rng_(std::move(rng)) {}

Action EpsilonRandomAgent::Act(const AgentView& view) {
  return EpsilonWrapAct(inner_->Act(view), epsilon_, rng_);
}

void EpsilonRandomAgent::Observe(const Transition& transition) {
  inner_->Observe(transition);
}

FictitiousPlayAgent::FictitiousPlayAgent(bool with_memory, AgentConfig cfg,
                                         int horizon, Rng rng)
    : cfg_(cfg),
      horizon_(horizon),
      q_(with_memory, cfg.q_init),
      beliefs_(cfg.prior, with_memory),
      rng_(std::move(rng)) {}

double FictitiousPlayAgent::ExplorationAt(int t) const {
  const double span = cfg_.explore_fraction * horizon_;
  if (span <= 0.0) return 0.0;
  return cfg_.epsilon_explore * std::max(0.0, 1.0 - t / span);
}

Action FictitiousPlayAgent::Act(const AgentView& view) {
  return FpAgentAct(q_, beliefs_, view.memory, ExplorationAt(view.t), rng_);
}

void FictitiousPlayAgent::Observe(const Transition& tr) {
  beliefs_.at(tr.state) = FpUpdate(beliefs_.at(tr.state), tr.opponent);
  q_ = QUpdate(q_, tr.state, JointAction{tr.own, tr.opponent}, tr.reward,
               tr.next, beliefs_, cfg_);
}

PolicyGradientAgent::PolicyGradientAgent(AgentConfig cfg, PolicyLogits init,
                                         Rng rng)
    : cfg_(cfg), logits_(init), rng_(std::move(rng)) {}

Action PolicyGradientAgent::Act(const AgentView&) {
  return PgAct(logits_, rng_).first;
}

double PolicyGradientAgent::Baseline() const {
  return recent_.empty() ? 0.0 : recent_sum_ / recent_.size();
}

void PolicyGradientAgent::Observe(const Transition& tr) {
  // The first reward has nothing to compare against.
  const double advantage = recent_.empty() ? 0.0 : tr.reward - Baseline();
  logits_ = PgUpdate(logits_, tr.own, advantage, cfg_.pg_learning_rate);
  recent_.push_back(tr.reward);
  recent_sum_ += tr.reward;
  if (static_cast<int>(recent_.size()) > cfg_.baseline_window) {
    recent_sum_ -= recent_.front();
    recent_.pop_front();
  }
}

// --- factory ----------------------------------------------------------------

namespace {

const std::map<std::string, std::set<std::string>>& AllowedParams() {
  static const std::map<std::string, std::set<std::string>> kAllowed = {
      {"allc", {}},
      {"alld", {}},
      {"tft", {}},
      {"forgiving_tft", {"p"}},
      {"epsilon_random", {"eps"}},
      {"fpq",
       {"gamma", "alpha_lr", "epsilon_explore", "explore_fraction",
        "prior_alpha", "prior_beta", "q_init"}},
      {"fpm",
       {"gamma", "alpha_lr", "epsilon_explore", "explore_fraction",
        "prior_alpha", "prior_beta", "q_init"}},
      {"pg", {"gamma", "eta", "baseline_window", "theta_c", "theta_d"}},
  };
  return kAllowed;
}

double Param(const AgentSpec& spec, const std::string& key, double fallback) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

void RequireRange(bool ok, const AgentSpec& spec, const std::string& what) {
  if (!ok) throw ConfigError("agent '" + spec.kind + "': " + what);
}

AgentConfig ConfigFor(const AgentSpec& spec, const AgentConfig& base) {
  AgentConfig cfg = base;
  cfg.gamma = Param(spec, "gamma", cfg.gamma);
  cfg.q_learning_rate = Param(spec, "alpha_lr", cfg.q_learning_rate);
  cfg.epsilon_explore = Param(spec, "epsilon_explore", cfg.epsilon_explore);
  cfg.explore_fraction = Param(spec, "explore_fraction", cfg.explore_fraction);
  cfg.q_init = Param(spec, "q_init", cfg.q_init);
  cfg.prior.alpha = Param(spec, "prior_alpha", cfg.prior.alpha);
  cfg.prior.beta = Param(spec, "prior_beta", cfg.prior.beta);
  cfg.pg_learning_rate = Param(spec, "eta", cfg.pg_learning_rate);
  cfg.baseline_window = static_cast<int>(
      Param(spec, "baseline_window", cfg.baseline_window));
  return cfg;
}

int WrapperDepth(const AgentSpec& spec) {
  if (spec.kind != "epsilon_random" || spec.inner.empty()) return 0;
  return 1 + WrapperDepth(spec.inner.front());
}

}  // namespace

const std::vector<std::string>& KnownAgentKinds() {
  static const std::vector<std::string> kKinds = [] {
    std::vector<std::string> out;
    for (const auto& [kind, _] : AllowedParams()) out.push_back(kind);
    return out;
  }();
  return kKinds;
}

void ValidateAgentSpec(const AgentSpec& spec) {
  const auto& allowed = AllowedParams();
  auto it = allowed.find(spec.kind);
  if (it == allowed.end()) throw ConfigError("unknown agent kind '" + spec.kind + "'");
  for (const auto& [key, value] : spec.params) {
    if (!it->second.contains(key))
      throw ConfigError("agent '" + spec.kind + "' has no parameter '" + key + "'");
    if (!std::isfinite(value))
      throw ConfigError("agent '" + spec.kind + "' parameter '" + key + "' is not finite");
  }
  if (spec.kind == "epsilon_random") {
    RequireRange(spec.inner.size() == 1, spec, "needs exactly one inner agent");
    const double eps = Param(spec, "eps", 0.0);
    RequireRange(eps >= 0.0 && eps <= 1.0, spec, "eps must lie in [0,1]");
    ValidateAgentSpec(spec.inner.front());
    return;
  }
  RequireRange(spec.inner.empty(), spec, "does not wrap another agent");
  if (spec.kind == "forgiving_tft") {
    const double p = Param(spec, "p", 0.0);
    RequireRange(p >= 0.0 && p <= 1.0, spec, "p must lie in [0,1]");
  }
  const AgentConfig cfg = ConfigFor(spec, AgentConfig{});
  RequireRange(cfg.gamma > 0.0 && cfg.gamma < 1.0, spec, "gamma must lie in (0,1)");
  RequireRange(cfg.q_learning_rate > 0.0 && cfg.q_learning_rate <= 1.0, spec,
               "alpha_lr must lie in (0,1]");
  RequireRange(cfg.pg_learning_rate > 0.0, spec, "eta must be positive");
  RequireRange(cfg.epsilon_explore >= 0.0 && cfg.epsilon_explore <= 1.0, spec,
               "epsilon_explore must lie in [0,1]");
  RequireRange(cfg.explore_fraction >= 0.0 && cfg.explore_fraction <= 1.0, spec,
               "explore_fraction must lie in [0,1]");
  RequireRange(cfg.prior.alpha > 0.0 && cfg.prior.beta > 0.0, spec,
               "prior pseudo-counts must be positive");
  RequireRange(cfg.baseline_window >= 1, spec, "baseline_window must be >= 1");
}

std::unique_ptr<Agent> MakeAgent(const AgentSpec& spec, const AgentConfig& base,
                                 int horizon, std::uint64_t seed,
                                 std::uint64_t stream) {
  ValidateAgentSpec(spec);
  const AgentConfig cfg = ConfigFor(spec, base);
  if (spec.kind == "allc") return std::make_unique<AllCAgent>();
  if (spec.kind == "alld") return std::make_unique<AllDAgent>();
  if (spec.kind == "tft") return std::make_unique<TftAgent>();
  if (spec.kind == "forgiving_tft")
    return std::make_unique<ForgivingTftAgent>(Param(spec, "p", 0.0),
                                               MakeStream(seed, stream));
  if (spec.kind == "epsilon_random") {
    // The inner agent keeps the caller's stream, so wrapping with eps = 0
    // leaves its behavior untouched; each wrapper level draws from its own.
    auto inner = MakeAgent(spec.inner.front(), base, horizon, seed, stream);
    const std::uint64_t wrapper_stream =
        stream | (static_cast<std::uint64_t>(WrapperDepth(spec)) << 40);
    return std::make_unique<EpsilonRandomAgent>(Param(spec, "eps", 0.0),
                                                std::move(inner),
                                                MakeStream(seed, wrapper_stream));
  }
  if (spec.kind == "fpq" || spec.kind == "fpm")
    return std::make_unique<FictitiousPlayAgent>(spec.kind == "fpm", cfg,
                                                 horizon,
                                                 MakeStream(seed, stream));
  // pg
  PolicyLogits init{{Param(spec, "theta_c", 0.0), Param(spec, "theta_d", 0.0)}};
  return std::make_unique<PolicyGradientAgent>(cfg, init,
                                               MakeStream(seed, stream));
}

}  // namespace dsg
