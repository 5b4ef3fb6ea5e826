#ifndef DSG_AGENTS_HPP_
#define DSG_AGENTS_HPP_

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dsg/game.hpp"
#include "dsg/rng.hpp"

namespace dsg {

// Previous joint action seen from the acting agent's side: the first letter
// is the agent's own action, the second the opponent's. kInitial only at t=0.
enum class MemoryState : std::uint8_t { kInitial = 0, kCC, kCD, kDC, kDD };

inline constexpr int kNumMemoryStates = 5;

inline constexpr int Index(MemoryState s) { return static_cast<int>(s); }
MemoryState MemoryOf(Action own, Action opponent);
// Preconditions: s != kInitial.
Action OwnLast(MemoryState s);
Action OpponentLast(MemoryState s);
std::string ToString(MemoryState s);

// Beta(alpha, beta) over the opponent's probability of cooperating.
struct BetaBelief {
  double alpha = 1.0;
  double beta = 1.0;

  double ProbCooperate() const { return alpha / (alpha + beta); }
  bool operator==(const BetaBelief&) const = default;
};

// Posterior after one observation of the opponent.
BetaBelief FpUpdate(BetaBelief belief, Action observed);

// One Beta belief per memory state (FPM), or a single shared one (FPQ).
class BeliefTable {
 public:
  BeliefTable(BetaBelief prior, bool with_memory);

  const BetaBelief& at(MemoryState s) const { return entries_[Slot(s)]; }
  BetaBelief& at(MemoryState s) { return entries_[Slot(s)]; }
  bool with_memory() const { return with_memory_; }

 private:
  int Slot(MemoryState s) const { return with_memory_ ? Index(s) : 0; }

  std::array<BetaBelief, kNumMemoryStates> entries_;
  bool with_memory_;
};

// Q(s, own, opponent). The memoryless variant collapses every state to one.
class QTable {
 public:
  explicit QTable(bool with_memory, double init = 0.0);

  double at(MemoryState s, Action own, Action opp) const {
    return values_[Slot(s, own, opp)];
  }
  double& at(MemoryState s, Action own, Action opp) {
    return values_[Slot(s, own, opp)];
  }
  bool with_memory() const { return with_memory_; }
  bool operator==(const QTable&) const = default;

 private:
  int Slot(MemoryState s, Action own, Action opp) const {
    const int state = with_memory_ ? Index(s) : 0;
    return 4 * state + 2 * Index(own) + Index(opp);
  }

  std::array<double, 4 * kNumMemoryStates> values_{};
  bool with_memory_;
};

struct AgentConfig {
  double gamma = 0.96;            // discount
  double q_learning_rate = 1.0;   // alpha_lr in (0, 1]
  double pg_learning_rate = 0.05; // eta
  double epsilon_explore = 0.3;   // initial exploration of FP agents
  double explore_fraction = 0.2;  // share of the run over which it decays
  double q_init = 0.0;            // starting value of every Q entry
  BetaBelief prior{1.0, 1.0};
  int baseline_window = 100;      // PG moving-average baseline
};

// --- fixed strategies -------------------------------------------------------

Action TftAct(MemoryState memory);
Action ForgivingTftAct(MemoryState memory, double p_forgive, Rng& rng);
Action EpsilonWrapAct(Action base_action, double epsilon, Rng& rng);

// --- fictitious play --------------------------------------------------------

// psi(own) = sum over opponent actions of Q(s, own, b) * p(b | s).
// Throws ConfigError when the tables disagree on memory.
double ExpectedPsi(const QTable& q, const BeliefTable& belief,
                   MemoryState state, Action own);

// Greedy in psi with ties going to Cooperate; uniform with prob epsilon.
Action FpAgentAct(const QTable& q, const BeliefTable& belief,
                  MemoryState state, double epsilon_explore, Rng& rng);

// Tabular Q-learning over joint actions, bootstrapped on max psi at the next
// state. `joint` is (own, opponent).
QTable QUpdate(QTable q, MemoryState state, JointAction joint, double reward,
               MemoryState next_state, const BeliefTable& belief,
               const AgentConfig& cfg);

// --- policy gradient --------------------------------------------------------

// Unnormalized log-probabilities of (Cooperate, Defect).
struct PolicyLogits {
  std::array<double, 2> theta{0.0, 0.0};

  std::array<double, 2> Probabilities() const;
  bool operator==(const PolicyLogits&) const = default;
};

// d/dtheta log softmax(theta)[action].
std::array<double, 2> GradLogSoftmax(const PolicyLogits& logits, Action action);

// Samples an action; returns it with its log-probability.
std::pair<Action, double> PgAct(const PolicyLogits& logits, Rng& rng);

PolicyLogits PgUpdate(PolicyLogits logits, Action action, double advantage,
                      double eta);

// --- agent objects ----------------------------------------------------------

struct AgentView {
  MemoryState memory = MemoryState::kInitial;
  int t = 0;
};

struct Transition {
  MemoryState state = MemoryState::kInitial;
  Action own = Action::kCooperate;
  Action opponent = Action::kCooperate;
  double reward = 0.0;
  MemoryState next = MemoryState::kInitial;
  int t = 0;
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual Action Act(const AgentView& view) = 0;
  virtual void Observe(const Transition& transition) { (void)transition; }
  virtual std::string Kind() const = 0;
};

class AllCAgent final : public Agent {
 public:
  Action Act(const AgentView&) override { return Action::kCooperate; }
  std::string Kind() const override { return "allc"; }
};

class AllDAgent final : public Agent {
 public:
  Action Act(const AgentView&) override { return Action::kDefect; }
  std::string Kind() const override { return "alld"; }
};

class TftAgent final : public Agent {
 public:
  Action Act(const AgentView& view) override { return TftAct(view.memory); }
  std::string Kind() const override { return "tft"; }
};

class ForgivingTftAgent final : public Agent {
 public:
  ForgivingTftAgent(double p_forgive, Rng rng);
  Action Act(const AgentView& view) override;
  std::string Kind() const override { return "forgiving_tft"; }

 private:
  double p_forgive_;
  Rng rng_;
};

// With probability epsilon plays uniformly at random, otherwise defers to the
// inner agent. The inner agent observes every transition either way.
class EpsilonRandomAgent final : public Agent {
 public:
  EpsilonRandomAgent(double epsilon, std::unique_ptr<Agent> inner, Rng rng);
  Action Act(const AgentView& view) override;
  void Observe(const Transition& transition) override;
  std::string Kind() const override { return "epsilon_random"; }
  const Agent& inner() const { return *inner_; }

 private:
  double epsilon_;
  std::unique_ptr<Agent> inner_;
  Rng rng_;
};

// FPQ (with_memory = false) or FPM (with_memory = true).
class FictitiousPlayAgent final : public Agent {
 public:
  FictitiousPlayAgent(bool with_memory, AgentConfig cfg, int horizon, Rng rng);
  Action Act(const AgentView& view) override;
  void Observe(const Transition& transition) override;
  std::string Kind() const override { return beliefs_.with_memory() ? "fpm" : "fpq"; }

  double ExplorationAt(int t) const;
  const QTable& q() const { return q_; }
  const BeliefTable& beliefs() const { return beliefs_; }

 private:
  AgentConfig cfg_;
  int horizon_;
  QTable q_;
  BeliefTable beliefs_;
  Rng rng_;
};

// Stateless softmax policy trained by REINFORCE against a moving-average
// baseline of its own recent rewards.
class PolicyGradientAgent final : public Agent {
 public:
  PolicyGradientAgent(AgentConfig cfg, PolicyLogits init, Rng rng);
  Action Act(const AgentView& view) override;
  void Observe(const Transition& transition) override;
  std::string Kind() const override { return "pg"; }

  const PolicyLogits& logits() const { return logits_; }
  double Baseline() const;

 private:
  AgentConfig cfg_;
  PolicyLogits logits_;
  std::deque<double> recent_;
  double recent_sum_ = 0.0;
  Rng rng_;
};

// Declarative agent description as it appears in scenario files:
// allc, alld, tft, forgiving_tft(p), epsilon_random(eps, inner), fpq, fpm, pg.
struct AgentSpec {
  std::string kind;
  std::map<std::string, double> params;
  std::vector<AgentSpec> inner;  // exactly one for epsilon_random

  static AgentSpec Simple(std::string kind,
                          std::map<std::string, double> params = {}) {
    return {std::move(kind), std::move(params), {}};
  }
  static AgentSpec EpsilonRandom(double eps, AgentSpec inner_spec) {
    return {"epsilon_random", {{"eps", eps}}, {std::move(inner_spec)}};
  }
  bool operator==(const AgentSpec&) const = default;
};

const std::vector<std::string>& KnownAgentKinds();

// Throws ConfigError on unknown kinds, unknown parameters or bad ranges.
void ValidateAgentSpec(const AgentSpec& spec);

// `base` carries scenario-level defaults (gamma); spec params override them.
// Each agent (and each wrapped inner agent) gets its own random stream.
std::unique_ptr<Agent> MakeAgent(const AgentSpec& spec, const AgentConfig& base,
                                 int horizon, std::uint64_t seed,
                                 std::uint64_t stream);

}  // namespace dsg

#endif  // DSG_AGENTS_HPP_
