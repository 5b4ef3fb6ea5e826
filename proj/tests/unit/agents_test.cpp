#include <cmath>
#include <vector>

#include "doctest.h"
#include "dsg/agents.hpp"
#include "oracles.hpp"

using namespace dsg;

namespace {

constexpr auto C = Action::kCooperate;
constexpr auto D = Action::kDefect;

double CooperateFrequency(int draws, const std::function<Action()>& draw) {
  int coop = 0;
  for (int i = 0; i < draws; ++i) coop += draw() == C;
  return static_cast<double>(coop) / draws;
}

}  // namespace

TEST_CASE("memory states") {
  CHECK(MemoryOf(C, D) == MemoryState::kCD);
  CHECK(MemoryOf(D, C) == MemoryState::kDC);
  for (Action own : kActions)
    for (Action opp : kActions) {
      const auto s = MemoryOf(own, opp);
      CHECK(OwnLast(s) == own);
      CHECK(OpponentLast(s) == opp);
    }
  CHECK(ToString(MemoryState::kInitial) == "initial");
}

TEST_CASE("tft") {
  CHECK(TftAct(MemoryState::kInitial) == C);
  CHECK(TftAct(MemoryState::kCD) == D);
  CHECK(TftAct(MemoryState::kDD) == D);
  CHECK(TftAct(MemoryState::kDC) == C);
}

TEST_CASE("forgiving tft") {
  Rng rng = MakeStream(1, 0);
  for (int i = 0; i < 1000; ++i)
    CHECK(ForgivingTftAct(MemoryState::kDD, 1.0, rng) == C);
  for (int s = 0; s < 5; ++s)
    for (int i = 0; i < 200; ++i) {
      const auto m = static_cast<MemoryState>(i % 5);
      CHECK(ForgivingTftAct(m, 0.0, rng) == TftAct(m));
    }
  Rng r2 = MakeStream(2, 0);
  const double freq = CooperateFrequency(
      100000, [&] { return ForgivingTftAct(MemoryState::kCD, 0.7, r2); });
  CHECK(std::abs(freq - 0.7) <= 0.01);
}

TEST_CASE("epsilon wrapper") {
  Rng rng = MakeStream(3, 0);
  for (int i = 0; i < 1000; ++i) CHECK(EpsilonWrapAct(D, 0.0, rng) == D);
  CHECK(std::abs(CooperateFrequency(100000, [&] { return EpsilonWrapAct(D, 1.0, rng); }) - 0.5) <= 0.01);
  // 0.7 * 0.5 from the mixture.
  CHECK(std::abs(CooperateFrequency(100000, [&] { return EpsilonWrapAct(D, 0.7, rng); }) - 0.35) <= 0.01);
}

TEST_CASE("beta beliefs") {
  CHECK(FpUpdate({1, 1}, C) == BetaBelief{2, 1});
  CHECK(FpUpdate({1, 1}, D) == BetaBelief{1, 2});
  BetaBelief b{1, 1};
  for (Action a : {C, C, D}) b = FpUpdate(b, a);
  CHECK(b == BetaBelief{3, 2});
  CHECK_THROWS_AS(BeliefTable({0.0, 1.0}, true), ConfigError);

  BeliefTable memoryless({1, 1}, false);
  memoryless.at(MemoryState::kCC) = {5, 1};
  CHECK(memoryless.at(MemoryState::kDD) == BetaBelief{5, 1});
  BeliefTable with_memory({1, 1}, true);
  with_memory.at(MemoryState::kCC) = {5, 1};
  CHECK(with_memory.at(MemoryState::kDD) == BetaBelief{1, 1});
}

TEST_CASE("count conservation of beta updates") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_real_distribution<double> prior(0.1, 30.0);
    const BetaBelief b0{prior(gen), prior(gen)};
    BetaBelief b = b0;
    const int n = static_cast<int>(gen() % 200);
    for (int i = 0; i < n; ++i) b = FpUpdate(b, gen() % 2 ? C : D);
    CHECK(b.alpha + b.beta == doctest::Approx(b0.alpha + b0.beta + n).epsilon(1e-15));
  }
}

TEST_CASE("expected psi") {
  QTable q(true);
  BeliefTable belief({1, 1}, true);
  const auto s = MemoryState::kCC;
  q.at(s, C, C) = 5;
  q.at(s, C, D) = 0;
  CHECK(ExpectedPsi(q, belief, s, C) == doctest::Approx(2.5));

  q.at(s, D, C) = 6;
  q.at(s, D, D) = 1;
  belief.at(s) = {3, 1};
  CHECK(ExpectedPsi(q, belief, s, D) == doctest::Approx(4.75));

  belief.at(s) = {1e6, 1};
  CHECK(std::abs(ExpectedPsi(q, belief, s, D) - 6.0) < 1e-4);

  CHECK_THROWS_AS(ExpectedPsi(QTable(false), belief, s, C), ConfigError);
}

TEST_CASE("expected psi equals the explicit two-term sum") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-10, 10), pc(0.1, 20);
  for (int trial = 0; trial < 100; ++trial) {
    QTable q(true);
    BeliefTable belief({1, 1}, true);
    const auto s = static_cast<MemoryState>(trial % 5);
    double table[2][2];
    for (Action a : kActions)
      for (Action b : kActions) q.at(s, a, b) = table[Index(a)][Index(b)] = u(gen);
    const double alpha = pc(gen), beta = pc(gen);
    belief.at(s) = {alpha, beta};
    const double p[2] = {alpha / (alpha + beta), beta / (alpha + beta)};
    for (Action a : kActions) {
      double sum = 0.0;
      for (int b = 0; b < 2; ++b) sum += table[Index(a)][b] * p[b];
      CHECK(ExpectedPsi(q, belief, s, a) == doctest::Approx(sum).epsilon(1e-14));
    }
  }
}

TEST_CASE("fp action choice") {
  Rng rng = MakeStream(0, 0);
  BeliefTable belief({1, 1}, false);
  QTable q(false);
  const auto s = MemoryState::kInitial;
  // psi(C) = 4, psi(D) = 2
  q.at(s, C, C) = 4; q.at(s, C, D) = 4; q.at(s, D, C) = 2; q.at(s, D, D) = 2;
  CHECK(FpAgentAct(q, belief, s, 0.0, rng) == C);
  q.at(s, D, C) = 4; q.at(s, D, D) = 4;
  CHECK(FpAgentAct(q, belief, s, 0.0, rng) == C);
  QTable q2(false);
  q2.at(s, D, C) = 1; q2.at(s, D, D) = 1;
  CHECK(FpAgentAct(q2, belief, s, 0.0, rng) == D);
  const double freq = CooperateFrequency(
      100000, [&] { return FpAgentAct(q2, belief, s, 1.0, rng); });
  CHECK(std::abs(freq - 0.5) <= 0.01);
}

TEST_CASE("q update") {
  BeliefTable belief({1, 1}, true);
  AgentConfig cfg;
  const JointAction cc{C, C};
  const auto s = MemoryState::kCC;

  cfg.q_learning_rate = 1.0;
  cfg.gamma = 0.0;
  CHECK(QUpdate(QTable(true), s, cc, 5.0, s, belief, cfg).at(s, C, C) == 5.0);

  cfg.q_learning_rate = 0.0;
  QTable q(true);
  q.at(s, C, D) = 3.0;
  CHECK(QUpdate(q, s, cc, 5.0, s, belief, cfg) == q);

  // max psi at next state is 3: Q(DD, C, .) = 3 with any belief.
  cfg.q_learning_rate = 0.5;
  cfg.gamma = 0.96;
  QTable q3(true);
  q3.at(MemoryState::kCD, D, D) = 2.0;
  q3.at(MemoryState::kDD, C, C) = 3.0;
  q3.at(MemoryState::kDD, C, D) = 3.0;
  const QTable out = QUpdate(q3, MemoryState::kCD, {D, D}, 1.0,
                             MemoryState::kDD, belief, cfg);
  const double scalar = 0.5 * 2.0 + 0.5 * (1.0 + 0.96 * 3.0);
  CHECK(out.at(MemoryState::kCD, D, D) == doctest::Approx(2.94));
  CHECK(out.at(MemoryState::kCD, D, D) == doctest::Approx(scalar).epsilon(1e-15));
  CHECK(out.at(MemoryState::kDD, C, C) == 3.0);
  CHECK(out.at(MemoryState::kCD, C, C) == 0.0);
}

TEST_CASE("q update with zero learning rate is the identity on random tables") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-5, 5);
  AgentConfig cfg;
  cfg.q_learning_rate = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    QTable q(trial % 2 == 0);
    BeliefTable belief({1, 1}, q.with_memory());
    for (int s = 0; s < kNumMemoryStates; ++s)
      for (Action a : kActions)
        for (Action b : kActions) q.at(static_cast<MemoryState>(s), a, b) = u(gen);
    const auto s = static_cast<MemoryState>(1 + gen() % 4);
    CHECK(QUpdate(q, s, {C, D}, u(gen), s, belief, cfg) == q);
  }
}

TEST_CASE("softmax policy") {
  const auto p = PolicyLogits{{1.0, 0.0}}.Probabilities();
  CHECK(p[0] == doctest::Approx(std::exp(1.0) / (std::exp(1.0) + 1.0)));

  Rng rng = MakeStream(4, 0);
  CHECK(std::abs(CooperateFrequency(100000, [&] { return PgAct({{0, 0}}, rng).first; }) - 0.5) <= 0.01);
  CHECK(std::abs(CooperateFrequency(100000, [&] { return PgAct({{1, 0}}, rng).first; }) - 0.7311) <= 0.01);
  CHECK(CooperateFrequency(100000, [&] { return PgAct({{10, -10}}, rng).first; }) > 0.9999);

  const auto [a, logp] = PgAct({{0.3, -0.2}}, rng);
  const auto probs = PolicyLogits{{0.3, -0.2}}.Probabilities();
  CHECK(logp == doctest::Approx(std::log(probs[Index(a)])));
}

TEST_CASE("pg update") {
  const PolicyLogits zero{{0, 0}};
  CHECK(PgUpdate(zero, C, 0.0, 1.0) == zero);
  CHECK(PgUpdate({{0.4, 1.2}}, D, 2.0, 0.0) == PolicyLogits{{0.4, 1.2}});
  const auto next = PgUpdate(zero, C, 1.0, 1.0);
  CHECK(next.theta[0] == doctest::Approx(0.5));
  CHECK(next.theta[1] == doctest::Approx(-0.5));
}

TEST_CASE("agent factory") {
  AgentConfig base;
  CHECK(MakeAgent(AgentSpec::Simple("tft"), base, 10, 0, 1)->Kind() == "tft");
  CHECK(MakeAgent(AgentSpec::Simple("fpq"), base, 10, 0, 1)->Kind() == "fpq");
  CHECK_THROWS_AS(MakeAgent(AgentSpec::Simple("nope"), base, 10, 0, 1), ConfigError);
  CHECK_THROWS_AS(MakeAgent(AgentSpec::Simple("tft", {{"p", 0.5}}), base, 10, 0, 1), ConfigError);
  CHECK_THROWS_AS(MakeAgent(AgentSpec::Simple("forgiving_tft", {{"p", 1.5}}), base, 10, 0, 1), ConfigError);
  CHECK_THROWS_AS(MakeAgent(AgentSpec::Simple("fpm", {{"alpha_lr", 0.0}}), base, 10, 0, 1), ConfigError);
  CHECK_THROWS_AS(MakeAgent(AgentSpec::Simple("fpm", {{"gamma", 1.0}}), base, 10, 0, 1), ConfigError);
  CHECK_THROWS_AS(MakeAgent({"epsilon_random", {{"eps", 0.5}}, {}}, base, 10, 0, 1), ConfigError);

  auto wrapped = MakeAgent(AgentSpec::EpsilonRandom(0.3, AgentSpec::Simple("alld")), base, 10, 0, 1);
  CHECK(wrapped->Kind() == "epsilon_random");
}

TEST_CASE("fp exploration schedule") {
  AgentConfig cfg;
  cfg.epsilon_explore = 0.3;
  cfg.explore_fraction = 0.2;
  FictitiousPlayAgent agent(true, cfg, 1000, MakeStream(0, 0));
  CHECK(agent.ExplorationAt(0) == doctest::Approx(0.3));
  CHECK(agent.ExplorationAt(100) == doctest::Approx(0.15));
  CHECK(agent.ExplorationAt(200) == 0.0);
  CHECK(agent.ExplorationAt(900) == 0.0);
}

TEST_CASE("pg baseline") {
  AgentConfig cfg;
  cfg.baseline_window = 3;
  PolicyGradientAgent agent(cfg, {}, MakeStream(0, 0));
  Transition tr;
  tr.own = C;
  tr.reward = 4.0;
  agent.Observe(tr);
  // First step carries no advantage.
  CHECK(agent.logits() == PolicyLogits{});
  for (double r : {1.0, 2.0, 3.0}) {
    tr.reward = r;
    agent.Observe(tr);
  }
  CHECK(agent.Baseline() == doctest::Approx(2.0));
}
