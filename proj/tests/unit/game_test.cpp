#include <random>

#include "doctest.h"
#include "dsg/game.hpp"
#include "oracles.hpp"

using namespace dsg;

namespace {
constexpr JointAction kCC{Action::kCooperate, Action::kCooperate};
constexpr JointAction kCD{Action::kCooperate, Action::kDefect};
constexpr JointAction kDC{Action::kDefect, Action::kCooperate};
constexpr JointAction kDD{Action::kDefect, Action::kDefect};
}  // namespace

TEST_CASE("payoff cells of the default matrix") {
  const PayoffMatrix m = PayoffMatrix::Default();
  CHECK(Payoff(m, kCC) == RewardPair{5, 5});
  CHECK(Payoff(m, kDD) == RewardPair{1, 1});
  CHECK(Payoff(m, kCD) == RewardPair{0, 6});
  CHECK(Payoff(m, kDC) == RewardPair{6, 0});
}

TEST_CASE("validate_ipd") {
  CHECK(ValidateIpd({6, 5, 1, 0}).ok());

  const auto equal_tr = ValidateIpd({5, 5, 1, 0});
  REQUIRE_FALSE(equal_tr.ok());
  CHECK(equal_tr.violations.size() == 1);
  CHECK(equal_tr.violations[0].rfind("T>R fails", 0) == 0);

  const auto sum = ValidateIpd({10, 5.5, 1, 2});
  CHECK_FALSE(sum.ok());
  CHECK(sum.Describe().find("2R>T+S fails (11 <= 12)") != std::string::npos);

  CHECK_FALSE(ValidateIpd({6, 5, 1, std::nan("")}).ok());
  CHECK_THROWS_AS(RequireIpd({5, 5, 1, 0}), ConfigError);
  CHECK_NOTHROW(RequireIpd(PayoffMatrix::Default()));
}

TEST_CASE("validate_ipd rejects every single-inequality perturbation") {
  // Each matrix breaks exactly one condition of the default.
  struct Case {
    PayoffMatrix m;
    const char* prefix;
  };
  const Case cases[] = {
      {{5, 5, 1, 0}, "T>R"},     {{6, 5, 5, 0}, "R>P"},
      {{6, 5, 1, 1}, "P>S"},     {{6, 3.4, 1, 0.9}, "2R>T+S"},
  };
  for (const auto& c : cases) {
    const auto v = ValidateIpd(c.m);
    REQUIRE(v.violations.size() == 1);
    CHECK(v.violations[0].rfind(c.prefix, 0) == 0);
  }
}

TEST_CASE("social utility") {
  CHECK(SocialUtility({5, 5}) == 5);
  CHECK(SocialUtility({0, 6}) == 3);
  CHECK(SocialUtility({1, 1}) == 1);
}

TEST_CASE("payoff properties over random valid matrices") {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 200; ++i) {
    const auto o = oracle::RandomIpd(gen);
    const PayoffMatrix m{o.t, o.r, o.p, o.s};
    REQUIRE(ValidateIpd(m).ok());
    CHECK(SocialUtility(Payoff(m, kCC)) > SocialUtility(Payoff(m, kDD)));
    CHECK(SocialUtility(Payoff(m, kCC)) > SocialUtility(Payoff(m, kCD)));
    for (JointAction j : kJointActions)
      CHECK(Payoff(m, j.Swapped()) == Payoff(m, j).Swapped());
  }
}

TEST_CASE("action characters") {
  CHECK(ActionFromChar('c') == Action::kCooperate);
  CHECK(ActionFromChar('D') == Action::kDefect);
  CHECK_THROWS_AS(ActionFromChar('x'), ConfigError);
  CHECK(ToString(kCD) == "(C,D)");
  for (JointAction j : kJointActions) CHECK(kJointActions[Index(j)] == j);
}
