#include "dsg/oneshot.hpp"

#include <cmath>
#include <sstream>

namespace dsg {

namespace {

constexpr double kBoundaryTolerance = 1e-12;

bool Near(double a, double b) {
  return std::abs(a - b) <= kBoundaryTolerance * std::max(1.0, std::abs(b));
}

std::string Fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

std::string ToString(Regime regime) {
  switch (regime) {
    case Regime::kPrisonersDilemma:
      return "PrisonersDilemma";
    case Regime::kCooperationDominant:
      return "CooperationDominant";
    case Regime::kCoordination:
      return "Coordination";
    case Regime::kStagHunt:
      return "StagHunt";
    case Regime::kOutOfRange:
      return "OutOfRange";
  }
  return "OutOfRange";
}

Bimatrix2x2 GameBimatrix(const PayoffMatrix& matrix) {
  Bimatrix2x2 b;
  for (JointAction j : kJointActions) b.at(j) = Payoff(matrix, j);
  return b;
}

Bimatrix2x2 TaxedBimatrix(const PayoffMatrix& m, double x) {
  Bimatrix2x2 b = GameBimatrix(m);
  // The defector keeps (1 - x) T; the retained T x is shared by both.
  const double sucker = m.s + m.t * x / 2.0;
  const double tempted = m.t - m.t * x / 2.0;
  b.at({Action::kCooperate, Action::kDefect}) = {sucker, tempted};
  b.at({Action::kDefect, Action::kCooperate}) = {tempted, sucker};
  return b;
}

Bimatrix2x2 TaxedIncentivizedBimatrix(const PayoffMatrix& m, double x,
                                      double incentive) {
  Bimatrix2x2 b = GameBimatrix(m);
  b.at({Action::kCooperate, Action::kCooperate}) = {m.r + incentive,
                                                    m.r + incentive};
  const double sucker = m.s - m.s * x / 2.0 + m.t * x / 2.0;
  const double tempted = m.t - m.t * x / 2.0 + m.s * x / 2.0;
  b.at({Action::kCooperate, Action::kDefect}) = {sucker, tempted};
  b.at({Action::kDefect, Action::kCooperate}) = {tempted, sucker};
  return b;
}

std::vector<JointAction> PureNash2x2(const Bimatrix2x2& b) {
  std::vector<JointAction> out;
  for (JointAction j : kJointActions) {
    const JointAction citizen_dev{Flip(j.citizen), j.ddo};
    const JointAction ddo_dev{j.citizen, Flip(j.ddo)};
    const bool citizen_gains = b.at(citizen_dev).citizen > b.at(j).citizen;
    const bool ddo_gains = b.at(ddo_dev).ddo > b.at(j).ddo;
    if (!citizen_gains && !ddo_gains) out.push_back(j);
  }
  return out;
}

RegimeReport ClassifyRegime(const PayoffMatrix& m, double x) {
  RegimeReport r;
  r.lower_threshold = 2.0 * (m.p - m.s) / m.t;
  r.upper_threshold = 2.0 * (m.t - m.r) / m.t;
  r.validity_bound = (m.t - m.s) / m.t;
  if (x >= r.validity_bound || Near(x, r.validity_bound)) {
    r.regime = Regime::kOutOfRange;
    r.on_boundary = Near(x, r.validity_bound);
    return r;
  }
  // S' > P and R > T' respectively.
  const bool sucker_beats_punishment =
      x > r.lower_threshold && !Near(x, r.lower_threshold);
  const bool reward_beats_temptation =
      x > r.upper_threshold && !Near(x, r.upper_threshold);
  if (sucker_beats_punishment) {
    r.regime = reward_beats_temptation ? Regime::kCooperationDominant
                                       : Regime::kCoordination;
  } else {
    r.regime = reward_beats_temptation ? Regime::kStagHunt
                                       : Regime::kPrisonersDilemma;
  }
  r.on_boundary = Near(x, r.lower_threshold) || Near(x, r.upper_threshold);
  return r;
}

double SpeTaxThreshold(const PayoffMatrix& m) { return 2.0 * (m.t - m.r) / m.t; }

IncentiveNashReport IncentiveCcNash(const PayoffMatrix& m, double x,
                                    double incentive) {
  IncentiveNashReport rep;
  const double spread = m.t - m.s;
  rep.no_switch_to_defection.threshold = 2.0 * (m.p - m.s) / spread;
  rep.no_switch_to_defection.holds = x > rep.no_switch_to_defection.threshold;
  rep.no_switch_to_defection.description =
      "x > 2(P-S)/(T-S) = " + Fmt(rep.no_switch_to_defection.threshold);
  rep.no_temptation.threshold = 2.0 * (m.t - (m.r + incentive)) / spread;
  rep.no_temptation.holds = x > rep.no_temptation.threshold;
  rep.no_temptation.description =
      "x > 2(T-(R+I))/(T-S) = " + Fmt(rep.no_temptation.threshold);
  rep.cooperation_is_nash =
      rep.no_switch_to_defection.holds && rep.no_temptation.holds;
  return rep;
}

bool IsStagHunt(const PayoffMatrix& m, double incentive) {
  return incentive > m.t - m.r;
}

}  // namespace dsg
