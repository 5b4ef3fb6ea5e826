#ifndef DSG_ONESHOT_HPP_
#define DSG_ONESHOT_HPP_

#include <array>
#include <string>
#include <vector>

#include "dsg/game.hpp"

namespace dsg {

// Payoffs of a 2x2 game indexed by Index(JointAction).
struct Bimatrix2x2 {
  std::array<RewardPair, 4> cells{};

  const RewardPair& at(JointAction j) const { return cells[Index(j)]; }
  RewardPair& at(JointAction j) { return cells[Index(j)]; }
  bool operator==(const Bimatrix2x2&) const = default;
};

// Pure equilibria per label: PrisonersDilemma {DD}, CooperationDominant {CC},
// Coordination {CD, DC}, StagHunt {CC, DD}. StagHunt only occurs when
// P - S > T - R.
enum class Regime {
  kPrisonersDilemma,
  kCooperationDominant,
  kCoordination,
  kStagHunt,
  kOutOfRange
};

std::string ToString(Regime regime);

struct RegimeReport {
  Regime regime = Regime::kPrisonersDilemma;
  // Set when x sits exactly on a threshold. A threshold rate belongs to the
  // regime just below it.
  bool on_boundary = false;
  double lower_threshold = 0.0;   // 2(P - S)/T
  double upper_threshold = 0.0;   // 2(1 - R/T)
  double validity_bound = 0.0;    // 1 - S/T
};

Bimatrix2x2 GameBimatrix(const PayoffMatrix& matrix);

// Defectors pay x of their reward; the levy is split evenly between the two
// agents. Off-diagonal cells become (S + Tx/2, T - Tx/2).
Bimatrix2x2 TaxedBimatrix(const PayoffMatrix& matrix, double x);

// Both agents pay x of their reward, the total is split evenly, and mutual
// cooperation carries an extra `incentive` for each.
Bimatrix2x2 TaxedIncentivizedBimatrix(const PayoffMatrix& matrix, double x,
                                      double incentive);

// Every profile with no strictly profitable unilateral deviation, in
// CC, CD, DC, DD order.
std::vector<JointAction> PureNash2x2(const Bimatrix2x2& bimatrix);

// Label of the defector-taxed game at rate x.
RegimeReport ClassifyRegime(const PayoffMatrix& matrix, double x);

// Infimum of rates making (x, C, C) subgame perfect: 2(1 - R/T).
double SpeTaxThreshold(const PayoffMatrix& matrix);

struct ConditionStatus {
  std::string description;
  double threshold = 0.0;  // x must exceed this
  bool holds = false;
};

struct IncentiveNashReport {
  bool cooperation_is_nash = false;  // both conditions hold
  ConditionStatus no_switch_to_defection;   // x > 2(P - S)/(T - S)
  ConditionStatus no_temptation;            // x > 2(T - (R + I))/(T - S)
};

IncentiveNashReport IncentiveCcNash(const PayoffMatrix& matrix, double x,
                                    double incentive);

// I > T - R, turning the incentivized game into a Stag Hunt.
bool IsStagHunt(const PayoffMatrix& matrix, double incentive);

}  // namespace dsg

#endif  // DSG_ONESHOT_HPP_
