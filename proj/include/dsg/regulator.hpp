#ifndef DSG_REGULATOR_HPP_
#define DSG_REGULATOR_HPP_

#include <array>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dsg/game.hpp"
#include "dsg/rng.hpp"

namespace dsg {

inline constexpr std::array<double, 4> kDiscreteTaxRates = {0.00, 0.15, 0.30,
                                                            0.50};
inline constexpr double kMaxTaxRate = 0.5;

// Categorical policy over kDiscreteTaxRates.
struct DiscreteTaxPolicy {
  std::array<double, 4> logits{0.0, 0.0, 0.0, 0.0};

  std::array<double, 4> Probabilities() const;
  bool operator==(const DiscreteTaxPolicy&) const = default;
};

// Draws d ~ N(mean, 0.05^2) and taxes at 0.5 * sigmoid(d).
struct GaussianTaxPolicy {
  static constexpr double kStddev = 0.05;
  double mean = 0.0;

  bool operator==(const GaussianTaxPolicy&) const = default;
};

using TaxPolicy = std::variant<DiscreteTaxPolicy, GaussianTaxPolicy>;

// One draw of the regulator. `category` is set for discrete policies and
// `sample` (the raw Gaussian draw) for Gaussian ones.
struct TaxAssessment {
  double rate = 0.0;
  double sample = 0.0;
  int category = -1;
};

struct TaxOutcome {
  RewardPair adjusted;
  RewardPair taxes;
};

struct IncentiveSchedule {
  double amount = 0.0;
  int active_until = 0;  // paid while t < active_until

  bool operator==(const IncentiveSchedule&) const = default;
};

struct RegulatorConfig {
  int update_period = 50;
  double eta = 0.1;
  double gamma = 0.96;

  bool operator==(const RegulatorConfig&) const = default;
};

// What the regulator remembers about one step of the current window.
struct WindowSample {
  double su = 0.0;
  TaxAssessment assessment;
};

double Sigmoid(double x);
double GaussianRate(double sample);

TaxAssessment SampleTax(const TaxPolicy& policy, Rng& rng);

// Levies rate * r on each agent and splits the collected total evenly.
TaxOutcome ApplyTax(RewardPair rewards, double rate);

// Adds the incentive to both agents on mutual cooperation while t is inside
// the schedule.
RewardPair ApplyIncentive(JointAction joint, RewardPair rewards,
                          const IncentiveSchedule& schedule, int t);
double IncentiveFor(JointAction joint, const IncentiveSchedule& schedule, int t);

// Score function d/dparams log pi(assessment) under `policy`. One entry for a
// Gaussian policy, four for a discrete one.
std::vector<double> LogProbGradient(const TaxPolicy& policy,
                                    const TaxAssessment& assessment);
double LogProb(const TaxPolicy& policy, const TaxAssessment& assessment);

// Discounted returns of the window-centered social utility:
// G_k = sum_{j >= k} gamma^(j-k) * (su_j - mean(su)).
std::vector<double> CenteredReturns(std::span<const WindowSample> window,
                                    double gamma);

// One REINFORCE ascent step on the window. Throws std::invalid_argument on an
// empty window.
TaxPolicy RegulatorUpdate(const TaxPolicy& policy,
                          std::span<const WindowSample> window,
                          const RegulatorConfig& cfg);

std::vector<double> Parameters(const TaxPolicy& policy);
std::string Describe(const TaxPolicy& policy);

}  // namespace dsg

#endif  // DSG_REGULATOR_HPP_
