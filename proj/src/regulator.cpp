#include "dsg/regulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dsg {

std::array<double, 4> DiscreteTaxPolicy::Probabilities() const {
  const double m = *std::max_element(logits.begin(), logits.end());
  std::array<double, 4> p{};
  double z = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(logits[i] - m);
    z += p[i];
  }
  for (double& v : p) v /= z;
  return p;
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double GaussianRate(double sample) { return kMaxTaxRate * Sigmoid(sample); }

TaxAssessment SampleTax(const TaxPolicy& policy, Rng& rng) {
  TaxAssessment out;
  if (const auto* d = std::get_if<DiscreteTaxPolicy>(&policy)) {
    const auto probs = d->Probabilities();
    const double u = Uniform01(rng);
    double acc = 0.0;
    out.category = static_cast<int>(probs.size()) - 1;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) {
        out.category = static_cast<int>(i);
        break;
      }
    }
    out.rate = kDiscreteTaxRates[out.category];
    return out;
  }
  const auto& g = std::get<GaussianTaxPolicy>(policy);
  out.sample = g.mean + GaussianTaxPolicy::kStddev * StandardNormal(rng);
  out.rate = GaussianRate(out.sample);
  return out;
}

TaxOutcome ApplyTax(RewardPair rewards, double rate) {
  TaxOutcome out;
  out.taxes = {rate * rewards.citizen, rate * rewards.ddo};
  const double share = 0.5 * (out.taxes.citizen + out.taxes.ddo);
  out.adjusted = {rewards.citizen - out.taxes.citizen + share,
                  rewards.ddo - out.taxes.ddo + share};
  return out;
}

double IncentiveFor(JointAction joint, const IncentiveSchedule& schedule,
                    int t) {
  const bool mutual = joint.citizen == Action::kCooperate &&
                      joint.ddo == Action::kCooperate;
  return (mutual && t < schedule.active_until) ? schedule.amount : 0.0;
}

RewardPair ApplyIncentive(JointAction joint, RewardPair rewards,
                          const IncentiveSchedule& schedule, int t) {
  const double bonus = IncentiveFor(joint, schedule, t);
  return {rewards.citizen + bonus, rewards.ddo + bonus};
}

std::vector<double> LogProbGradient(const TaxPolicy& policy,
                                    const TaxAssessment& assessment) {
  if (const auto* d = std::get_if<DiscreteTaxPolicy>(&policy)) {
    const auto probs = d->Probabilities();
    std::vector<double> g(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) g[i] = -probs[i];
    g.at(assessment.category) += 1.0;
    return g;
  }
  const auto& g = std::get<GaussianTaxPolicy>(policy);
  constexpr double var = GaussianTaxPolicy::kStddev * GaussianTaxPolicy::kStddev;
  return {(assessment.sample - g.mean) / var};
}

double LogProb(const TaxPolicy& policy, const TaxAssessment& assessment) {
  if (const auto* d = std::get_if<DiscreteTaxPolicy>(&policy)) {
    return std::log(d->Probabilities().at(assessment.category));
  }
  const auto& g = std::get<GaussianTaxPolicy>(policy);
  constexpr double sd = GaussianTaxPolicy::kStddev;
  const double z = (assessment.sample - g.mean) / sd;
  return -0.5 * z * z - std::log(sd) - 0.5 * std::log(2.0 * std::numbers::pi);
}

std::vector<double> CenteredReturns(std::span<const WindowSample> window,
                                    double gamma) {
  double mean = 0.0;
  for (const auto& w : window) mean += w.su;
  mean /= static_cast<double>(window.size());
  std::vector<double> out(window.size());
  double acc = 0.0;
  for (std::size_t k = window.size(); k-- > 0;) {
    acc = (window[k].su - mean) + gamma * acc;
    out[k] = acc;
  }
  return out;
}

TaxPolicy RegulatorUpdate(const TaxPolicy& policy,
                          std::span<const WindowSample> window,
                          const RegulatorConfig& cfg) {
  if (window.empty())
    throw std::invalid_argument("regulator update needs a non-empty window");
  const std::vector<double> returns = CenteredReturns(window, cfg.gamma);
  std::vector<double> step(Parameters(policy).size(), 0.0);
  for (std::size_t k = 0; k < window.size(); ++k) {
    const auto grad = LogProbGradient(policy, window[k].assessment);
    for (std::size_t i = 0; i < step.size(); ++i)
      step[i] += returns[k] * grad[i];
  }
  TaxPolicy next = policy;
  if (auto* d = std::get_if<DiscreteTaxPolicy>(&next)) {
    for (std::size_t i = 0; i < d->logits.size(); ++i)
      d->logits[i] += cfg.eta * step[i];
  } else {
    std::get<GaussianTaxPolicy>(next).mean += cfg.eta * step[0];
  }
  return next;
}

std::vector<double> Parameters(const TaxPolicy& policy) {
  if (const auto* d = std::get_if<DiscreteTaxPolicy>(&policy))
    return {d->logits.begin(), d->logits.end()};
  return {std::get<GaussianTaxPolicy>(policy).mean};
}

std::string Describe(const TaxPolicy& policy) {
  std::ostringstream os;
  if (const auto* d = std::get_if<DiscreteTaxPolicy>(&policy)) {
    const auto p = d->Probabilities();
    os << "discrete p=[" << p[0] << ", " << p[1] << ", " << p[2] << ", "
       << p[3] << "]";
  } else {
    const double mean = std::get<GaussianTaxPolicy>(policy).mean;
    os << "gaussian mean=" << mean << " rate~" << GaussianRate(mean);
  }
  return os.str();
}

}  // namespace dsg
