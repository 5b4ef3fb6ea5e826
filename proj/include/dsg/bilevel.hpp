#ifndef DSG_BILEVEL_HPP_
#define DSG_BILEVEL_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "dsg/scenario.hpp"

namespace dsg {

// Regulator state carried through a run: the current policy, its pending
// window and a private random stream.
class Regulator {
 public:
  Regulator(const RegulatorSpec& spec, Rng rng);

  TaxAssessment Sample();
  // Records the step's social utility; returns true when the window filled up
  // and the policy was updated.
  bool Record(double su, const TaxAssessment& assessment);

  const TaxPolicy& policy() const { return policy_; }
  int updates() const { return updates_; }

 private:
  RegulatorConfig config_;
  TaxPolicy policy_;
  std::vector<WindowSample> window_;
  Rng rng_;
  int updates_ = 0;
};

// Called after every step with the record and the regulator (null when the
// scenario has none). Used by tests and tracing.
using StepObserver = std::function<void(const StepRecord&, const Regulator*)>;

// Runs the nested loop for one seed:
//   act -> payoff -> incentive -> tax and redistribution -> agents observe and
//   update -> every update_period steps the regulator updates.
// Validates the scenario first; never fails once iteration has started.
std::vector<StepRecord> BilevelTrain(const ScenarioConfig& config,
                                     std::uint64_t seed,
                                     const StepObserver& observer = {});

// Random stream ids used within a run.
inline constexpr std::uint64_t kCitizenStream = 1;
inline constexpr std::uint64_t kDdoStream = 2;
inline constexpr std::uint64_t kRegulatorStream = 3;

}  // namespace dsg

#endif  // DSG_BILEVEL_HPP_
