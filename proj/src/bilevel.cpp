#include "dsg/bilevel.hpp"

namespace dsg {

Regulator::Regulator(const RegulatorSpec& spec, Rng rng)
    : config_(spec.config), policy_(spec.InitialPolicy()), rng_(std::move(rng)) {
  window_.reserve(config_.update_period);
}

TaxAssessment Regulator::Sample() { return SampleTax(policy_, rng_); }

bool Regulator::Record(double su, const TaxAssessment& assessment) {
  window_.push_back({su, assessment});
  if (static_cast<int>(window_.size()) < config_.update_period) return false;
  policy_ = RegulatorUpdate(policy_, window_, config_);
  window_.clear();
  ++updates_;
  return true;
}

std::vector<StepRecord> BilevelTrain(const ScenarioConfig& config,
                                     std::uint64_t seed,
                                     const StepObserver& observer) {
  ValidateScenario(config);

  AgentConfig base;
  base.gamma = config.gamma;
  auto citizen = MakeAgent(config.citizen, base, config.iterations, seed,
                           kCitizenStream);
  auto ddo = MakeAgent(config.ddo, base, config.iterations, seed, kDdoStream);

  std::unique_ptr<Regulator> regulator;
  if (config.regulator.kind != RegulatorKind::kNone && config.tax_enabled) {
    regulator = std::make_unique<Regulator>(
        config.regulator, MakeStream(seed, kRegulatorStream));
  }

  std::vector<StepRecord> records;
  records.reserve(config.iterations);
  MemoryState citizen_memory = MemoryState::kInitial;
  MemoryState ddo_memory = MemoryState::kInitial;

  for (int t = 0; t < config.iterations; ++t) {
    StepRecord rec;
    rec.t = t;
    rec.joint.citizen = citizen->Act({citizen_memory, t});
    rec.joint.ddo = ddo->Act({ddo_memory, t});
    rec.raw = Payoff(config.matrix, rec.joint);

    rec.incentive_added = IncentiveFor(rec.joint, config.incentive, t);
    const RewardPair pooled{rec.raw.citizen + rec.incentive_added,
                            rec.raw.ddo + rec.incentive_added};

    TaxAssessment assessment;
    if (regulator) assessment = regulator->Sample();
    rec.tax_rate = assessment.rate;
    rec.adjusted = ApplyTax(pooled, rec.tax_rate).adjusted;
    rec.su = SocialUtility(rec.adjusted);

    const MemoryState citizen_next = MemoryOf(rec.joint.citizen, rec.joint.ddo);
    const MemoryState ddo_next = MemoryOf(rec.joint.ddo, rec.joint.citizen);
    citizen->Observe({citizen_memory, rec.joint.citizen, rec.joint.ddo,
                      rec.adjusted.citizen, citizen_next, t});
    ddo->Observe({ddo_memory, rec.joint.ddo, rec.joint.citizen,
                  rec.adjusted.ddo, ddo_next, t});
    citizen_memory = citizen_next;
    ddo_memory = ddo_next;

    if (regulator) regulator->Record(rec.su, assessment);
    if (observer) observer(rec, regulator.get());
    records.push_back(rec);
  }
  return records;
}

}  // namespace dsg
