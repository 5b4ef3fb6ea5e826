#ifndef DSG_RNG_HPP_
#define DSG_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace dsg {

using Rng = std::mt19937_64;

// Independent, reproducible stream for (seed, stream id). Every stochastic
// component of a run draws from its own stream so that swapping one
// component out never shifts the draws seen by the others.
inline Rng MakeStream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
  return Rng(seq);
}

// Uniform in [0, 1) from the top 53 bits; identical on every platform.
inline double Uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool Bernoulli(Rng& rng, double p) { return Uniform01(rng) < p; }

// Box-Muller; one normal per call, no cached state.
inline double StandardNormal(Rng& rng) {
  double u1 = Uniform01(rng);
  while (u1 <= 0.0) u1 = Uniform01(rng);
  const double u2 = Uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace dsg

#endif  // DSG_RNG_HPP_
