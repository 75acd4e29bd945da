#pragma once

#include <cstdint>
#include <utility>

namespace gkplink {

/* Where the amplifier that converts pure loss into a random displacement
 * channel sits. PreAmplify boosts the state before the lossy arm,
 * CcAmplify rescales the classical dual-homodyne record instead. */
enum class AmpMode { PreAmplify, CcAmplify };

/* Per-quadrature variance picked up by a GKP peak crossing one arm of
 * amplitude transmissivity t (0 < t <= 1):
 *
 *   PreAmplify: sigma2 + (1 - t)
 *   CcAmplify:  sigma2 + (1 - t) / (2 t)
 *
 * CcAmplify adds less noise than PreAmplify exactly when t > 1/2
 * (arm loss below ~3 dB). */
double transform_variance(double sigma2, double transmissivity, AmpMode mode);

/* Counter-based uniform stream: output i is a pure function of (seed, i),
 * so parallel shards can jump anywhere in the stream without replaying it
 * and histograms are bit-identical regardless of thread scheduling. The
 * mixer is the splitmix64 finalizer over a Weyl sequence. */
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t start_index = 0)
      : seed_(seed), index_(start_index) {}

  static std::uint64_t value_at(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64() { return value_at(seed_, index_++); }

  // uniform on (0, 1]: 53-bit mantissa, never 0 so log() is safe
  double next_unit();

  // standard normal pair via Box-Muller; consumes two counter slots
  std::pair<double, double> next_normal_pair();

  std::uint64_t index() const { return index_; }

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
};

struct QuadratureShift {
  double u;  // position kick
  double v;  // momentum kick
};

/* One arm's random displacement: independent N(0, sigma2) kicks on each
 * quadrature, the twirled-channel reading of N_B2[sigma^2] with
 * alpha = (u + iv)/sqrt 2. Consumes exactly two counter slots. */
QuadratureShift sample_displacement(double sigma2, CounterRng& rng);

}  // namespace gkplink
