#include "gkplink/channel_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gkplink {

double transform_variance(double sigma2, double transmissivity, AmpMode mode) {
  if (sigma2 < 0) throw std::invalid_argument("sigma2 must be >= 0");
  if (!(transmissivity > 0.0) || transmissivity > 1.0)
    throw std::invalid_argument("transmissivity must lie in (0, 1]");
  const double t = transmissivity;
  if (mode == AmpMode::PreAmplify) return sigma2 + (1.0 - t);
  return sigma2 + (1.0 - t) / (2.0 * t);
}

std::uint64_t CounterRng::value_at(std::uint64_t seed, std::uint64_t index) {
  // splitmix64: state after index+1 gamma steps, then the finalizer. Counter
  // form keeps draws addressable, so parallel shards reproduce the serial
  // stream exactly.
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::next_unit() {
  // 53-bit mantissa mapped to (0, 1]; never returns 0 so log() below is safe.
  return double((next_u64() >> 11) + 1) * 0x1.0p-53;
}

std::pair<double, double> CounterRng::next_normal_pair() {
  const double u1 = next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(th), r * std::sin(th)};
}

QuadratureShift sample_displacement(double sigma2, CounterRng& rng) {
  if (sigma2 < 0) throw std::invalid_argument("sigma2 must be >= 0");
  auto [z1, z2] = rng.next_normal_pair();
  const double s = std::sqrt(sigma2);
  return {s * z1, s * z2};
}

}  // namespace gkplink
