#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gkplink/cavity_interface.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

using gkplink::CavityParams;
using gkplink::Cx;
using gkplink::dephasing_lambda;
using gkplink::PulseSpec;
using gkplink::pulse_length_check;
using gkplink::RConvention;
using gkplink::reflection_at;
using gkplink::reflection_coeffs;

namespace {
double port_sum(const gkplink::ReflectionCoeffs& c) {
  return std::norm(c.r) + std::norm(c.l_c) + std::norm(c.l_a);
}
}  // namespace

TEST_CASE("bare lossless cavity reflects with a pi phase") {
  CavityParams p{0.0, 1.0, 1e8, 1e6, 0.0, 0.0};
  auto c = reflection_coeffs(p, false);
  CHECK(std::abs(c.r - Cx(-1.0, 0.0)) < 1e-15);
  CHECK(std::abs(c.l_c) == 0.0);
  CHECK(std::abs(c.l_a) == 0.0);
}

TEST_CASE("large cooperativity flips the sign back") {
  CavityParams p{1e9, 1.0, 1e8, 1e6, 0.0, 0.0};
  auto c = reflection_coeffs(p, true);
  CHECK(std::abs(c.r - Cx(1.0, 0.0)) < 1e-8);

  CavityParams pinf{std::numeric_limits<double>::infinity(), 1.0, 1e8, 1e6, 0.0, 0.0};
  auto ci = reflection_coeffs(pinf, true);
  CHECK(ci.r == Cx(1.0, 0.0));
  CHECK(ci.l_c == Cx(0.0, 0.0));
  CHECK(ci.l_a == Cx(0.0, 0.0));
}

TEST_CASE("uncoupled evaluation ignores cooperativity") {
  CavityParams p{100.0, 0.95, 1e8, 1e6, 0.0, 0.0};
  CavityParams p0{0.0, 0.95, 1e8, 1e6, 0.0, 0.0};
  auto a = reflection_coeffs(p, false);
  auto b = reflection_coeffs(p0, true);
  CHECK(std::abs(a.r - b.r) == 0.0);
  CHECK(std::abs(a.l_c - b.l_c) == 0.0);
  CHECK(std::abs(a.l_a - b.l_a) == 0.0);
}

TEST_CASE("photon number is conserved across the parameter grid") {
  for (double zeta : {0.0, 0.25, 0.5, 0.9, 0.95, 1.0}) {
    for (double C : {0.0, 0.1, 1.0, 100.0, 1e6}) {
      CavityParams p{C, zeta, 1e8, 1e6, 0.0, 0.0};
      for (bool coupled : {false, true}) {
        CHECK(std::abs(port_sum(reflection_coeffs(p, coupled)) - 1.0) < 1e-12);
        // Conservation holds off resonance too for this variant.
        for (double w : {-5e7, -1e6, 3e5, 2e7}) {
          const double s = port_sum(reflection_at(p, coupled, w));
          CHECK(std::abs(s - 1.0) < 1e-12);
          CHECK(s <= 1.0 + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("reflection is conjugated under detuning reversal") {
  CavityParams p{40.0, 0.85, 1e8, 1e6, 0.0, 0.0};
  for (double w : {1e5, 7e6, 3e7}) {
    auto plus = reflection_at(p, true, w);
    auto minus = reflection_at(p, true, -w);
    CHECK(std::abs(plus.r - std::conj(minus.r)) < 1e-15);
    CHECK(std::abs(plus.l_c - std::conj(minus.l_c)) < 1e-15);
    // l_a carries the imaginary -2i numerator, so conjugation flips its sign.
    CHECK(std::abs(plus.l_a + std::conj(minus.l_a)) < 1e-15);
  }
}

TEST_CASE("published numerator variant leaks photons") {
  // r = 1 - 2 zeta i / D adds |2 zeta|^2/|D|^2 instead of interfering with
  // the incoming field; at resonance the port sum is 1 + 4 zeta / (1 + C).
  CavityParams p{100.0, 0.95, 1e8, 1e6, 0.0, 0.0};
  const double s = port_sum(reflection_coeffs(p, true, RConvention::AsPublished));
  CHECK(s == doctest::Approx(1.0 + 4.0 * 0.95 / 101.0).epsilon(1e-12));
  CHECK(s > 1.03);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(reflection_coeffs({1.0, -0.1, 1e8, 1e6, 0, 0}, true), std::invalid_argument);
  CHECK_THROWS_AS(reflection_coeffs({1.0, 1.1, 1e8, 1e6, 0, 0}, true), std::invalid_argument);
  CHECK_THROWS_AS(reflection_coeffs({-1.0, 0.5, 1e8, 1e6, 0, 0}, true), std::invalid_argument);
  CHECK_THROWS_AS(reflection_coeffs({1.0, 0.5, 0.0, 1e6, 0, 0}, true), std::invalid_argument);
  CHECK_THROWS_AS(reflection_coeffs({1.0, 0.5, 1e8, -1e6, 0, 0}, true), std::invalid_argument);
}

TEST_CASE("built-in pulse envelopes are normalized on their grids") {
  for (auto make : {&PulseSpec::gaussian, &PulseSpec::flat_top}) {
    auto p = make(1e-6, 2048);
    REQUIRE(p.omega.size() == 2048);
    REQUIRE(p.amplitude.size() == 2048);
    CHECK(p.tau == 1e-6);
    double norm = 0.0;
    for (auto& a : p.amplitude) norm += std::norm(a) * p.d_omega;
    CHECK(std::abs(norm - 1.0) < 1e-12);
    // Uniform grid.
    for (size_t i = 1; i < p.omega.size(); ++i)
      CHECK(p.omega[i] - p.omega[i - 1] == doctest::Approx(p.d_omega).epsilon(1e-9));
    CHECK(p.bandwidth() > 0.0);
  }
}

TEST_CASE("flat top is flat and gaussian peaks at the carrier") {
  auto ft = PulseSpec::flat_top(1e-6, 4096);
  double lo = 1e300, hi = 0.0;
  int inside = 0;
  for (auto& a : ft.amplitude) {
    const double m = std::abs(a);
    if (m > 0) {
      lo = std::min(lo, m);
      hi = std::max(hi, m);
      ++inside;
    }
  }
  CHECK(inside > 100);
  CHECK(inside < 4096);  // band is a strict subset of the grid
  CHECK(hi == doctest::Approx(lo).epsilon(1e-12));

  auto g = PulseSpec::gaussian(1e-6, 2049);
  size_t peak = 0;
  for (size_t i = 1; i < g.amplitude.size(); ++i)
    if (std::abs(g.amplitude[i]) > std::abs(g.amplitude[peak])) peak = i;
  CHECK(std::abs(g.omega[peak]) < 2.0 * g.d_omega);
}

TEST_CASE("pulse file round trip") {
  auto ref = PulseSpec::gaussian(2e-6, 257);
  const char* path = "pulse_roundtrip.txt";
  {
    std::ofstream out(path);
    out << "# spectral samples\n";
    out.precision(17);
    for (size_t i = 0; i < ref.omega.size(); ++i) {
      if (i % 2 == 0)
        out << ref.omega[i] << " " << ref.amplitude[i].real() << " "
            << ref.amplitude[i].imag() << "\n";
      else
        out << ref.omega[i] << " " << ref.amplitude[i].real() << ","
            << ref.amplitude[i].imag() << "\n";
    }
  }
  auto got = PulseSpec::from_file(path);
  std::remove(path);
  REQUIRE(got.omega.size() == ref.omega.size());
  CHECK(std::abs(got.d_omega - ref.d_omega) < 1e-9 * ref.d_omega);
  for (size_t i = 0; i < got.omega.size(); ++i)
    CHECK(std::abs(got.amplitude[i] - ref.amplitude[i]) < 1e-9);
}

TEST_CASE("pulse file validation") {
  const char* path = "pulse_bad.txt";
  {
    std::ofstream out(path);
    out << "0.0 1.0 0.0\n1.0 1.0 0.0\n2.0 1.0 0.0\n";  // norm 3, not 1
  }
  CHECK_THROWS_AS(PulseSpec::from_file(path), std::runtime_error);
  {
    std::ofstream out(path);
    out << "0.0 0.5 0.0\n1.0 0.5 0.0\n5.0 0.5 0.0\n";  // non-uniform grid
  }
  CHECK_THROWS_AS(PulseSpec::from_file(path), std::runtime_error);
  std::remove(path);
  CHECK_THROWS_AS(PulseSpec::from_file("no_such_pulse_file.txt"), std::runtime_error);
}

TEST_CASE("lambda is 1 on the diagonal and Hermitian off it") {
  CavityParams p{100.0, 0.95, 1e8, 1e6, 0.0, 0.0};
  std::vector<PulseSpec> pulses;
  for (int k = 0; k < 2; ++k) {
    auto ps = PulseSpec::flat_top(1e-5, 1024);
    ps.alpha = Cx(1.5 + 0.5 * k, 0.25);
    pulses.push_back(ps);
  }
  for (unsigned m = 0; m < 4; ++m) CHECK(dephasing_lambda(p, pulses, m, m) == Cx(1.0, 0.0));
  for (unsigned m = 0; m < 4; ++m)
    for (unsigned mp = 0; mp < 4; ++mp) {
      const Cx a = dephasing_lambda(p, pulses, m, mp);
      const Cx b = dephasing_lambda(p, pulses, mp, m);
      CHECK(std::abs(a - std::conj(b)) < 1e-14);
      CHECK(std::abs(a) <= 1.0 + 1e-14);
      if (m != mp) CHECK(std::abs(a) < 1.0);
    }
  CHECK_THROWS_AS(dephasing_lambda(p, pulses, 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(dephasing_lambda(p, pulses, 0, 5), std::invalid_argument);
}

TEST_CASE("lossless strong-coupling cavity keeps coherence") {
  CavityParams p{1e9, 1.0, 1e8, 1e6, 0.0, 0.0};
  auto ps = PulseSpec::gaussian(1e-5, 2048);
  ps.alpha = Cx(1.0, 0.0);
  std::vector<PulseSpec> pulses{ps};
  const Cx lam = dephasing_lambda(p, pulses, 0, 1);
  CHECK(std::abs(std::abs(lam) - 1.0) < 1e-6);
}

TEST_CASE("narrowband lambda matches the closed form") {
  // When the pulse is much narrower than kappa the bin product collapses to
  // exp(-(|b|^2+|g|^2)/2 + conj(b) g) per port with carrier coefficients.
  CavityParams p{50.0, 0.9, 1e9, 1e7, 0.0, 0.0};
  auto ps = PulseSpec::gaussian(1e-3, 4096);
  ps.alpha = Cx(1.5, 0.5);
  std::vector<PulseSpec> pulses{ps};

  auto c0 = reflection_coeffs(p, false);
  auto c1 = reflection_coeffs(p, true);
  auto pair_term = [&](Cx b, Cx g) {
    return -0.5 * std::norm(b) - 0.5 * std::norm(g) + std::conj(b) * g;
  };
  const Cx expo = pair_term(c0.l_c * ps.alpha, c1.l_c * ps.alpha) +
                  pair_term(c0.l_a * ps.alpha, c1.l_a * ps.alpha);
  const Cx want = std::exp(expo);
  const Cx got = dephasing_lambda(p, pulses, 0, 1);
  CHECK(std::abs(got - want) < 1e-6);
}

TEST_CASE("lambda converges under grid refinement") {
  CavityParams p{100.0, 0.95, 1e8, 1e6, 0.0, 0.0};
  double vals[2];
  int idx = 0;
  for (int n : {2048, 8192}) {
    auto ps = PulseSpec::flat_top(1e-5, n);
    ps.alpha = Cx(2.0, 0.0);
    std::vector<PulseSpec> pulses{ps};
    const Cx lam = dephasing_lambda(p, pulses, 0, 1);
    vals[idx++] = std::norm(lam);
  }
  CHECK(std::abs(vals[0] - vals[1]) < 1e-6);
}

TEST_CASE("pulse length budget") {
  const double thr = 10.0 * std::numbers::pi * 4.0 / (16.0 * 1e8 * 0.01);
  auto chk = pulse_length_check(4, 1e8, 0.99, 100.0 * thr, 10.0);
  CHECK(chk.threshold == doctest::Approx(thr).epsilon(1e-12));
  CHECK(chk.threshold == doctest::Approx(7.853981633974483e-6).epsilon(1e-12));
  CHECK(chk.pass);
  CHECK_FALSE(pulse_length_check(4, 1e8, 0.99, thr / 2.0, 10.0).pass);
  CHECK(pulse_length_check(4, 1e8, 0.99, thr, 10.0).pass);  // boundary counts as pass

  auto vac = pulse_length_check(4, 1e8, 1.0, 1e6, 10.0);
  CHECK(std::isinf(vac.threshold));
  CHECK_FALSE(vac.pass);

  CHECK_THROWS_AS(pulse_length_check(4, 1e8, 0.99, 1.0, 0.5), std::invalid_argument);
}
