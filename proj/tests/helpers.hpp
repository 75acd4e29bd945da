#pragma once

// Shared oracles for the unit tests. Everything here is computed from first
// principles (defining sums, quadrature) so the library can be checked against
// an independent route.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using Cx = std::complex<double>;

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Eigen::VectorXcd kron_vec(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
  return out;
}

// Generalized Pauli built directly from the defining sum
//   W(n,m) = sum_k exp(i 2 pi k n / d) |k><k+m mod d|.
inline Eigen::MatrixXcd weyl_ref(int d, int n, int m) {
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(d, d);
  const double tau = 2.0 * std::numbers::pi / d;
  for (int k = 0; k < d; ++k) {
    w(k, ((k + m) % d + d) % d) = std::polar(1.0, tau * k * n);
  }
  return w;
}

// |Psi_kl> = (1/sqrt d) sum_a exp(i 2 pi a l / d) |a>|a-k>, index (a,b) -> a*d+b.
inline Eigen::VectorXcd bell_ref(int d, int k, int l) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
  const double tau = 2.0 * std::numbers::pi / d;
  for (int a = 0; a < d; ++a) {
    v(a * d + (((a - k) % d) + d) % d) = std::polar(1.0 / std::sqrt(double(d)), tau * a * l);
  }
  return v;
}

// Maximally entangled pair with no correction applied.
inline Eigen::VectorXcd phi_plus(int d) {
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(d * d);
  for (int a = 0; a < d; ++a) phi(a * d + a) = 1.0 / std::sqrt(double(d));
  return phi;
}

// Project systems (2,3) of a four-qudit vector onto <bell|, leaving (1,4).
// v4 is indexed ((a*d+b)*d+c)*d+e with (a,b) the first pair, (c,e) the second.
inline Eigen::VectorXcd project_inner_pair(const Eigen::VectorXcd& v4,
                                           const Eigen::VectorXcd& bell, int d) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e)
          out(a * d + e) += std::conj(bell(b * d + c)) * v4(((a * d + b) * d + c) * d + e);
  return out;
}

// Composite Simpson; integrand must be smooth on [a,b].
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int intervals = 512) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double s = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Mass of N(0, sigma2/2) in the bin (spacing*(u-1/2), spacing*(u+1/2)),
// u ranging over k + j*d. This is the quadrature route for the shift
// probabilities; the library uses the closed erf form.
inline double binned_gaussian_mass(double spacing, double sigma2, int k, int d,
                                   int j_span = 30) {
  if (sigma2 == 0.0) return k == 0 ? 1.0 : 0.0;
  const double norm = 1.0 / (std::sqrt(sigma2) * std::sqrt(std::numbers::pi));
  auto dens = [&](double x) { return norm * std::exp(-x * x / sigma2); };
  double total = 0.0;
  for (int j = -j_span; j <= j_span; ++j) {
    const double lo = spacing * (j * double(d) + k - 0.5);
    const double hi = spacing * (j * double(d) + k + 0.5);
    // Skip bins whose nearest edge is > 12 sigma out; they carry < 1e-31.
    const double sig = std::sqrt(sigma2 / 2.0);
    if (std::min(std::abs(lo), std::abs(hi)) > 12.0 * sig && lo * hi > 0.0) continue;
    total += simpson(dens, lo, hi);
  }
  return total;
}

inline double phi_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Reference splitmix64 stream (public-domain algorithm, Vigna): output i of the
// generator seeded with `seed`.
inline std::uint64_t splitmix64_ref(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t x = seed;
  std::uint64_t z = 0;
  for (std::uint64_t n = 0; n <= i; ++n) {
    x += 0x9E3779B97F4A7C15ULL;
    z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z = z ^ (z >> 31);
  }
  return z;
}

// One-sample Kolmogorov-Smirnov statistic against a CDF. Sorts a copy.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = double(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double F = cdf(xs[i]);
    d = std::max(d, std::abs(F - double(i) / n));
    d = std::max(d, std::abs(double(i + 1) / n - F));
  }
  return d;
}

}  // namespace oracle
