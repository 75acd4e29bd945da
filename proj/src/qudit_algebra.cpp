#include "gkplink/qudit_algebra.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gkplink {

namespace {

int mod_d(long long v, int d) {
  long long r = v % d;
  if (r < 0) r += d;
  return int(r);
}

void check_dim(int d) {
  if (d < 2) throw std::invalid_argument("qudit dimension must be >= 2");
}

}  // namespace

Eigen::MatrixXcd weyl(int d, int n, int m) {
  check_dim(d);
  const int nn = mod_d(n, d);
  const int mm = mod_d(m, d);
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(d, d);
  const double tau = 2.0 * std::numbers::pi / d;
  for (int k = 0; k < d; ++k) {
    // Phases are exp(i 2 pi k n / d); reduce k*n mod d before the trig call
    // so large d keeps full precision.
    w(k, mod_d(k + mm, d)) = std::polar(1.0, tau * double((k * (long long)nn) % d));
  }
  return w;
}

Eigen::VectorXcd bell_state(int d, int k, int l) {
  check_dim(d);
  const int kk = mod_d(k, d);
  const int ll = mod_d(l, d);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index(d) * d);
  const double amp = 1.0 / std::sqrt(double(d));
  const double tau = 2.0 * std::numbers::pi / d;
  // Amplitude exp(i 2 pi a l / d)/sqrt(d) on the basis pair (a, a-k mod d).
  for (int a = 0; a < d; ++a) {
    v(Eigen::Index(a) * d + mod_d(a - kk, d)) =
        amp * std::polar(1.0, tau * double((a * (long long)ll) % d));
  }
  return v;
}

BellLabel swap_update(int k1, int l1, int k2, int l2, int r, int s, int d) {
  check_dim(d);
  return {mod_d((long long)k1 + k2 + r, d), mod_d((long long)l1 + l2 - s, d)};
}

}  // namespace gkplink
