#include "gkplink/gkp_code.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gkplink {

GkpCode GkpCode::make(int n_qubits, Lattice lattice) {
  if (n_qubits < 1 || n_qubits > 20)
    throw std::invalid_argument("n_qubits must lie in [1, 20]");
  return GkpCode{n_qubits, 1 << n_qubits, lattice};
}

double GkpCode::spacing() const {
  // Nearest logical peak distance: sqrt(2 pi / d) on the square lattice,
  // widened to sqrt(4 pi / (sqrt(3) d)) by hexagonal packing.
  if (lattice == Lattice::Hexagonal)
    return std::sqrt(4.0 * std::numbers::pi / (std::sqrt(3.0) * d));
  return std::sqrt(2.0 * std::numbers::pi / d);
}

double squeezing_db_to_variance(double squeezing_db) {
  if (std::isinf(squeezing_db) && squeezing_db > 0) return 0.0;
  return 0.5 * std::pow(10.0, -squeezing_db / 10.0);
}

double variance_to_squeezing_db(double sigma2) {
  if (sigma2 < 0) throw std::invalid_argument("variance must be >= 0");
  return -10.0 * std::log10(2.0 * sigma2);
}

BinResult logical_bin(double x, const GkpCode& code, BinConvention convention) {
  const double t = x / code.spacing();
  double n;
  if (convention == BinConvention::Round) {
    n = std::round(t);  // ties away from zero; fractional lands in [-1/2, 1/2]
  } else {
    n = std::floor(t);
  }
  long long idx = (long long)n % code.d;
  if (idx < 0) idx += code.d;
  return BinResult{int(idx), t - n};
}

int shift_index_min(int d) { return -(d / 2) + 1; }
int shift_index_max(int d) { return d / 2; }

double shift_probability(const GkpCode& code, double sigma2, int k, int j_max) {
  if (sigma2 < 0) throw std::invalid_argument("sigma2 must be >= 0");
  if (k < shift_index_min(code.d) || k > shift_index_max(code.d))
    throw std::invalid_argument("shift index out of range");
  if (j_max < 1) throw std::invalid_argument("j_max must be >= 1");
  if (sigma2 == 0.0) return k == 0 ? 1.0 : 0.0;

  // Mass of a zero-mean Gaussian with density exp(-x^2/sigma2)/(sigma sqrt(pi))
  // in the bins congruent to k mod d, bin width = peak spacing. In erf form
  // the argument scale is spacing/sigma.
  const double a = code.spacing() / std::sqrt(sigma2);
  double total = 0.0;
  for (int j = -j_max; j <= j_max; ++j) {
    const double u = double(j) * code.d + k;
    total += 0.5 * (std::erf(a * (u + 0.5)) - std::erf(a * (u - 0.5)));
  }
  return total;
}

std::vector<double> shift_distribution(const GkpCode& code, double sigma2, int j_max) {
  std::vector<double> p;
  p.reserve(size_t(code.d));
  for (int k = shift_index_min(code.d); k <= shift_index_max(code.d); ++k)
    p.push_back(shift_probability(code, sigma2, k, j_max));
  return p;
}

}  // namespace gkplink
