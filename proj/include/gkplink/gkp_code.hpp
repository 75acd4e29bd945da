#pragma once

#include <vector>

namespace gkplink {

enum class Lattice { Square, Hexagonal };

/* A d-dimensional grid code over N bosonic-mode qubits worth of logical
 * space, d = 2^N. Square codes space logical peaks sqrt(2 pi / d) apart in
 * the position quadrature; the hexagonal packing tightens the effective
 * spacing to sqrt(4 pi / (sqrt 3 d)). */
struct GkpCode {
  int n_qubits;
  int d;
  Lattice lattice;

  // throws std::invalid_argument unless 1 <= n_qubits <= 20
  static GkpCode make(int n_qubits, Lattice lattice = Lattice::Square);

  double spacing() const;
};

/* Homodyne squeezing in dB to per-quadrature peak variance,
 * sigma^2 = (1/2) 10^(-s/10). 0 dB is the vacuum variance 1/2;
 * +infinity maps to the exact-code limit sigma^2 = 0. */
double squeezing_db_to_variance(double s_db);
double variance_to_squeezing_db(double sigma2);

/* Which integer multiple of the spacing a measured value is assigned to.
 * Round is the symmetric convention (fractional part in [-1/2, 1/2));
 * Floor reproduces the one-sided convention (fractional part in [0, 1)). */
enum class BinConvention { Round, Floor };

struct BinResult {
  int logical;        // in [0, d)
  double fractional;  // in units of the spacing
};

BinResult logical_bin(double x, const GkpCode& code,
                      BinConvention conv = BinConvention::Round);

/* Centered shift index range {-floor(d/2)+1, ..., floor(d/2)}: one residue
 * per logical class, symmetric about zero. */
int shift_index_min(int d);
int shift_index_max(int d);

/* P(k; sigma^2): probability that the effective Gaussian quadrature shift
 * lands k lattice steps away from the transmitted peak (mod d),
 *
 *   P(k) = 1/2 sum_j [ erf(a (jd + k + 1/2)) - erf(a (jd + k - 1/2)) ]
 *
 * with a = sqrt(2 pi / d) / sigma on the square lattice and the hexagonal
 * argument shrunk by sqrt(sqrt(3)/2). Equivalently: the centered-bin mass of
 * a zero-mean Gaussian of variance sigma^2/2 tiled at the code spacing
 * (the 1/sqrt 2 is the dual-homodyne beamsplitter scaling folded into the
 * formula; see shift tests for the quadrature oracle pinning this).
 * sigma2 = 0 is the exact code: a point mass at k = 0. */
double shift_probability(const GkpCode& code, double sigma2, int k,
                         int j_max = 20);

/* Full distribution over the centered index range, element i holding
 * P(shift_index_min(d) + i). Sums to 1 within 1e-9 for d <= 1024,
 * sigma^2 <= 2. */
std::vector<double> shift_distribution(const GkpCode& code, double sigma2,
                                       int j_max = 20);

}  // namespace gkplink
