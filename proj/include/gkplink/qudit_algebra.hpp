#pragma once

#include <complex>

#include <Eigen/Core>

namespace gkplink {

using Cx = std::complex<double>;

/* Discrete Weyl (generalized Pauli) algebra on a d-level system.
 *
 *   W(n, m) = sum_k exp(i 2 pi k n / d) |k><k + m mod d|
 *
 * so the only nonzero entry of row k sits in column (k + m) mod d. Acting on
 * a basis ket, W(n, m)|j> = exp(i 2 pi (j - m) n / d) |j - m mod d>: m walks
 * the computational basis, n applies a phase ramp. W(1, 0) is the clock
 * operator Z, W(0, d - 1) the shift operator X.
 */
Eigen::MatrixXcd weyl(int d, int n, int m);

/* Maximally entangled pair basis,
 *
 *   |Psi_{k,l}> = (1/sqrt d) sum_j exp(i 2 pi j l / d) |j>|j - k mod d>,
 *
 * returned as a d^2 amplitude vector with index (a, b) -> a*d + b. */
Eigen::VectorXcd bell_state(int d, int k, int l);

struct BellLabel {
  int k;
  int l;
};

/* Label bookkeeping for an entanglement swap. Projecting the inner pair of
 * |Psi_{k1,l1}>_{12} (x) |Psi_{k2,l2}>_{34} onto the Bell outcome (r, s)
 * leaves the outer pair (1,4) exactly in |Psi_{k1+k2+r, l1+l2-s}>; indices
 * are reduced mod d. (Contracting <Psi_{r,s}|_23 shifts slot 4 by -r-k2
 * relative to slot 1's +k1, so the outcome's shift label enters with a plus
 * sign; the phase label enters conjugated, hence minus.) */
BellLabel swap_update(int k1, int l1, int k2, int l2, int r, int s, int d);

}  // namespace gkplink
