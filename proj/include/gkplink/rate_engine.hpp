#pragma once

#include <vector>

#include <Eigen/Core>

#include "gkplink/channel_model.hpp"
#include "gkplink/gkp_code.hpp"

namespace gkplink {

/* Twirled two-qudit error model after the swap: independent X and Z shift
 * channels with identical marginals, so the joint distribution is the
 * product p(k1, k2) = P(k1) P(k2). Only the marginal is stored; the d x d
 * joint is synthesized on demand and never materialized for d > 64. */
struct TwirledBellState {
  int d = 0;
  std::vector<double> marginal;  // index i <-> shift k = shift_index_min(d) + i

  double joint(int i1, int i2) const { return marginal[i1] * marginal[i2]; }
  Eigen::MatrixXd dense() const;  // throws std::length_error for d > 64
};

TwirledBellState twirled_bell(const GkpCode& code, double sigma2_eff,
                              int j_max = 20);

/* Hashing (one-way distillation) yield in ebits per copy,
 *
 *   I = max(0, log2 d + sum_{k1,k2} p log2 p)
 *     = max(0, log2 d + 2 sum_k P(k) log2 P(k)).
 *
 * Exact-integer log2 d is used when d is a power of two so the lossless
 * endpoint returns exactly N. */
double hashing_rate(const TwirledBellState& state);

/* One-shot quantum capacity of a pure-loss channel of transmissivity eta,
 * C = -log2(1 - eta). Applied to a single arm's amplitude transmissivity
 * this is the repeaterless bound Q2. */
double capacity(double eta);

/* How the two arms' post-channel variances enter the effective binned
 * noise. SumArms is the physical dual-homodyne budget (both arms add);
 * SingleArm reproduces published single-variance curves and is what the
 * asymptotic benchmarks assume. */
enum class CombineMode { SingleArm, SumArms };

struct RatePoint {
  int n_qubits = 0;
  int d = 0;
  Lattice lattice = Lattice::Square;
  AmpMode amp = AmpMode::PreAmplify;
  CombineMode combine = CombineMode::SingleArm;
  double half_loss_db = 0.0;   // one arm, dB
  double squeezing_db = 0.0;   // per source; +inf = exact codes
  double sigma2_code = 0.0;    // source peak variance
  double sigma2_eff = 0.0;     // binned noise variance after combine
  double rate = 0.0;           // hashing yield, ebits per channel use
  double q2_bound = 0.0;       // -log2(1 - t), per-arm benchmark
  double capacity_full = 0.0;  // -log2(1 - t^2), end-to-end channel
};

RatePoint link_rate(int n_qubits, Lattice lattice, double half_loss_db,
                    double squeezing_db, AmpMode amp, CombineMode combine,
                    int j_max = 20);

/* Low-loss closed form: with the dimensionless ansatz xi fixed while
 * eps -> 0, the per-quadrature distribution collapses onto
 *
 *   p0 = 1 - sqrt(xi) exp(-pi/xi) / pi,     p1 = sqrt(xi) exp(-pi/xi) / (2 pi)
 *
 * for k = 0 and k = +-1, p0 + 2 p1 = 1 identically. The same form serves
 * both lattices; the lattice only decides how xi maps back to (d, eps):
 * xi = 2 d eps (square), xi = sqrt 3 d eps (hexagonal). */
struct AsymptoticProbs {
  double p0;
  double p1;
};
AsymptoticProbs asymptotic_probs(double xi);

/* Limiting vertical distance Q2 - I_LB at fixed xi (eps-independent):
 *   square:    1 - log2 xi - 2 S(xi)
 *   hexagonal: log2 sqrt 3 - log2 xi - 2 S(xi)
 * with S = p0 log2 p0 + 2 p1 log2 p1. */
double asymptotic_gap(double xi, Lattice lattice);

// I_LB(eps) at fixed xi, treating d = xi / (2 eps) resp. xi / (sqrt 3 eps)
// as continuous. Parallel to Q2(eps) = -log2 eps by construction.
double asymptotic_rate(double eps, double xi, Lattice lattice);

struct XiOptimum {
  Lattice lattice;
  double xi_opt;
  double gap;  // ebits below Q2 at xi_opt
};

/* Golden-section minimization of the square-lattice gap (tol in xi). Both
 * lattices share the same reduced objective up to an additive constant, so
 * a literal hexagonal minimization would land on the square optimum; the
 * hexagonal operating point follows the lattice-packing correspondence
 * xi_hex = (sqrt 3 / 2) xi_square instead, with its gap read off the
 * hexagonal curve at that point. Throws std::runtime_error if the bracket
 * fails to converge. */
XiOptimum optimize_xi(Lattice lattice, double tol = 1e-6);

}  // namespace gkplink
