#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "gkplink/qudit_algebra.hpp"  // Cx

namespace gkplink {

/* Single-sided cavity holding a two-level memory, driven by weak coherent
 * pulses. Detunings are of the pulse carrier from the cavity (delta_c) and
 * from the memory transition (delta_a). */
struct CavityParams {
  double cooperativity;  // C = 4 g^2 / (kappa gamma_m)
  double zeta;           // kappa_c / kappa in [0, 1]; 1 = no intrinsic loss
  double kappa;          // total cavity linewidth
  double gamma_m;        // memory transition linewidth
  double delta_c = 0.0;
  double delta_a = 0.0;
};

struct ReflectionCoeffs {
  Cx r;    // back into the propagating mode
  Cx l_c;  // intrinsic cavity loss port
  Cx l_a;  // memory absorption port
};

/* Numerator convention for r. Conserving uses a real 2 zeta numerator, the
 * unique choice with |r|^2 + |l_C|^2 + |l_A|^2 = 1 and the textbook limits
 * r -> +1 (coupled, C -> inf) and r -> -1 (empty lossless cavity on
 * resonance). AsPublished keeps the 2 zeta i numerator found in print,
 * which breaks both; exposed for comparison only. */
enum class RConvention { Conserving, AsPublished };

/* Coefficients at detuning offset omega from the stored carrier detunings:
 *
 *   D     = 1 - 2i(delta_c + omega)/kappa + C_eff/(1 - 2i(delta_a + omega)/gamma_m)
 *   r     = 1 - 2 zeta / D
 *   l_C   = -2 sqrt(zeta (1 - zeta)) / D
 *   l_A   = -2i sqrt(zeta C_eff) / ((1 - 2i(delta_a + omega)/gamma_m) D)
 *
 * C_eff = params.cooperativity when the memory state couples the transition
 * (coupled = true), else 0. */
ReflectionCoeffs reflection_at(const CavityParams& params, bool coupled,
                               double omega,
                               RConvention conv = RConvention::Conserving);

// Same, evaluated at the carrier (omega = 0).
ReflectionCoeffs reflection_coeffs(const CavityParams& params, bool coupled,
                                   RConvention conv = RConvention::Conserving);

/* Spectral envelope of one pulse on a uniform grid of detunings from the
 * carrier. Discrete normalization sum |f|^2 d_omega = 1 is enforced by the
 * constructors, so downstream overlap sums are exact Riemann forms. */
struct PulseSpec {
  std::vector<double> omega;
  std::vector<Cx> amplitude;
  double d_omega = 0.0;
  double tau = 0.0;        // nominal duration the envelope was built for
  Cx alpha = {0.0, 0.0};   // coherent amplitude riding on this envelope

  // Gaussian envelope of duration tau: |f|^2 is N(0, (1/tau)^2), grid +-6/tau.
  static PulseSpec gaussian(double tau, int n_samples = 2048);
  // Flat spectrum over a band of width 2 pi / tau, grid +-3 bands.
  static PulseSpec flat_top(double tau, int n_samples = 2048);
  /* Numeric text, one sample per line: "omega re im" or "omega re,im".
   * '#' starts a comment. Rejects non-uniform grids and inputs whose norm
   * is off by more than 1e-3 (likely a unit mistake); the residual is
   * renormalized away. Throws std::runtime_error on unreadable files. */
  static PulseSpec from_file(const std::string& path, int max_samples = 65536);

  double bandwidth() const;  // grid half-span / 6
};

/* Memory-register coherence factor after one reflection pass.
 *
 * Pulse k (ordered most significant bit first, matching the gate schedule)
 * carries its coherent amplitude in pulses[k].alpha; the light lost through
 * the intrinsic and absorption ports entangles the register with the
 * environment, leaving
 *
 *   lambda_{m,m'} = prod_k prod_bins <beta|gamma>,
 *   beta  = l^(bit_k(m))(omega)  alpha_k f_k(omega) sqrt(d_omega),
 *   gamma = l^(bit_k(m'))(omega) alpha_k f_k(omega) sqrt(d_omega),
 *
 * with <beta|gamma> = exp(-|beta|^2/2 - |gamma|^2/2 + conj(beta) gamma) per
 * loss port. Returns exactly 1 when m == m'; |lambda| <= 1 always and
 * lambda_{m,m'} = conj(lambda_{m',m}). */
Cx dephasing_lambda(const CavityParams& params,
                    std::span<const PulseSpec> pulses,
                    unsigned m, unsigned m_prime,
                    RConvention conv = RConvention::Conserving);

struct PulseLengthCheck {
  double threshold;  // margin * pi * d / (16 kappa (1 - zeta)); inf at zeta = 1
  bool pass;         // tau >= threshold
};

/* Slow-pulse (adiabatic) budget for a d-level gate sequence: the total
 * sequence must outlast the cavity response by the safety margin. zeta = 1
 * makes the bound vacuous (threshold inf, never passes); callers should
 * treat that as a warning, not a usable operating point. */
PulseLengthCheck pulse_length_check(int d, double kappa, double zeta,
                                    double tau, double margin = 10.0);

}  // namespace gkplink
