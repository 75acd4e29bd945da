#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "gkplink/cavity_interface.hpp"
#include "gkplink/gkp_code.hpp"
#include "gkplink/qudit_algebra.hpp"

namespace gkplink {

/* Register-to-GKP entangling gate implemented by the reflected-pulse
 * sequence: Csum kicks the position quadrature, Cphase the momentum. */
enum class EntanglingGate { Csum, Cphase };

/* Pulse amplitudes for one gate sequence over an N-qubit register,
 * d = 2^N. One pulse per register qubit, most significant bit first, so
 * the tapped kick of pulse k (0-based) has the dyadic weight
 *
 *   alpha_k sqrt(1 - zeta) = coeffs[k] * step,   coeffs[k] = d / 2^(k+2),
 *
 * with the lattice/gate unit
 *
 *   step = sqrt(2 pi / d)            * {Csum: 1, Cphase: i}     (square)
 *   step = sqrt(2 pi / (sqrt(3) d))  * {Csum: (sqrt(3) - i)/2,
 *                                       Cphase: i}              (hex)
 *
 * coeffs are exact powers of two, so signed dyadic sums over them stay
 * exact in binary floating point; that carries the telescoping identity
 * in net_displacement out to d = 1024 without rounding. zeta is the bus
 * beamsplitter tap (not the cavity coupling ratio of CavityParams).
 * pre_displacement recenters the code so the net gate action lands on
 * m * step instead of (m - (d-1)/2) * step. */
struct GateSchedule {
  EntanglingGate gate;
  GkpCode code;
  double zeta;
  Cx step;
  std::vector<double> coeffs;  // exact d / 2^(k+2), k = 0 .. N-1
  std::vector<Cx> alphas;      // cavity-frame amplitudes, coeffs[k]*step/sqrt(1-zeta)
  Cx pre_displacement;         // ((d-1)/2) * step

  Cx entry(std::size_t k) const { return coeffs[k] * step; }
};

// throws std::invalid_argument for zeta outside [0, 1) (zeta = 1 taps nothing)
GateSchedule amplitude_schedule(const GkpCode& code, EntanglingGate gate,
                                double zeta);

/* Net signed bus displacement for register value m (0 <= m < d),
 *
 *   S_m = sum_k (-1)^(m_k + 1) coeffs[k] * step = (m - (d-1)/2) * step,
 *
 * where bit k = 1 flips the pulse sign through the coupled-cavity
 * reflection. Adding pre_displacement shifts this to m * step. */
Cx net_displacement(unsigned m, const GkpCode& code,
                    EntanglingGate gate = EntanglingGate::Csum);

/* Joint register-bus state after the gate, tracked in the displaced-peak
 * frame rather than any Fock basis: branch m of the register superposition
 * carries a realized bus displacement beta[m] (pre-displacement excluded)
 * and the pairwise coherence matrix g. g has unit diagonal; the physical
 * branch populations are g(m, m) / d for the |+>^N register input. */
struct HybridState {
  int d = 0;
  Eigen::MatrixXcd g;       // Hermitian, PSD, unit diagonal, |g| <= 1
  std::vector<Cx> beta;     // realized displacement per branch
  std::vector<Cx> target;   // ideal S_m per branch
};

/* Runs the schedule against the cavity model. Branch displacements take
 * the mode-matched part of the once-reflected, once-tapped pulse,
 *
 *   beta_m = sum_k <r^(bit_k m)>_f coeffs[k] * step,
 *   <r>_f  = sum_bins |f|^2 r d_omega / sum_bins |f|^2 d_omega,
 *
 * so an ideal cavity (<r^(1)> = +1, <r^(0)> = -1) reproduces S_m exactly.
 * Coherences combine the loss-port overlaps of both reflection passes of
 * the echo step (the X sandwich conjugates the second pass, giving
 * |lambda|^2) with the tap's mode-mismatch residual
 *
 *   rho^(b) = (r^(b)(omega) - <r^(b)>_f) coeffs[k] * step * f(omega)
 *
 * treated as one more lost mode, so for registers m != m'
 *
 *   g(m, m') = |lambda_{m,m'}|^2 * mu_{m,m'},
 *   mu       = prod_k <rho^(bit_k m) | rho^(bit_k m')>.
 *
 * pulses.size() must match the schedule and pulses[k].alpha must agree
 * with schedule.alphas[k]; anything else throws std::invalid_argument. */
HybridState simulate_csum(const GateSchedule& schedule,
                          const CavityParams& params,
                          std::span<const PulseSpec> pulses,
                          RConvention conv = RConvention::Conserving);

/* Regression fidelity of the hybrid state against the ideal gate output,
 * frozen as
 *
 *   F   = (1/d^2) sum_{m,m'} Re[g(m, m')] o_m o_m',
 *   o_m = exp(-|beta_m - target_m|^2 / (8 sigma2))   (sigma2 > 0)
 *   o_m = [beta_m == target_m]                       (sigma2 = 0)
 *
 * o_m is the overlap of two Gaussian peaks of variance sigma2 displaced
 * by the branch error. Ideal run -> 1; fully dephased register (g = I)
 * with exact displacements -> 1/d. Monotone non-increasing in every
 * |beta_m - target_m| and in any entrywise decrease of g. */
double csum_fidelity(const HybridState& state, double sigma2);

}  // namespace gkplink
