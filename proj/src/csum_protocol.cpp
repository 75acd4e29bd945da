#include "gkplink/csum_protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gkplink {

namespace {

Cx gate_step(const GkpCode& code, EntanglingGate gate) {
  const double unit =
      code.lattice == Lattice::Square
          ? std::sqrt(2.0 * std::numbers::pi / code.d)
          : std::sqrt(2.0 * std::numbers::pi / (std::sqrt(3.0) * code.d));
  if (gate == EntanglingGate::Cphase) return Cx(0.0, unit);
  if (code.lattice == Lattice::Hexagonal)
    return unit * Cx(std::sqrt(3.0) / 2.0, -0.5);
  return Cx(unit, 0.0);
}

// (m - (d-1)/2) as the exactly representable half-integer (2m - d + 1)/2
double centered_half(unsigned m, int d) {
  return 0.5 * double(2ll * m - d + 1);
}

}  // namespace

GateSchedule amplitude_schedule(const GkpCode& code, EntanglingGate gate,
                                double zeta) {
  if (!(zeta >= 0.0) || zeta >= 1.0)
    throw std::invalid_argument("tap zeta must lie in [0, 1)");
  GateSchedule sched;
  sched.gate = gate;
  sched.code = code;
  sched.zeta = zeta;
  sched.step = gate_step(code, gate);
  const double root = std::sqrt(1.0 - zeta);
  sched.coeffs.resize(code.n_qubits);
  sched.alphas.resize(code.n_qubits);
  for (int k = 0; k < code.n_qubits; ++k) {
    sched.coeffs[k] = std::ldexp(1.0, code.n_qubits - k - 2);  // d / 2^(k+2)
    sched.alphas[k] = sched.coeffs[k] * sched.step / root;
  }
  sched.pre_displacement = centered_half(code.d - 1, code.d) * sched.step;
  return sched;
}

Cx net_displacement(unsigned m, const GkpCode& code, EntanglingGate gate) {
  if (m >= unsigned(code.d))
    throw std::invalid_argument("register label out of range");
  return centered_half(m, code.d) * gate_step(code, gate);
}

HybridState simulate_csum(const GateSchedule& schedule,
                          const CavityParams& params,
                          std::span<const PulseSpec> pulses,
                          RConvention conv) {
  const int n = schedule.code.n_qubits;
  const int d = schedule.code.d;
  if (schedule.coeffs.size() != size_t(n) || schedule.alphas.size() != size_t(n))
    throw std::invalid_argument("schedule entry count does not match its code");
  if (pulses.size() != size_t(n))
    throw std::invalid_argument("pulse count does not match the schedule");
  for (int k = 0; k < n; ++k) {
    const Cx want = schedule.alphas[k];
    if (std::abs(pulses[k].alpha - want) > 1e-9 * (1.0 + std::abs(want)))
      throw std::invalid_argument("pulse amplitude disagrees with the schedule");
    if (pulses[k].omega.empty())
      throw std::invalid_argument("empty pulse spectrum");
  }

  /* Per pulse: the mode-matched reflection averages for both memory bits
   * and the differing-bit coherence factor
   *
   *   c_k = exp(2 Re E_ports + E_tap),
   *
   * E_ports from the pass-1 loss overlaps (the echo pass contributes the
   * conjugate, hence twice the real part) and E_tap from the tapped
   * mode-mismatch residual, bit order (0, 1). */
  std::vector<Cx> rbar0(n), rbar1(n), ck(n);
  std::vector<ReflectionCoeffs> c0, c1;
  for (int k = 0; k < n; ++k) {
    const PulseSpec& ps = pulses[k];
    const double sqdw = std::sqrt(ps.d_omega);
    c0.resize(ps.omega.size());
    c1.resize(ps.omega.size());
    Cx num0, num1;
    double den = 0.0;
    for (size_t i = 0; i < ps.omega.size(); ++i) {
      c0[i] = reflection_at(params, false, ps.omega[i], conv);
      c1[i] = reflection_at(params, true, ps.omega[i], conv);
      const double w = std::norm(ps.amplitude[i]) * ps.d_omega;
      num0 += c0[i].r * w;
      num1 += c1[i].r * w;
      den += w;
    }
    rbar0[k] = num0 / den;
    rbar1[k] = num1 / den;

    const Cx entry = schedule.coeffs[k] * schedule.step;
    Cx ports, tap;
    for (size_t i = 0; i < ps.omega.size(); ++i) {
      const Cx base = schedule.alphas[k] * ps.amplitude[i] * sqdw;
      const Cx bC = c0[i].l_c * base, gC = c1[i].l_c * base;
      const Cx bA = c0[i].l_a * base, gA = c1[i].l_a * base;
      ports += -0.5 * (std::norm(bC) + std::norm(gC)) + std::conj(bC) * gC;
      ports += -0.5 * (std::norm(bA) + std::norm(gA)) + std::conj(bA) * gA;
      const Cx kick = entry * ps.amplitude[i] * sqdw;
      const Cx rho0 = (c0[i].r - rbar0[k]) * kick;
      const Cx rho1 = (c1[i].r - rbar1[k]) * kick;
      tap += -0.5 * (std::norm(rho0) + std::norm(rho1)) + std::conj(rho0) * rho1;
    }
    ck[k] = std::exp(Cx(2.0 * ports.real() + tap.real(), tap.imag()));
  }

  HybridState st;
  st.d = d;
  st.g = Eigen::MatrixXcd::Zero(d, d);
  st.beta.resize(d);
  st.target.resize(d);
  for (unsigned m = 0; m < unsigned(d); ++m) {
    Cx acc;
    for (int k = 0; k < n; ++k) {
      const bool bit = (m >> (n - 1 - k)) & 1u;
      acc += (bit ? rbar1[k] : rbar0[k]) * schedule.coeffs[k];
    }
    st.beta[m] = acc * schedule.step;
    st.target[m] = centered_half(m, d) * schedule.step;
    st.g(m, m) = Cx(1.0, 0.0);
    for (unsigned mp = 0; mp < m; ++mp) {
      // bra-side bit 0 against ket-side bit 1 picks up ck, the reverse its conjugate
      Cx factor(1.0, 0.0);
      for (int k = 0; k < n; ++k) {
        const unsigned b = (m >> (n - 1 - k)) & 1u;
        const unsigned bp = (mp >> (n - 1 - k)) & 1u;
        if (b == bp) continue;
        factor *= b == 0 ? ck[k] : std::conj(ck[k]);
      }
      st.g(m, mp) = factor;
      st.g(mp, m) = std::conj(factor);
    }
  }
  return st;
}

double csum_fidelity(const HybridState& state, double sigma2) {
  if (!(sigma2 >= 0.0))
    throw std::invalid_argument("sigma2 must be >= 0");
  const int d = state.d;
  if (d < 1 || state.g.rows() != d || state.g.cols() != d ||
      state.beta.size() != size_t(d) || state.target.size() != size_t(d))
    throw std::invalid_argument("inconsistent hybrid state");

  std::vector<double> o(d);
  for (int m = 0; m < d; ++m) {
    const double err2 = std::norm(state.beta[m] - state.target[m]);
    o[m] = sigma2 > 0.0 ? std::exp(-err2 / (8.0 * sigma2))
                        : (err2 == 0.0 ? 1.0 : 0.0);
  }
  double sum = 0.0;
  for (int m = 0; m < d; ++m)
    for (int mp = 0; mp < d; ++mp)
      sum += state.g(m, mp).real() * o[m] * o[mp];
  const double f = sum / (double(d) * double(d));
  return std::min(1.0, std::max(0.0, f));
}

}  // namespace gkplink
