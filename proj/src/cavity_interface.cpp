#include "gkplink/cavity_interface.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gkplink {

namespace {

void validate(const CavityParams& p) {
  if (!(p.cooperativity >= 0.0)) throw std::invalid_argument("cooperativity must be >= 0");
  if (!(p.zeta >= 0.0) || p.zeta > 1.0) throw std::invalid_argument("zeta must lie in [0, 1]");
  if (!(p.kappa > 0.0)) throw std::invalid_argument("kappa must be > 0");
  if (!(p.gamma_m > 0.0)) throw std::invalid_argument("gamma_m must be > 0");
}

PulseSpec finish_grid(std::vector<double> omega, std::vector<Cx> amp, double tau) {
  PulseSpec p;
  p.omega = std::move(omega);
  p.amplitude = std::move(amp);
  p.d_omega = (p.omega.back() - p.omega.front()) / double(p.omega.size() - 1);
  p.tau = tau;
  double norm = 0.0;
  for (const Cx& a : p.amplitude) norm += std::norm(a) * p.d_omega;
  const double scale = 1.0 / std::sqrt(norm);
  for (Cx& a : p.amplitude) a *= scale;
  return p;
}

}  // namespace

ReflectionCoeffs reflection_at(const CavityParams& params, bool coupled, double omega,
                               RConvention conv) {
  validate(params);
  const double c_eff = coupled ? params.cooperativity : 0.0;
  if (std::isinf(c_eff)) {
    // Perfectly dispersive memory: the cavity resonance is pushed away and
    // the pulse reflects promptly with no loss.
    return {Cx(1.0, 0.0), Cx(0.0, 0.0), Cx(0.0, 0.0)};
  }
  const Cx atom(1.0, -2.0 * (params.delta_a + omega) / params.gamma_m);
  const Cx denom = Cx(1.0, -2.0 * (params.delta_c + omega) / params.kappa) + c_eff / atom;
  const Cx numer = conv == RConvention::Conserving ? Cx(2.0 * params.zeta, 0.0)
                                                   : Cx(0.0, 2.0 * params.zeta);
  ReflectionCoeffs out;
  out.r = 1.0 - numer / denom;
  out.l_c = -2.0 * std::sqrt(params.zeta * (1.0 - params.zeta)) / denom;
  out.l_a = Cx(0.0, -2.0) * std::sqrt(params.zeta * c_eff) / (atom * denom);
  return out;
}

ReflectionCoeffs reflection_coeffs(const CavityParams& params, bool coupled,
                                   RConvention conv) {
  return reflection_at(params, coupled, 0.0, conv);
}

PulseSpec PulseSpec::gaussian(double tau, int n_samples) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
  if (n_samples < 8) throw std::invalid_argument("need at least 8 samples");
  const double sigma_w = 1.0 / tau;
  const double half = 6.0 * sigma_w;
  std::vector<double> omega(n_samples);
  std::vector<Cx> amp(n_samples);
  const double dw = 2.0 * half / (n_samples - 1);
  for (int i = 0; i < n_samples; ++i) {
    const double w = -half + i * dw;
    omega[i] = w;
    // |f|^2 is the N(0, sigma_w^2) density.
    const double dens = std::exp(-w * w / (2.0 * sigma_w * sigma_w)) /
                        (sigma_w * std::sqrt(2.0 * std::numbers::pi));
    amp[i] = Cx(std::sqrt(dens), 0.0);
  }
  return finish_grid(std::move(omega), std::move(amp), tau);
}

PulseSpec PulseSpec::flat_top(double tau, int n_samples) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
  if (n_samples < 8) throw std::invalid_argument("need at least 8 samples");
  const double band = 2.0 * std::numbers::pi / tau;
  const double half = 1.5 * band;
  std::vector<double> omega(n_samples);
  std::vector<Cx> amp(n_samples);
  const double dw = 2.0 * half / (n_samples - 1);
  for (int i = 0; i < n_samples; ++i) {
    const double w = -half + i * dw;
    omega[i] = w;
    amp[i] = std::abs(w) <= band / 2.0 ? Cx(1.0 / std::sqrt(band), 0.0) : Cx(0.0, 0.0);
  }
  return finish_grid(std::move(omega), std::move(amp), tau);
}

PulseSpec PulseSpec::from_file(const std::string& path, int max_samples) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pulse file: " + path);
  std::vector<double> omega;
  std::vector<Cx> amp;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ls(line);
    double w, re, im;
    if (!(ls >> w)) continue;  // blank or comment-only line
    if (!(ls >> re >> im))
      throw std::runtime_error("pulse file line needs omega and a complex amplitude");
    if (int(omega.size()) >= max_samples) throw std::runtime_error("pulse file too large");
    omega.push_back(w);
    amp.push_back(Cx(re, im));
  }
  if (omega.size() < 4) throw std::runtime_error("pulse file needs at least 4 samples");
  const double dw = (omega.back() - omega.front()) / double(omega.size() - 1);
  if (!(dw > 0.0)) throw std::runtime_error("pulse grid must ascend");
  for (size_t i = 1; i < omega.size(); ++i) {
    if (std::abs(omega[i] - omega[i - 1] - dw) > 1e-6 * dw)
      throw std::runtime_error("pulse grid must be uniform");
  }
  double norm = 0.0;
  for (const Cx& a : amp) norm += std::norm(a) * dw;
  if (std::abs(norm - 1.0) > 1e-3)
    throw std::runtime_error("pulse spectrum norm is off by more than 1e-3");
  auto p = finish_grid(std::move(omega), std::move(amp), 0.0);
  p.tau = 1.0 / p.bandwidth();
  return p;
}

double PulseSpec::bandwidth() const {
  return (omega.back() - omega.front()) / 12.0;
}

Cx dephasing_lambda(const CavityParams& params, std::span<const PulseSpec> pulses,
                    unsigned m, unsigned m_prime, RConvention conv) {
  const size_t n = pulses.size();
  if (n == 0 || n > 31) throw std::invalid_argument("need 1..31 pulses");
  const unsigned lim = 1u << n;
  if (m >= lim || m_prime >= lim)
    throw std::invalid_argument("memory label out of range for pulse count");
  if (m == m_prime) return Cx(1.0, 0.0);

  Cx exponent(0.0, 0.0);
  for (size_t k = 0; k < n; ++k) {
    const unsigned bit = (m >> (n - 1 - k)) & 1u;
    const unsigned bit_p = (m_prime >> (n - 1 - k)) & 1u;
    if (bit == bit_p) continue;  // identical loss amplitudes overlap to 1
    const PulseSpec& ps = pulses[k];
    if (ps.omega.empty()) throw std::invalid_argument("empty pulse spectrum");
    const double sqdw = std::sqrt(ps.d_omega);
    for (size_t i = 0; i < ps.omega.size(); ++i) {
      const Cx base = ps.alpha * ps.amplitude[i] * sqdw;
      const auto ca = reflection_at(params, bit != 0, ps.omega[i], conv);
      const auto cb = reflection_at(params, bit_p != 0, ps.omega[i], conv);
      const Cx bC = ca.l_c * base, gC = cb.l_c * base;
      const Cx bA = ca.l_a * base, gA = cb.l_a * base;
      exponent += -0.5 * (std::norm(bC) + std::norm(gC)) + std::conj(bC) * gC;
      exponent += -0.5 * (std::norm(bA) + std::norm(gA)) + std::conj(bA) * gA;
    }
  }
  return std::exp(exponent);
}

PulseLengthCheck pulse_length_check(int d, double kappa, double zeta, double tau,
                                    double margin) {
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be > 0");
  if (!(zeta >= 0.0) || zeta > 1.0) throw std::invalid_argument("zeta must lie in [0, 1]");
  if (!(margin >= 1.0)) throw std::invalid_argument("margin must be >= 1");
  const double threshold = margin * std::numbers::pi * double(d) / (16.0 * kappa * (1.0 - zeta));
  return {threshold, tau >= threshold};
}

}  // namespace gkplink
