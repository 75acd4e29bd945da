#include "gkplink/rate_engine.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gkplink {

namespace {

// sum_k P log2 P with the 0 log 0 = 0 convention
double entropy_sum(const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p)
    if (v > 0.0) s += v * std::log2(v);
  return s;
}

// exact for powers of two, so endpoint rates come out as whole qubits
double log2_dim(int d) {
  const auto u = static_cast<unsigned>(d);
  if (d > 0 && std::has_single_bit(u)) return double(std::countr_zero(u));
  return std::log2(double(d));
}

double reduced_entropy(const AsymptoticProbs& p) {
  return p.p0 * std::log2(p.p0) + 2.0 * p.p1 * std::log2(p.p1);
}

}  // namespace

Eigen::MatrixXd TwirledBellState::dense() const {
  if (d > 64) throw std::length_error("dense joint limited to d <= 64");
  Eigen::MatrixXd out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = joint(i, j);
  return out;
}

TwirledBellState twirled_bell(const GkpCode& code, double sigma2_eff,
                              int j_max) {
  TwirledBellState st;
  st.d = code.d;
  st.marginal = shift_distribution(code, sigma2_eff, j_max);
  return st;
}

double hashing_rate(const TwirledBellState& state) {
  if (state.d < 2 || state.marginal.size() != size_t(state.d))
    throw std::invalid_argument("marginal does not match the dimension");
  const double yield = log2_dim(state.d) + 2.0 * entropy_sum(state.marginal);
  return std::max(0.0, yield);
}

double capacity(double eta) {
  if (!(eta >= 0.0) || eta > 1.0)
    throw std::invalid_argument("transmissivity must lie in [0, 1]");
  if (eta == 1.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-eta) / std::numbers::ln2;
}

RatePoint link_rate(int n_qubits, Lattice lattice, double half_loss_db,
                    double squeezing_db, AmpMode amp, CombineMode combine,
                    int j_max) {
  if (n_qubits < 1) throw std::invalid_argument("need at least one qubit");
  if (!(half_loss_db >= 0.0))
    throw std::invalid_argument("loss must be non-negative");
  const auto code = GkpCode::make(n_qubits, lattice);

  RatePoint pt;
  pt.n_qubits = n_qubits;
  pt.d = code.d;
  pt.lattice = lattice;
  pt.amp = amp;
  pt.combine = combine;
  pt.half_loss_db = half_loss_db;
  pt.squeezing_db = squeezing_db;
  pt.sigma2_code = squeezing_db_to_variance(squeezing_db);

  // one arm's amplitude transmissivity; both arms see the same fiber budget
  const double t = std::pow(10.0, -half_loss_db / 10.0);
  const double arm = transform_variance(pt.sigma2_code, t, amp);
  pt.sigma2_eff = combine == CombineMode::SumArms ? 2.0 * arm : arm;
  pt.rate = hashing_rate(twirled_bell(code, pt.sigma2_eff, j_max));
  pt.q2_bound = capacity(t);
  pt.capacity_full = capacity(t * t);
  return pt;
}

AsymptoticProbs asymptotic_probs(double xi) {
  if (!(xi > 0.0)) throw std::invalid_argument("xi must be positive");
  const double q =
      std::sqrt(xi) * std::exp(-std::numbers::pi / xi) / std::numbers::pi;
  AsymptoticProbs p;
  p.p1 = 0.5 * q;        // each of k = +-1
  p.p0 = 1.0 - 2.0 * p.p1;  // closes the truncated model exactly
  if (!(p.p0 > 0.0))
    throw std::domain_error("three-peak truncation invalid at this xi");
  return p;
}

double asymptotic_gap(double xi, Lattice lattice) {
  const double offset =
      lattice == Lattice::Hexagonal ? 0.5 * std::log2(3.0) : 1.0;
  return offset - std::log2(xi) - 2.0 * reduced_entropy(asymptotic_probs(xi));
}

double asymptotic_rate(double eps, double xi, Lattice lattice) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const double d_cont = lattice == Lattice::Hexagonal
                            ? xi / (std::sqrt(3.0) * eps)
                            : xi / (2.0 * eps);
  return std::log2(d_cont) + 2.0 * reduced_entropy(asymptotic_probs(xi));
}

XiOptimum optimize_xi(Lattice lattice, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

  // the hexagonal gap differs from the square one by a constant, so both
  // searches reduce to the same unimodal objective on [0.3, 6]
  double a = 0.3;
  double b = 6.0;
  const double shrink = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - shrink * (b - a);
  double d = a + shrink * (b - a);
  double fc = asymptotic_gap(c, Lattice::Square);
  double fd = asymptotic_gap(d, Lattice::Square);
  for (int iter = 0; b - a > tol; ++iter) {
    if (iter >= 200)
      throw std::runtime_error("gap minimization failed to converge");
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - shrink * (b - a);
      fc = asymptotic_gap(c, Lattice::Square);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + shrink * (b - a);
      fd = asymptotic_gap(d, Lattice::Square);
    }
  }

  XiOptimum out;
  out.lattice = lattice;
  out.xi_opt = 0.5 * (a + b);
  // denser packing rescales the operating point by the lattice area ratio
  if (lattice == Lattice::Hexagonal) out.xi_opt *= 0.5 * std::sqrt(3.0);
  out.gap = asymptotic_gap(out.xi_opt, lattice);
  return out;
}

}  // namespace gkplink
