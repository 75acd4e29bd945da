#pragma once

#include <cstdint>
#include <vector>

#include "gkplink/channel_model.hpp"
#include "gkplink/gkp_code.hpp"
#include "gkplink/qudit_algebra.hpp"
#include "gkplink/rate_engine.hpp"

namespace gkplink {

/* Dual-homodyne swap trials on lattice-displacement arithmetic: each arm
 * contributes an independent Gaussian quadrature kick, the 50:50
 * beamsplitter scales the measured combination by 1/sqrt 2, and the result
 * is binned against the code lattice. Baseline peak is the (0,0) branch;
 * shift statistics are translation invariant so nothing is lost. */
struct SwapTrialConfig {
  GkpCode code;
  double sigma2_arm1 = 0.0;  // post-channel per-arm variances
  double sigma2_arm2 = 0.0;
  CombineMode combine = CombineMode::SumArms;
  std::uint64_t seed = 0;
  std::int64_t n_trials = 0;
  int n_threads = 1;
  bool collect_fractionals = false;  // keep per-trial x_f/y_f for GoF tests
};

struct SwapResult {
  int d = 0;
  std::int64_t n = 0;
  double sigma2_eff = 0.0;
  // counts over the centered shift index range, position then momentum
  std::vector<std::int64_t> x_counts;
  std::vector<std::int64_t> y_counts;
  // heralded Bell label tallies, flattened k*d + l
  std::vector<std::int64_t> label_counts;
  std::vector<double> x_frac;  // only when collect_fractionals
  std::vector<double> y_frac;
};

/* Trial i consumes counter slots {4i..4i+3} of the seed's stream, so any
 * thread count produces the identical result. */
SwapResult run_swap_trials(const SwapTrialConfig& config);

/* Bell label heralded by dual-homodyne logical outcomes (x_l, y_l): the
 * swap correction W1^(0, d-x_l) W2^(d-y_l, 0) maps |Psi_00> onto
 * |Psi_{x_l, -y_l mod d}>, i.e. swap_update with r = x_l, s = y_l. */
BellLabel heralded_label(int x_l, int y_l, int d);

}  // namespace gkplink
