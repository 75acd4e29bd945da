#include "gkplink/swap_montecarlo.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

namespace gkplink {

namespace {

struct Tally {
  std::vector<std::int64_t> x_counts, y_counts, label_counts;

  explicit Tally(int d)
      : x_counts(d, 0), y_counts(d, 0), label_counts(std::size_t(d) * d, 0) {}

  void merge(const Tally& other) {
    for (std::size_t i = 0; i < x_counts.size(); ++i) {
      x_counts[i] += other.x_counts[i];
      y_counts[i] += other.y_counts[i];
    }
    for (std::size_t i = 0; i < label_counts.size(); ++i)
      label_counts[i] += other.label_counts[i];
  }
};

}  // namespace

BellLabel heralded_label(int x_l, int y_l, int d) {
  if (d < 2) throw std::invalid_argument("dimension must be at least 2");
  if (x_l < 0 || x_l >= d || y_l < 0 || y_l >= d)
    throw std::invalid_argument("logical outcome out of range");
  return swap_update(0, 0, 0, 0, x_l, y_l, d);
}

SwapResult run_swap_trials(const SwapTrialConfig& config) {
  const int d = config.code.d;
  if (config.n_trials < 1)
    throw std::invalid_argument("need at least one trial");
  if (config.n_threads < 1)
    throw std::invalid_argument("need at least one worker");
  if (!(config.sigma2_arm1 >= 0.0) || !(config.sigma2_arm2 >= 0.0))
    throw std::invalid_argument("arm variances must be non-negative");

  SwapResult res;
  res.d = d;
  res.n = config.n_trials;
  res.sigma2_eff = config.combine == CombineMode::SumArms
                       ? config.sigma2_arm1 + config.sigma2_arm2
                       : config.sigma2_arm1;
  if (config.collect_fractionals) {
    res.x_frac.resize(std::size_t(config.n_trials));
    res.y_frac.resize(std::size_t(config.n_trials));
  }

  const int kmin = shift_index_min(d);
  const int kmax = shift_index_max(d);
  const double inv_root2 = 1.0 / std::numbers::sqrt2;

  // trial i owns counter slots {4i .. 4i+3} no matter which worker runs it
  const auto run_range = [&](std::int64_t lo, std::int64_t hi, Tally& tally) {
    CounterRng rng(config.seed, 4 * std::uint64_t(lo));
    for (std::int64_t i = lo; i < hi; ++i) {
      const QuadratureShift arm1 =
          sample_displacement(config.sigma2_arm1, rng);
      const QuadratureShift arm2 =
          sample_displacement(config.sigma2_arm2, rng);

      double x_meas, y_meas;
      if (config.combine == CombineMode::SumArms) {
        // 50:50 beamsplitter: difference in position, sum in momentum
        x_meas = (arm1.u - arm2.u) * inv_root2;
        y_meas = (arm1.v + arm2.v) * inv_root2;
      } else {
        x_meas = arm1.u * inv_root2;
        y_meas = arm1.v * inv_root2;
      }

      const BinResult bx = logical_bin(x_meas, config.code);
      const BinResult by = logical_bin(y_meas, config.code);
      const int kx = bx.logical > kmax ? bx.logical - d : bx.logical;
      const int ky = by.logical > kmax ? by.logical - d : by.logical;
      ++tally.x_counts[std::size_t(kx - kmin)];
      ++tally.y_counts[std::size_t(ky - kmin)];

      const BellLabel lab = swap_update(0, 0, 0, 0, bx.logical, by.logical, d);
      ++tally.label_counts[std::size_t(lab.k) * d + lab.l];

      if (config.collect_fractionals) {
        res.x_frac[std::size_t(i)] = bx.fractional;
        res.y_frac[std::size_t(i)] = by.fractional;
      }
    }
  };

  const int workers = int(std::min<std::int64_t>(config.n_threads,
                                                 config.n_trials));
  if (workers == 1) {
    Tally tally(d);
    run_range(0, config.n_trials, tally);
    res.x_counts = std::move(tally.x_counts);
    res.y_counts = std::move(tally.y_counts);
    res.label_counts = std::move(tally.label_counts);
    return res;
  }

  std::vector<Tally> tallies(static_cast<std::size_t>(workers), Tally(d));
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(workers));
  const std::int64_t base = config.n_trials / workers;
  const std::int64_t extra = config.n_trials % workers;
  std::int64_t lo = 0;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t hi = lo + base + (w < extra ? 1 : 0);
    pool.emplace_back(run_range, lo, hi, std::ref(tallies[std::size_t(w)]));
    lo = hi;
  }
  for (auto& th : pool) th.join();

  Tally total(d);
  for (const auto& t : tallies) total.merge(t);
  res.x_counts = std::move(total.x_counts);
  res.y_counts = std::move(total.y_counts);
  res.label_counts = std::move(total.label_counts);
  return res;
}

}  // namespace gkplink
