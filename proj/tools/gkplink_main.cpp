#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gkplink/cavity_interface.hpp"
#include "gkplink/channel_model.hpp"
#include "gkplink/csum_protocol.hpp"
#include "gkplink/gkp_code.hpp"
#include "gkplink/rate_engine.hpp"
#include "gkplink/swap_montecarlo.hpp"

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct IoError {
  std::string what;
};

// ---------------------------------------------------------------- output

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    os << (c ? "," : "") << t.columns[c];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      if (const auto* i = std::get_if<std::int64_t>(&row[c]))
        os << *i;
      else if (const auto* d = std::get_if<double>(&row[c]))
        os << fmt_double(*d);
      else
        os << std::get<std::string>(row[c]);
    }
    os << '\n';
  }
}

void write_jsonl(const Table& t, std::ostream& os) {
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (const auto* i = std::get_if<std::int64_t>(&row[c]))
        obj[t.columns[c]] = *i;
      else if (const auto* d = std::get_if<double>(&row[c])) {
        // JSON has no infinities; keep them readable instead of null
        if (std::isfinite(*d))
          obj[t.columns[c]] = *d;
        else
          obj[t.columns[c]] = fmt_double(*d);
      } else {
        obj[t.columns[c]] = std::get<std::string>(row[c]);
      }
    }
    os << obj.dump() << '\n';
  }
}

void emit(const Table& t, const std::string& out_path,
          const std::string& format) {
  std::ostringstream body;
  if (format == "jsonl")
    write_jsonl(t, body);
  else
    write_csv(t, body);
  if (out_path.empty()) {
    std::cout << body.str() << std::flush;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw IoError{"cannot open output path: " + out_path};
  f << body.str();
  f.flush();
  if (!f) throw IoError{"failed while writing: " + out_path};
}

// ---------------------------------------------------------------- parsing

double parse_double(const std::string& s, bool allow_inf) {
  std::string t = s;
  t.erase(0, t.find_first_not_of(" \t"));
  t.erase(t.find_last_not_of(" \t") + 1);
  if (allow_inf && (t == "inf" || t == "INF" || t == "Inf")) return kInf;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || t.empty())
    throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

/* Grid grammar: "start:stop:step" (inclusive) or a comma list; "inf" is a
 * valid element where allow_inf is set. */
std::vector<double> parse_grid(const std::string& text, bool allow_inf) {
  std::vector<double> vals;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3)
      throw std::invalid_argument("range must be start:stop:step: '" + text +
                                  "'");
    const double start = parse_double(parts[0], false);
    const double stop = parse_double(parts[1], false);
    const double step = parse_double(parts[2], false);
    if (!(step > 0.0) || stop < start)
      throw std::invalid_argument("range needs step > 0 and stop >= start");
    const auto count =
        static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9));
    for (std::int64_t k = 0; k <= count; ++k)
      vals.push_back(start + double(k) * step);
  } else {
    for (const auto& piece : split(text, ','))
      vals.push_back(parse_double(piece, allow_inf));
  }
  if (vals.empty()) throw std::invalid_argument("empty grid: '" + text + "'");
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

std::vector<int> parse_int_list(const std::string& text, int lo, int hi,
                                const char* what) {
  std::vector<int> vals;
  for (const auto& piece : split(text, ',')) {
    const double v = parse_double(piece, false);
    const int i = int(v);
    if (double(i) != v || i < lo || i > hi)
      throw std::invalid_argument(std::string(what) + " must be an integer in [" +
                                  std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]: '" + piece + "'");
    vals.push_back(i);
  }
  if (vals.empty()) throw std::invalid_argument("empty list");
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

gkplink::Lattice to_lattice(const std::string& s) {
  return s == "hex" ? gkplink::Lattice::Hexagonal : gkplink::Lattice::Square;
}

gkplink::AmpMode to_amp(const std::string& s) {
  return s == "cc" ? gkplink::AmpMode::CcAmplify : gkplink::AmpMode::PreAmplify;
}

gkplink::CombineMode to_combine(const std::string& s) {
  return s == "sum" ? gkplink::CombineMode::SumArms
                    : gkplink::CombineMode::SingleArm;
}

void parallel_for(std::int64_t n, int threads,
                  const std::function<void(std::int64_t)>& fn) {
  const auto workers =
      int(std::min<std::int64_t>(std::max(threads, 1), n));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(workers));
  const std::int64_t base = n / workers, extra = n % workers;
  std::int64_t lo = 0;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t hi = lo + base + (w < extra ? 1 : 0);
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
    lo = hi;
  }
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------- rate-curve

struct RateArgs {
  std::string n_list = "1,2,3,4,5,6,7,8,9,10";
  std::string loss = "0:3:0.25";
  std::string squeeze = "5,10,inf";
  std::string lattice = "sq";
  std::string amp = "pre";
  std::string combine = "single";
  std::string out, format = "csv";
  int threads = 1;
};

int run_rate_curve(const RateArgs& a) {
  const auto ns = parse_int_list(a.n_list, 1, 12, "--n");
  const auto losses = parse_grid(a.loss, false);
  const auto squeezes = parse_grid(a.squeeze, true);
  for (double l : losses)
    if (l < 0) throw std::invalid_argument("loss must be >= 0 dB");
  for (double s : squeezes)
    if (s < 0) throw std::invalid_argument("squeezing must be >= 0 dB");

  struct Key {
    int n;
    double loss, squeeze;
  };
  std::vector<Key> keys;
  for (int n : ns)
    for (double l : losses)
      for (double s : squeezes) keys.push_back({n, l, s});

  std::vector<gkplink::RatePoint> pts(keys.size());
  parallel_for(std::int64_t(keys.size()), a.threads, [&](std::int64_t i) {
    const Key& k = keys[std::size_t(i)];
    pts[std::size_t(i)] =
        gkplink::link_rate(k.n, to_lattice(a.lattice), k.loss, k.squeeze,
                           to_amp(a.amp), to_combine(a.combine));
  });

  Table t;
  t.columns = {"n",           "d",          "lattice",  "amp",
               "combine",     "half_loss_db", "squeeze_db", "sigma2_code",
               "sigma2_eff",  "rate",       "q2_bound", "capacity_full"};
  for (const auto& p : pts)
    t.rows.push_back({std::int64_t(p.n_qubits), std::int64_t(p.d), a.lattice,
                      a.amp, a.combine, p.half_loss_db, p.squeezing_db,
                      p.sigma2_code, p.sigma2_eff, p.rate, p.q2_bound,
                      p.capacity_full});
  emit(t, a.out, a.format);
  return 0;
}

// ---------------------------------------------------------------- asymptote

struct AsymptoteArgs {
  std::string lattice;  // empty = both
  std::string eps = "";
  std::string out, format = "csv";
};

int run_asymptote(const AsymptoteArgs& a) {
  std::vector<std::string> lats;
  if (a.lattice.empty())
    lats = {"sq", "hex"};
  else
    lats = {a.lattice};

  std::vector<double> eps;
  if (a.eps.empty())
    for (int k = 0; k <= 12; ++k) eps.push_back(std::pow(10.0, -6.0 + 0.25 * k));
  else
    eps = parse_grid(a.eps, false);
  for (double e : eps)
    if (!(e > 0.0) || e >= 1.0)
      throw std::invalid_argument("eps must lie in (0, 1)");

  Table t;
  t.columns = {"lattice", "xi_opt", "gap", "eps", "i_lb", "q2", "separation"};
  for (const auto& lat : lats) {
    const auto opt = gkplink::optimize_xi(to_lattice(lat));
    for (double e : eps) {
      const double q2 = -std::log2(e);
      const double ilb = gkplink::asymptotic_rate(e, opt.xi_opt, opt.lattice);
      t.rows.push_back({lat, opt.xi_opt, opt.gap, e, ilb, q2, q2 - ilb});
    }
  }
  emit(t, a.out, a.format);
  return 0;
}

// ------------------------------------------------------------ csum-fidelity

struct CsumArgs {
  std::string n_list = "1";
  std::string coop = "100,1000,inf";
  std::string zcav = "0.95,0.99,1";
  std::string gate = "csum";
  std::string lattice = "sq";
  double zeta_tap = 0.5;
  double kappa = kInf;
  double gamma_m = 1.0;
  double tau = 40.0;
  double sigma2 = 0.05;
  std::string out, format = "csv";
  int threads = 1;
};

int run_csum_fidelity(const CsumArgs& a) {
  const auto ns = parse_int_list(a.n_list, 1, 10, "--n");
  const auto coops = parse_grid(a.coop, true);
  const auto zetas = parse_grid(a.zcav, false);
  for (double c : coops)
    if (!(c >= 0.0)) throw std::invalid_argument("cooperativity must be >= 0");
  for (double z : zetas)
    if (!(z >= 0.0) || z > 1.0)
      throw std::invalid_argument("cavity zeta must lie in [0, 1]");

  const auto gate = a.gate == "cphase" ? gkplink::EntanglingGate::Cphase
                                       : gkplink::EntanglingGate::Csum;

  struct Key {
    int n;
    double coop, zcav;
  };
  std::vector<Key> keys;
  for (int n : ns)
    for (double c : coops)
      for (double z : zetas) keys.push_back({n, c, z});

  struct Row {
    double fidelity, g_min, beta_err;
    int d;
  };
  std::vector<Row> rows(keys.size());
  parallel_for(std::int64_t(keys.size()), a.threads, [&](std::int64_t i) {
    const Key& k = keys[std::size_t(i)];
    const auto code = gkplink::GkpCode::make(k.n, to_lattice(a.lattice));
    const auto sched = gkplink::amplitude_schedule(code, gate, a.zeta_tap);
    std::vector<gkplink::PulseSpec> pulses;
    pulses.reserve(std::size_t(k.n));
    for (int p = 0; p < k.n; ++p) {
      auto spec = gkplink::PulseSpec::gaussian(a.tau);
      spec.alpha = sched.alphas[std::size_t(p)];
      pulses.push_back(std::move(spec));
    }
    const gkplink::CavityParams params{k.coop, k.zcav, a.kappa, a.gamma_m};
    const auto st = gkplink::simulate_csum(sched, params, pulses);

    Row r;
    r.d = st.d;
    r.fidelity = gkplink::csum_fidelity(st, a.sigma2);
    r.g_min = 1.0;
    r.beta_err = 0.0;
    for (int m = 0; m < st.d; ++m) {
      r.beta_err = std::max(
          r.beta_err, std::abs(st.beta[std::size_t(m)] - st.target[std::size_t(m)]));
      for (int mp = m + 1; mp < st.d; ++mp)
        r.g_min = std::min(r.g_min, std::abs(st.g(m, mp)));
    }
    rows[std::size_t(i)] = r;
  });

  Table t;
  t.columns = {"n",        "d",           "gate",     "lattice",
               "cooperativity", "zeta_cavity", "zeta_tap", "kappa",
               "gamma_m",  "tau",         "sigma2",   "fidelity",
               "g_offdiag_min", "beta_err_max"};
  for (std::size_t i = 0; i < keys.size(); ++i)
    t.rows.push_back({std::int64_t(keys[i].n), std::int64_t(rows[i].d), a.gate,
                      a.lattice, keys[i].coop, keys[i].zcav, a.zeta_tap,
                      a.kappa, a.gamma_m, a.tau, a.sigma2, rows[i].fidelity,
                      rows[i].g_min, rows[i].beta_err});
  emit(t, a.out, a.format);
  return 0;
}

// ------------------------------------------------------------------ swap-mc

struct SwapArgs {
  std::string n_list = "1";
  std::string loss = "0.5";
  std::string squeeze = "inf";
  std::string lattice = "sq";
  std::string amp = "pre";
  std::string combine = "sum";
  std::int64_t trials = 100000;
  std::uint64_t seed = 12345;
  int threads = 1;
  double expect_sigma2 = std::numeric_limits<double>::quiet_NaN();
  std::string out, format = "csv";
};

int run_swap_mc(const SwapArgs& a) {
  const auto ns = parse_int_list(a.n_list, 1, 12, "--n");
  const auto losses = parse_grid(a.loss, false);
  const auto squeezes = parse_grid(a.squeeze, true);
  for (double l : losses)
    if (l < 0) throw std::invalid_argument("loss must be >= 0 dB");
  for (double s : squeezes)
    if (s < 0) throw std::invalid_argument("squeezing must be >= 0 dB");
  if (a.trials < 1) throw std::invalid_argument("--trials must be >= 1");

  Table t;
  t.columns = {"n",          "d",         "lattice", "amp",
               "combine",    "half_loss_db", "squeeze_db", "sigma2_eff",
               "trials",     "seed",      "axis",    "k",
               "count",      "empirical", "analytic", "z"};

  bool violation = false;
  std::uint64_t point = 0;
  for (int n : ns)
    for (double l : losses)
      for (double s : squeezes) {
        const auto code = gkplink::GkpCode::make(n, to_lattice(a.lattice));
        const double s2code = gkplink::squeezing_db_to_variance(s);
        const double trans = std::pow(10.0, -l / 10.0);
        const double arm =
            gkplink::transform_variance(s2code, trans, to_amp(a.amp));

        gkplink::SwapTrialConfig cfg;
        cfg.code = code;
        cfg.sigma2_arm1 = arm;
        cfg.sigma2_arm2 = arm;
        cfg.combine = to_combine(a.combine);
        cfg.seed = a.seed + point;  // decorrelate grid points, stay reproducible
        cfg.n_trials = a.trials;
        cfg.n_threads = a.threads;
        ++point;
        const auto res = gkplink::run_swap_trials(cfg);

        const double model_s2 =
            std::isnan(a.expect_sigma2) ? res.sigma2_eff : a.expect_sigma2;
        const auto model = gkplink::shift_distribution(code, model_s2);
        const int kmin = gkplink::shift_index_min(code.d);

        char seed_buf[24];
        std::snprintf(seed_buf, sizeof seed_buf, "%" PRIu64, cfg.seed);
        const std::string seed_str = seed_buf;

        const auto emit_axis = [&](const char* axis,
                                   const std::vector<std::int64_t>& counts) {
          for (int i = 0; i < code.d; ++i) {
            const double p = model[std::size_t(i)];
            const auto c = counts[std::size_t(i)];
            const double mean = double(res.n) * p;
            const double var = mean * (1.0 - p);
            double z;
            if (var > 0.0)
              z = (double(c) - mean) / std::sqrt(var);
            else
              z = double(c) == mean ? 0.0 : kInf;
            if (std::abs(z) > 5.0) violation = true;
            t.rows.push_back({std::int64_t(n), std::int64_t(code.d), a.lattice,
                              a.amp, a.combine, l, s, res.sigma2_eff,
                              std::int64_t(res.n), seed_str, std::string(axis),
                              std::int64_t(kmin + i), c,
                              double(c) / double(res.n), p, z});
          }
        };
        emit_axis("x", res.x_counts);
        emit_axis("y", res.y_counts);
      }

  emit(t, a.out, a.format);
  return violation ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gkplink: entanglement-link rate sweeps, asymptotic optimization,\n"
      "gate-fidelity reports, and Monte Carlo validation for GKP-qudit\n"
      "repeater links. Emits plot-ready CSV or JSON-lines tables."};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Read option defaults from a TOML-like file; command-line "
                 "flags override file values");
  app.get_config_formatter_base()->comment('#');

  RateArgs rate;
  auto* rate_cmd = app.add_subcommand(
      "rate-curve", "Hashing-rate sweep over (N, loss, squeezing)");
  rate_cmd->fallthrough();  // lets --config trail the subcommand name
  rate_cmd->add_option("--n", rate.n_list, "Comma list of qubits per qudit");
  rate_cmd->add_option("--loss-db", rate.loss,
                       "Half-channel loss grid, start:stop:step or list");
  rate_cmd->add_option("--squeeze-db", rate.squeeze,
                       "Squeezing list in dB; 'inf' = exact codes");
  rate_cmd->add_option("--lattice", rate.lattice)
      ->check(CLI::IsMember({"sq", "hex"}));
  rate_cmd->add_option("--amp", rate.amp)->check(CLI::IsMember({"pre", "cc"}));
  rate_cmd->add_option("--combine", rate.combine)
      ->check(CLI::IsMember({"single", "sum"}));
  rate_cmd->add_option("--out", rate.out, "Output path (default stdout)");
  rate_cmd->add_option("--format", rate.format)
      ->check(CLI::IsMember({"csv", "jsonl"}));
  rate_cmd->add_option("--threads", rate.threads)->check(CLI::Range(1, 256));

  AsymptoteArgs asym;
  auto* asym_cmd = app.add_subcommand(
      "asymptote", "Low-loss gap optimization and I_LB(eps) curve");
  asym_cmd->fallthrough();
  asym_cmd->add_option("--lattice", asym.lattice)
      ->check(CLI::IsMember({"sq", "hex"}));
  asym_cmd->add_option("--eps", asym.eps,
                       "Loss grid for the curve (default 1e-6..1e-3)");
  asym_cmd->add_option("--out", asym.out, "Output path (default stdout)");
  asym_cmd->add_option("--format", asym.format)
      ->check(CLI::IsMember({"csv", "jsonl"}));

  CsumArgs csum;
  auto* csum_cmd = app.add_subcommand(
      "csum-fidelity", "Entangling-gate fidelity versus cavity parameters");
  csum_cmd->fallthrough();
  csum_cmd->add_option("--n", csum.n_list, "Comma list of qubits per qudit");
  csum_cmd->add_option("--cooperativity", csum.coop,
                       "Cooperativity list; 'inf' = ideal memory");
  csum_cmd->add_option("--zeta,--zeta-cavity", csum.zcav,
                       "Cavity coupling ratio list, 1 = lossless");
  csum_cmd->add_option("--zeta-tap", csum.zeta_tap,
                       "Bus tap ratio absorbed by the pulse schedule");
  csum_cmd->add_option("--kappa", csum.kappa, "Cavity linewidth (rad/s)");
  csum_cmd->add_option("--gamma-m", csum.gamma_m,
                       "Memory transition linewidth (rad/s)");
  csum_cmd->add_option("--tau", csum.tau, "Pulse duration (s)");
  csum_cmd->add_option("--sigma2", csum.sigma2,
                       "Peak variance used by the overlap fidelity");
  csum_cmd->add_option("--gate", csum.gate)
      ->check(CLI::IsMember({"csum", "cphase"}));
  csum_cmd->add_option("--lattice", csum.lattice)
      ->check(CLI::IsMember({"sq", "hex"}));
  csum_cmd->add_option("--out", csum.out, "Output path (default stdout)");
  csum_cmd->add_option("--format", csum.format)
      ->check(CLI::IsMember({"csv", "jsonl"}));
  csum_cmd->add_option("--threads", csum.threads)->check(CLI::Range(1, 256));

  SwapArgs swap;
  auto* swap_cmd = app.add_subcommand(
      "swap-mc", "Monte Carlo shift statistics against the analytic model");
  swap_cmd->fallthrough();
  swap_cmd->add_option("--n", swap.n_list, "Comma list of qubits per qudit");
  swap_cmd->add_option("--loss-db", swap.loss,
                       "Half-channel loss grid, start:stop:step or list");
  swap_cmd->add_option("--squeeze-db", swap.squeeze,
                       "Squeezing list in dB; 'inf' = exact codes");
  swap_cmd->add_option("--lattice", swap.lattice)
      ->check(CLI::IsMember({"sq", "hex"}));
  swap_cmd->add_option("--amp", swap.amp)->check(CLI::IsMember({"pre", "cc"}));
  swap_cmd->add_option("--combine", swap.combine)
      ->check(CLI::IsMember({"single", "sum"}));
  swap_cmd->add_option("--trials", swap.trials, "Trials per grid point");
  swap_cmd->add_option("--seed", swap.seed, "Master seed (u64)");
  swap_cmd->add_option("--threads", swap.threads)->check(CLI::Range(1, 256));
  swap_cmd->add_option("--expect-sigma2", swap.expect_sigma2,
                       "Override the analytic reference variance "
                       "(validator self-checks)");
  swap_cmd->add_option("--out", swap.out, "Output path (default stdout)");
  swap_cmd->add_option("--format", swap.format)
      ->check(CLI::IsMember({"csv", "jsonl"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::FileError& e) {
    app.exit(e);
    return 3;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*rate_cmd) return run_rate_curve(rate);
    if (*asym_cmd) return run_asymptote(asym);
    if (*csum_cmd) return run_csum_fidelity(csum);
    return run_swap_mc(swap);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
}
