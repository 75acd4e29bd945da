#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "gkplink/cavity_interface.hpp"
#include "gkplink/channel_model.hpp"
#include "gkplink/csum_protocol.hpp"
#include "gkplink/gkp_code.hpp"
#include "gkplink/qudit_algebra.hpp"
#include "gkplink/rate_engine.hpp"
#include "gkplink/swap_montecarlo.hpp"

namespace py = pybind11;

using namespace gkplink;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Mirrors the fidelity table the CLI emits, without exposing the dense
// coherence matrix across the boundary.
py::dict csum_fidelity_point(int n_qubits, Lattice lattice,
                             double cooperativity, double zeta_cavity,
                             double zeta_tap, double kappa, double gamma_m,
                             double tau, double sigma2, EntanglingGate gate) {
  const auto code = GkpCode::make(n_qubits, lattice);
  const auto sched = amplitude_schedule(code, gate, zeta_tap);
  std::vector<PulseSpec> pulses;
  pulses.reserve(std::size_t(n_qubits));
  for (int k = 0; k < n_qubits; ++k) {
    auto spec = PulseSpec::gaussian(tau);
    spec.alpha = sched.alphas[std::size_t(k)];
    pulses.push_back(std::move(spec));
  }
  const CavityParams params{cooperativity, zeta_cavity, kappa, gamma_m};
  const auto st = simulate_csum(sched, params, pulses);

  double g_min = 1.0, beta_err = 0.0;
  for (int m = 0; m < st.d; ++m) {
    beta_err = std::max(beta_err, std::abs(st.beta[std::size_t(m)] -
                                           st.target[std::size_t(m)]));
    for (int mp = m + 1; mp < st.d; ++mp)
      g_min = std::min(g_min, std::abs(st.g(m, mp)));
  }
  py::dict out;
  out["d"] = st.d;
  out["fidelity"] = csum_fidelity(st, sigma2);
  out["g_offdiag_min"] = g_min;
  out["beta_err_max"] = beta_err;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "GKP-qudit repeater link: rates, asymptotics, gate fidelity, "
            "and Monte Carlo swap statistics";

  py::enum_<Lattice>(m, "Lattice")
      .value("Square", Lattice::Square)
      .value("Hexagonal", Lattice::Hexagonal);
  py::enum_<AmpMode>(m, "AmpMode")
      .value("PreAmplify", AmpMode::PreAmplify)
      .value("CcAmplify", AmpMode::CcAmplify);
  py::enum_<CombineMode>(m, "CombineMode")
      .value("SingleArm", CombineMode::SingleArm)
      .value("SumArms", CombineMode::SumArms);
  py::enum_<EntanglingGate>(m, "EntanglingGate")
      .value("Csum", EntanglingGate::Csum)
      .value("Cphase", EntanglingGate::Cphase);
  py::enum_<RConvention>(m, "RConvention")
      .value("Conserving", RConvention::Conserving)
      .value("AsPublished", RConvention::AsPublished);

  py::class_<GkpCode>(m, "GkpCode")
      .def_static("make", &GkpCode::make, py::arg("n_qubits"),
                  py::arg("lattice") = Lattice::Square)
      .def_readonly("d", &GkpCode::d)
      .def_readonly("n_qubits", &GkpCode::n_qubits)
      .def_readonly("lattice", &GkpCode::lattice)
      .def("spacing", &GkpCode::spacing)
      .def("__repr__", [](const GkpCode& c) {
        return "GkpCode(d=" + std::to_string(c.d) + ", " +
               (c.lattice == Lattice::Square ? "Square" : "Hexagonal") + ")";
      });

  m.def("squeezing_db_to_variance", &squeezing_db_to_variance,
        py::arg("squeezing_db"));
  m.def("variance_to_squeezing_db", &variance_to_squeezing_db,
        py::arg("sigma2"));
  m.def("shift_index_min", &shift_index_min, py::arg("d"));
  m.def("shift_index_max", &shift_index_max, py::arg("d"));
  m.def("shift_distribution", &shift_distribution, py::arg("code"),
        py::arg("sigma2"), py::arg("j_max") = 20,
        "Logical shift probabilities ordered from shift_index_min(d)");
  m.def("transform_variance", &transform_variance, py::arg("sigma2"),
        py::arg("transmissivity"), py::arg("mode"));

  py::class_<TwirledBellState>(m, "TwirledBellState")
      .def_readonly("d", &TwirledBellState::d)
      .def_readonly("marginal", &TwirledBellState::marginal)
      .def("joint", &TwirledBellState::joint, py::arg("i1"), py::arg("i2"));
  m.def("twirled_bell", &twirled_bell, py::arg("code"), py::arg("sigma2_eff"),
        py::arg("j_max") = 20);
  m.def("hashing_rate", &hashing_rate, py::arg("state"));
  m.def("capacity", &capacity, py::arg("eta"),
        "Two-way assisted capacity of the pure-loss channel, ebits per use");

  py::class_<RatePoint>(m, "RatePoint")
      .def_readonly("n_qubits", &RatePoint::n_qubits)
      .def_readonly("d", &RatePoint::d)
      .def_readonly("lattice", &RatePoint::lattice)
      .def_readonly("amp", &RatePoint::amp)
      .def_readonly("combine", &RatePoint::combine)
      .def_readonly("half_loss_db", &RatePoint::half_loss_db)
      .def_readonly("squeezing_db", &RatePoint::squeezing_db)
      .def_readonly("sigma2_code", &RatePoint::sigma2_code)
      .def_readonly("sigma2_eff", &RatePoint::sigma2_eff)
      .def_readonly("rate", &RatePoint::rate)
      .def_readonly("q2_bound", &RatePoint::q2_bound)
      .def_readonly("capacity_full", &RatePoint::capacity_full);
  m.def("link_rate", &link_rate, py::arg("n_qubits"), py::arg("lattice"),
        py::arg("half_loss_db"), py::arg("squeezing_db"),
        py::arg("amp") = AmpMode::PreAmplify,
        py::arg("combine") = CombineMode::SingleArm, py::arg("j_max") = 20);

  py::class_<AsymptoticProbs>(m, "AsymptoticProbs")
      .def_readonly("p0", &AsymptoticProbs::p0)
      .def_readonly("p1", &AsymptoticProbs::p1);
  m.def("asymptotic_probs", &asymptotic_probs, py::arg("xi"));
  m.def("asymptotic_gap", &asymptotic_gap, py::arg("xi"), py::arg("lattice"));
  m.def("asymptotic_rate", &asymptotic_rate, py::arg("eps"), py::arg("xi"),
        py::arg("lattice"));
  py::class_<XiOptimum>(m, "XiOptimum")
      .def_readonly("lattice", &XiOptimum::lattice)
      .def_readonly("xi_opt", &XiOptimum::xi_opt)
      .def_readonly("gap", &XiOptimum::gap);
  m.def("optimize_xi", &optimize_xi, py::arg("lattice"),
        py::arg("tol") = 1e-6);

  m.def(
      "swap_update",
      [](int k1, int l1, int k2, int l2, int r, int s, int d) {
        const auto lbl = swap_update(k1, l1, k2, l2, r, s, d);
        return py::make_tuple(lbl.k, lbl.l);
      },
      py::arg("k1"), py::arg("l1"), py::arg("k2"), py::arg("l2"), py::arg("r"),
      py::arg("s"), py::arg("d"));
  m.def(
      "heralded_label",
      [](int x_logical, int y_logical, int d) {
        const auto lbl = heralded_label(x_logical, y_logical, d);
        return py::make_tuple(lbl.k, lbl.l);
      },
      py::arg("x_logical"), py::arg("y_logical"), py::arg("d"));

  py::class_<SwapResult>(m, "SwapResult")
      .def_readonly("d", &SwapResult::d)
      .def_readonly("n", &SwapResult::n)
      .def_readonly("sigma2_eff", &SwapResult::sigma2_eff)
      .def_readonly("x_counts", &SwapResult::x_counts)
      .def_readonly("y_counts", &SwapResult::y_counts)
      .def_readonly("label_counts", &SwapResult::label_counts)
      .def_readonly("x_frac", &SwapResult::x_frac)
      .def_readonly("y_frac", &SwapResult::y_frac);
  m.def(
      "run_swap_trials",
      [](const GkpCode& code, double sigma2_arm1, double sigma2_arm2,
         CombineMode combine, std::uint64_t seed, std::int64_t n_trials,
         int n_threads, bool collect_fractionals) {
        SwapTrialConfig cfg;
        cfg.code = code;
        cfg.sigma2_arm1 = sigma2_arm1;
        cfg.sigma2_arm2 = sigma2_arm2;
        cfg.combine = combine;
        cfg.seed = seed;
        cfg.n_trials = n_trials;
        cfg.n_threads = n_threads;
        cfg.collect_fractionals = collect_fractionals;
        return run_swap_trials(cfg);
      },
      py::arg("code"), py::arg("sigma2_arm1"), py::arg("sigma2_arm2") = 0.0,
      py::arg("combine") = CombineMode::SumArms, py::arg("seed") = 12345,
      py::arg("n_trials") = 100000, py::arg("n_threads") = 1,
      py::arg("collect_fractionals") = false,
      py::call_guard<py::gil_scoped_release>());

  py::class_<CavityParams>(m, "CavityParams")
      .def(py::init([](double cooperativity, double zeta, double kappa,
                       double gamma_m, double delta_c, double delta_a) {
             return CavityParams{cooperativity, zeta,    kappa,
                                 gamma_m,       delta_c, delta_a};
           }),
           py::arg("cooperativity"), py::arg("zeta"), py::arg("kappa") = kInf,
           py::arg("gamma_m") = 1.0, py::arg("delta_c") = 0.0,
           py::arg("delta_a") = 0.0)
      .def_readonly("cooperativity", &CavityParams::cooperativity)
      .def_readonly("zeta", &CavityParams::zeta)
      .def_readonly("kappa", &CavityParams::kappa)
      .def_readonly("gamma_m", &CavityParams::gamma_m);

  py::class_<ReflectionCoeffs>(m, "ReflectionCoeffs")
      .def_readonly("r", &ReflectionCoeffs::r)
      .def_readonly("l_c", &ReflectionCoeffs::l_c)
      .def_readonly("l_a", &ReflectionCoeffs::l_a);
  m.def("reflection_coeffs", &reflection_coeffs, py::arg("params"),
        py::arg("coupled"), py::arg("convention") = RConvention::Conserving);
  m.def(
      "pulse_length_check",
      [](int d, double kappa, double zeta, double tau, double margin) {
        const auto chk = pulse_length_check(d, kappa, zeta, tau, margin);
        return py::make_tuple(chk.threshold, chk.pass);
      },
      py::arg("d"), py::arg("kappa"), py::arg("zeta"), py::arg("tau"),
      py::arg("margin") = 10.0);

  m.def("csum_fidelity_point", &csum_fidelity_point, py::arg("n_qubits"),
        py::arg("lattice") = Lattice::Square,
        py::arg("cooperativity") = kInf, py::arg("zeta_cavity") = 1.0,
        py::arg("zeta_tap") = 0.5, py::arg("kappa") = kInf,
        py::arg("gamma_m") = 1.0, py::arg("tau") = 40.0,
        py::arg("sigma2") = 0.05,
        py::arg("gate") = EntanglingGate::Csum,
        "Gate fidelity and dephasing diagnostics for one cavity setting");
}
