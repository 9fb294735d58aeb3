// Python bindings for the core operations: operator construction, spectra,
// Wigner transforms, coherent states, displacement operators and the
// verification suites.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gklandau/displacement.hpp"
#include "gklandau/gkcs.hpp"
#include "gklandau/hamiltonians.hpp"
#include "gklandau/suites.hpp"
#include "gklandau/wigner.hpp"

namespace py = pybind11;
using gkl::cplx;

namespace {

gkl::GridSpec make_spec(double half_range, int points) {
  return {half_range, points};
}

py::dict entry_to_dict(const gkl::ReportEntry& e) {
  py::dict d;
  d["check_id"] = e.check_id;
  py::dict inputs;
  for (const auto& [k, v] : e.inputs) inputs[py::str(k)] = v;
  d["inputs"] = inputs;
  d["computed"] = e.computed.imag() == 0.0 ? py::cast(e.computed.real())
                                           : py::cast(e.computed);
  if (e.expected_is_oracle)
    d["expected"] = "oracle";
  else if (e.expected)
    d["expected"] = e.expected->imag() == 0.0 ? py::cast(e.expected->real())
                                              : py::cast(*e.expected);
  else
    d["expected"] = py::none();
  d["tol"] = e.tol;
  d["pass"] = e.pass;
  d["errored"] = e.errored;
  if (e.errored) d["error"] = e.error;
  d["runtime_ms"] = e.runtime_ms;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Landau-level Hamiltonians, Wigner transforms and Gazeau-Klauder "
            "coherent states on truncated bases";

  py::register_exception<gkl::ParameterError>(m, "ParameterError",
                                              PyExc_ValueError);
  py::register_exception<gkl::SpaceMismatchError>(m, "SpaceMismatchError",
                                                  PyExc_ValueError);
  py::register_exception<gkl::NumericError>(m, "NumericError",
                                            PyExc_RuntimeError);
  py::register_exception<gkl::ConvergenceError>(m, "ConvergenceError",
                                                PyExc_RuntimeError);
  py::register_exception<gkl::TruncationError>(m, "TruncationError",
                                               PyExc_ValueError);
  py::register_exception<gkl::ResolutionError>(m, "ResolutionError",
                                               PyExc_RuntimeError);

  py::class_<gkl::ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def(py::init([](double mass, double omega_c, double lambda,
                       double hbar, double beta) {
             return gkl::ModelParams{mass, omega_c, lambda, hbar, beta};
           }),
           py::arg("mass") = 1.0, py::arg("omega_c") = 1.0,
           py::arg("lambda_") = 0.0, py::arg("hbar") = 1.0,
           py::arg("beta") = 1.0)
      .def_readwrite("mass", &gkl::ModelParams::mass)
      .def_readwrite("omega_c", &gkl::ModelParams::omega_c)
      .def_readwrite("lambda_", &gkl::ModelParams::lambda)
      .def_readwrite("hbar", &gkl::ModelParams::hbar)
      .def_readwrite("beta", &gkl::ModelParams::beta)
      .def("lambda_bar", &gkl::ModelParams::lambda_bar);

  py::class_<gkl::GkCsLabel>(m, "GkCsLabel")
      .def(py::init([](double J, double gamma, double Jp, double gammap,
                       int l, double K1, double theta1, double beta) {
             return gkl::GkCsLabel{J, gamma, Jp, gammap, l, K1, theta1, beta};
           }),
           py::arg("J") = 0.0, py::arg("gamma") = 0.0, py::arg("Jp") = 0.0,
           py::arg("gammap") = 0.0, py::arg("l") = 0, py::arg("K1") = 1.0,
           py::arg("theta1") = 0.0, py::arg("beta") = 1.0)
      .def_readwrite("J", &gkl::GkCsLabel::J)
      .def_readwrite("gamma", &gkl::GkCsLabel::gamma)
      .def_readwrite("Jp", &gkl::GkCsLabel::Jp)
      .def_readwrite("gammap", &gkl::GkCsLabel::gammap)
      .def_readwrite("l", &gkl::GkCsLabel::l)
      .def_readwrite("K1", &gkl::GkCsLabel::K1)
      .def_readwrite("theta1", &gkl::GkCsLabel::theta1)
      .def_readwrite("beta", &gkl::GkCsLabel::beta);

  // numerics
  m.def("erfc", &gkl::erfc, py::arg("x"));
  m.def("erf", &gkl::erf, py::arg("x"));
  m.def(
      "gauss_laguerre",
      [](int order) {
        const gkl::QuadratureRule r = gkl::gauss_laguerre(order);
        return py::make_tuple(r.nodes, r.weights);
      },
      py::arg("order"), "Nodes and weights for the weight e^{-J} on (0,inf)");

  // fock algebra
  m.def(
      "ladder",
      [](int dim, double scale) {
        auto [low, raise] = gkl::ladder(gkl::FockSpace{dim}, scale);
        return py::make_tuple(low.mat, raise.mat);
      },
      py::arg("dim"), py::arg("scale") = 1.0);
  m.def(
      "commutator",
      [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
        if (a.rows() != b.rows() || a.cols() != b.cols())
          throw gkl::SpaceMismatchError("operators live on different spaces");
        return Eigen::MatrixXcd(a * b - b * a);
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "quadratures",
      [](int dim, const gkl::ModelParams& params, const std::string& mode) {
        gkl::QuadratureMode qm;
        if (mode == "q1p1") qm = gkl::QuadratureMode::q1p1;
        else if (mode == "q1p1_tilde") qm = gkl::QuadratureMode::q1p1_tilde;
        else if (mode == "q2p2") qm = gkl::QuadratureMode::q2p2;
        else if (mode == "q2p2_tilde") qm = gkl::QuadratureMode::q2p2_tilde;
        else throw gkl::ParameterError("unknown quadrature mode: " + mode);
        auto [q, p] = gkl::quadratures(gkl::FockSpace{dim}, params, qm);
        return py::make_tuple(q.mat, p.mat);
      },
      py::arg("dim"), py::arg("params") = gkl::ModelParams{},
      py::arg("mode") = "q1p1");
  m.def(
      "helicity_ops",
      [](int dim) {
        const gkl::HelicityOps ops =
            gkl::helicity_ops(gkl::FockSpace{dim}, gkl::FockSpace{dim});
        py::dict d;
        d["a_plus"] = ops.a_plus.mat;
        d["a_plus_star"] = ops.a_plus_star.mat;
        d["a_minus"] = ops.a_minus.mat;
        d["a_minus_star"] = ops.a_minus_star.mat;
        d["at_plus"] = ops.at_plus.mat;
        d["at_plus_star"] = ops.at_plus_star.mat;
        d["at_minus"] = ops.at_minus.mat;
        d["at_minus_star"] = ops.at_minus_star.mat;
        return d;
      },
      py::arg("dim"));
  m.def(
      "matrix_exponential",
      [](const Eigen::MatrixXcd& a) { return gkl::matrix_exponential(a); },
      py::arg("a"));

  // hamiltonians
  auto bundle_to_dict = [](const gkl::HamiltonianBundle& b) {
    py::dict d;
    d["total"] = b.total.mat;
    d["oscillator_part"] = b.oscillator_part.mat;
    d["linear_part"] = b.linear_part.mat;
    return d;
  };
  m.def(
      "build_h1",
      [bundle_to_dict](const gkl::ModelParams& params, int n_b, int n_d) {
        return bundle_to_dict(gkl::build_h1(params, n_b, n_d));
      },
      py::arg("params"), py::arg("n_b"), py::arg("n_d"));
  m.def(
      "build_h2",
      [bundle_to_dict](const gkl::ModelParams& params, int n_b, int n_d) {
        return bundle_to_dict(gkl::build_h2(params, n_b, n_d));
      },
      py::arg("params"), py::arg("n_b"), py::arg("n_d"));
  m.def(
      "spectrum_h1",
      [](int n, double alpha, const gkl::ModelParams& params) {
        return gkl::spectrum_h1(n, alpha, params).energy;
      },
      py::arg("n"), py::arg("alpha"), py::arg("params"));
  m.def(
      "shifted_spectrum",
      [](int n, double alpha, const gkl::ModelParams& params) {
        const gkl::ShiftedSpectrum s = gkl::shifted_spectrum(n, alpha, params);
        return py::make_tuple(s.e_n, s.e_alpha);
      },
      py::arg("n"), py::arg("alpha"), py::arg("params"));
  m.def(
      "helicity_hamiltonians",
      [](const gkl::ModelParams& params, int dim) {
        const gkl::HelicityHamiltonians hh = gkl::helicity_hamiltonians(
            params, gkl::FockSpace{dim}, gkl::FockSpace{dim});
        py::dict d;
        d["h_plus"] = hh.h_plus.mat;
        d["h_minus"] = hh.h_minus.mat;
        d["ht_plus"] = hh.ht_plus.mat;
        d["ht_minus"] = hh.ht_minus.mat;
        return d;
      },
      py::arg("params"), py::arg("dim"));
  m.def(
      "tensor_decompose_h",
      [](const gkl::ModelParams& params, int dim) {
        const gkl::TensorDecomposition td =
            gkl::tensor_decompose_h(params, dim);
        py::dict d;
        d["h_d"] = td.h_d.mat;
        d["hc_slope"] = td.hc_slope;
        d["hc_offset"] = td.hc_offset;
        return d;
      },
      py::arg("params"), py::arg("dim"));
  m.def("fd_oscillator_levels", &gkl::fd_oscillator_levels, py::arg("count"),
        py::arg("half_width") = 7.0, py::arg("step") = 0.004);

  // wigner
  m.def("hermite_fn", &gkl::hermite_fn, py::arg("n"), py::arg("xi"));
  m.def(
      "wigner_dyad",
      [](int n, int l, double half_range, int points) {
        const gkl::PhaseSpaceGrid g =
            gkl::wigner_dyad(n, l, make_spec(half_range, points));
        std::vector<double> xs(points);
        for (int i = 0; i < points; ++i) xs[i] = g.x(i);
        return py::make_tuple(xs, xs, g.values);
      },
      py::arg("n"), py::arg("l"), py::arg("half_range") = 8.0,
      py::arg("points") = 161,
      "Returns (xs, ys, values) with values indexed [iy, ix]");
  m.def(
      "hs_gram",
      [](const std::vector<std::pair<int, int>>& pairs, double half_range,
         int points) {
        return gkl::hs_gram(pairs, make_spec(half_range, points));
      },
      py::arg("pairs"), py::arg("half_range") = 8.0, py::arg("points") = 161);
  m.def(
      "inverse_wigner",
      [](const Eigen::MatrixXcd& values, double half_range, int points,
         int dim) {
        if (values.rows() != points || values.cols() != points)
          throw gkl::ParameterError("field shape does not match the grid");
        gkl::PhaseSpaceGrid grid{make_spec(half_range, points), values};
        return gkl::inverse_wigner(grid, dim).mat;
      },
      py::arg("values"), py::arg("half_range"), py::arg("points"),
      py::arg("dim"));
  m.def(
      "u_matrix_element",
      [](int mm, int k, double x, double y) {
        return gkl::u_matrix_element(mm, k, x, y);
      },
      py::arg("m"), py::arg("k"), py::arg("x"), py::arg("y"));

  // gkcs
  m.def(
      "discrete_norm",
      [](double J, double Jp, int n_max) {
        const gkl::DiscreteNorm dn = gkl::discrete_norm(J, Jp, n_max);
        py::dict d;
        d["n_j_sq"] = dn.n_j_sq;
        d["n_jp_sq"] = dn.n_jp_sq;
        d["truncated_sum_j"] = dn.truncated_sum_j;
        d["truncated_sum_jp"] = dn.truncated_sum_jp;
        return d;
      },
      py::arg("J"), py::arg("Jp"), py::arg("n_max") = 40);
  m.def(
      "continuous_norm",
      [](double K1, double beta) {
        const gkl::ContinuousNorm cn = gkl::continuous_norm(K1, beta);
        py::dict d;
        d["general_form"] = cn.general_form;
        d["paper_form"] = cn.paper_form;
        d["oracle"] = cn.oracle;
        d["oracle_error"] = cn.oracle_error;
        d["general_matches"] = cn.general_matches;
        d["paper_matches"] = cn.paper_matches;
        return d;
      },
      py::arg("K1"), py::arg("beta"));
  m.def(
      "cs_coefficients",
      [](const gkl::GkCsLabel& label, int n_max) {
        const gkl::CompositeCs cs = gkl::build_cs(label, n_max);
        py::dict d;
        d["coeffs"] = Eigen::VectorXcd(cs.discrete.coeffs);
        d["tail_bound"] = cs.discrete.tail_bound;
        d["continuous_norm_sq"] = cs.continuous.norm_sq_adaptive();
        return d;
      },
      py::arg("label"), py::arg("n_max") = 40);
  m.def(
      "cs_overlap",
      [](const gkl::GkCsLabel& a, const gkl::GkCsLabel& b, int n_max) {
        return gkl::cs_overlap(gkl::build_cs(a, n_max),
                               gkl::build_cs(b, n_max));
      },
      py::arg("a"), py::arg("b"), py::arg("n_max") = 40);
  m.def("family_norm_sq", &gkl::family_norm_sq, py::arg("label"),
        py::arg("n_max") = 40, py::arg("l_max") = 60);
  m.def("evolve", &gkl::evolve, py::arg("label"), py::arg("t"),
        py::arg("params"));
  m.def(
      "evolution_check",
      [](const gkl::GkCsLabel& label, double t, const gkl::ModelParams& params,
         int n_max) {
        const gkl::EvolutionCheck ec =
            gkl::evolution_check(label, t, params, n_max);
        return py::make_tuple(ec.norm_defect, ec.fidelity_deficit);
      },
      py::arg("label"), py::arg("t"), py::arg("params"),
      py::arg("n_max") = 40);
  m.def("action_identity_discrete", &gkl::action_identity_discrete,
        py::arg("label"), py::arg("params"), py::arg("n_max") = 40,
        py::arg("l_max") = 60);
  m.def("action_continuous", &gkl::action_continuous, py::arg("K1"),
        py::arg("beta"));
  m.def("invert_action", &gkl::invert_action, py::arg("target"),
        py::arg("beta"));
  m.def("sigma_weight", &gkl::sigma_weight, py::arg("K1"), py::arg("beta"));
  m.def(
      "resolution_of_identity_check",
      [](int n_max, int l, double e_max, double beta, int gl_order,
         int e_samples) {
        const gkl::RoiDefects d = gkl::resolution_of_identity_check(
            n_max, l, e_max, beta, gl_order, e_samples);
        return py::make_tuple(d.discrete, d.continuous);
      },
      py::arg("n_max") = 20, py::arg("l") = 0, py::arg("e_max") = 2.0,
      py::arg("beta") = 1.0, py::arg("gl_order") = 64,
      py::arg("e_samples") = 9);

  // displacement
  m.def(
      "displacement_u",
      [](cplx z, int dim) { return gkl::displacement_u(z,
                                                       gkl::FockSpace{dim}).mat; },
      py::arg("z"), py::arg("dim"));
  m.def(
      "displacement_qp",
      [](double q, double p, int dim) {
        return gkl::displacement_qp(q, p, gkl::FockSpace{dim}).mat;
      },
      py::arg("q"), py::arg("p"), py::arg("dim"));
  m.def(
      "bch_defect",
      [](cplx z, int dim, int interior_cut) {
        return gkl::bch_defect(z, gkl::FockSpace{dim}, interior_cut);
      },
      py::arg("z"), py::arg("dim"), py::arg("interior_cut"));
  m.def(
      "two_mode_cs",
      [](cplx z, cplx zp, int n1, int n2) {
        const gkl::TwoModeCs cs =
            gkl::two_mode_cs(z, zp, gkl::FockSpace{n1}, gkl::FockSpace{n2});
        Eigen::MatrixXcd out(n1, n2);
        for (int a = 0; a < n1; ++a)
          for (int b = 0; b < n2; ++b) out(a, b) = cs.amplitude(a, b);
        return out;
      },
      py::arg("z"), py::arg("zp"), py::arg("n1") = 24, py::arg("n2") = 24);
  m.def("two_mode_closed_amplitude", &gkl::two_mode_closed_amplitude,
        py::arg("z"), py::arg("zp"), py::arg("n"), py::arg("l"));
  m.def("gk_relabel", &gkl::gk_relabel, py::arg("J"), py::arg("gamma"),
        py::arg("Jp"), py::arg("gammap"));
  m.def(
      "infinitesimal_displacement",
      [](const std::vector<cplx>& samples, double epsilon, double step) {
        return gkl::infinitesimal_displacement(samples, epsilon, step);
      },
      py::arg("samples"), py::arg("epsilon"), py::arg("step"));

  // verification suites
  m.def(
      "run_suite",
      [](const std::string& name, int dim_single, int dim_two,
         int wigner_points, int wigner_max_index) {
        gkl::RunConfig cfg;
        cfg.dim_single = dim_single;
        cfg.dim_two = dim_two;
        cfg.wigner_points = wigner_points;
        cfg.wigner_max_index = wigner_max_index;
        py::list out;
        for (const auto& e : gkl::run_suite(name, cfg))
          out.append(entry_to_dict(e));
        return out;
      },
      py::arg("name"), py::arg("dim_single") = 40, py::arg("dim_two") = 24,
      py::arg("wigner_points") = 121, py::arg("wigner_max_index") = 2);
}
