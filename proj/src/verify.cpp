#include <algorithm>
#include <chrono>
#include <cmath>

#include "gklandau/displacement.hpp"
#include "gklandau/gkcs.hpp"
#include "gklandau/hamiltonians.hpp"
#include "gklandau/suites.hpp"
#include "gklandau/wigner.hpp"

namespace gkl {

namespace {

template <typename Fn>
void run_check(std::vector<ReportEntry>& out, const std::string& id, Fn&& fn) {
  ReportEntry e;
  e.check_id = id;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    fn(e);
  } catch (const std::exception& ex) {
    e.errored = true;
    e.pass = false;
    e.error = ex.what();
  }
  e.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  out.push_back(std::move(e));
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// Smallest distance between target and any eigenvalue of a Hermitian matrix.
double eigen_distance(const Eigen::MatrixXcd& m, double target) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m,
                                                     Eigen::EigenvaluesOnly);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    best = std::min(best, std::abs(es.eigenvalues()(i) - target));
  return best;
}

}  // namespace

std::vector<ReportEntry> algebra_suite(const RunConfig& cfg) {
  std::vector<ReportEntry> out;
  const ModelParams& pr = cfg.params;
  const int n = cfg.dim_single;
  const double s2 = 2.0 * pr.mass * pr.hbar * pr.omega_c;

  run_check(out, "ladder_commutator_scaled", [&](ReportEntry& e) {
    auto [low, raise] = ladder(FockSpace{n}, std::sqrt(s2));
    e.add_input("dim", n);
    e.add_input("scale_sq", s2);
    const double defect =
        max_abs_interior_vs_identity(commutator(low, raise), s2);
    e.finish(defect, 0.0, cfg.tol(1e-10));
  });

  run_check(out, "ladder_truncation_law", [&](ReportEntry& e) {
    auto [low, raise] = ladder(FockSpace{n}, std::sqrt(s2));
    e.add_input("dim", n);
    const cplx corner = commutator(low, raise).mat(n - 1, n - 1);
    e.finish(corner, s2 * (1.0 - n), cfg.tol(1e-9));
  });

  run_check(out, "number_operator_diagonal", [&](ReportEntry& e) {
    auto [low, raise] = ladder(FockSpace{8}, 1.0);
    Eigen::MatrixXcd num = (raise * low).mat;
    double defect = 0.0;
    for (int k = 0; k < 8; ++k) defect = std::max(defect, std::abs(num(k, k) - cplx(k)));
    num.diagonal().setZero();
    defect = std::max(defect, max_abs(num));
    e.finish(defect, 0.0, cfg.tol(1e-12));
  });

  run_check(out, "commutator_antisymmetry", [&](ReportEntry& e) {
    auto [low, raise] = ladder(FockSpace{10}, 1.3);
    e.finish(max_abs(commutator(raise, raise).mat), 0.0, cfg.tol(1e-14));
  });

  run_check(out, "quadrature_commutator", [&](ReportEntry& e) {
    auto [q, p] = quadratures(FockSpace{n}, pr, QuadratureMode::q1p1);
    e.add_input("dim", n);
    const double defect = max_abs_interior_vs_identity(
        commutator(q, p), cplx{0.0, s2});
    e.finish(defect, 0.0, cfg.tol(1e-10));
  });

  run_check(out, "quadrature_hermitian", [&](ReportEntry& e) {
    auto [q, p] = quadratures(FockSpace{n}, pr, QuadratureMode::q2p2);
    const double defect = std::max(max_abs(q.mat - q.mat.adjoint()),
                                   max_abs(p.mat - p.mat.adjoint()));
    e.finish(defect, 0.0, cfg.tol(1e-12));
  });

  run_check(out, "quadrature_vacuum_variance", [&](ReportEntry& e) {
    auto [q, p] = quadratures(FockSpace{12}, pr, QuadratureMode::q1p1);
    e.finish((q * q).mat(0, 0), 0.5 * s2, cfg.tol(1e-12));
  });

  // Commutation identities do not sharpen with dimension; a moderate size
  // keeps the dense products quick.
  const int hdim = std::min(cfg.dim_two, 16);
  const HelicityOps ops = helicity_ops(FockSpace{hdim}, FockSpace{hdim});

  run_check(out, "helicity_comm_plus", [&](ReportEntry& e) {
    const double defect = max_abs_interior_vs_identity(
        commutator(ops.a_plus, ops.a_plus_star), 2.0);
    e.finish(defect, 0.0, cfg.tol(1e-10));
  });

  run_check(out, "helicity_comm_minus", [&](ReportEntry& e) {
    const double defect = max_abs_interior_vs_identity(
        commutator(ops.a_minus, ops.a_minus_star), 2.0);
    e.finish(defect, 0.0, cfg.tol(1e-10));
  });

  run_check(out, "helicity_comm_tilde", [&](ReportEntry& e) {
    const double defect = std::max(
        max_abs_interior_vs_identity(
            commutator(ops.at_plus, ops.at_plus_star), 2.0),
        max_abs_interior_vs_identity(
            commutator(ops.at_minus, ops.at_minus_star), 2.0));
    e.finish(defect, 0.0, cfg.tol(1e-10));
  });

  run_check(out, "helicity_cross_sector", [&](ReportEntry& e) {
    const OperatorMatrix* plus[] = {&ops.a_plus, &ops.a_plus_star,
                                    &ops.at_plus, &ops.at_plus_star};
    const OperatorMatrix* minus[] = {&ops.a_minus, &ops.a_minus_star,
                                     &ops.at_minus, &ops.at_minus_star};
    double defect = 0.0;
    for (const auto* x : plus)
      for (const auto* y : minus)
        defect = std::max(defect, max_abs_interior(commutator(*x, *y)));
    e.finish(defect, 0.0, cfg.tol(1e-10));
  });

  run_check(out, "helicity_quadrature_comm", [&](ReportEntry& e) {
    const double defect = std::max(
        max_abs_interior_vs_identity(commutator(ops.q_plus, ops.p_plus),
                                     cplx{0.0, 2.0}),
        max_abs_interior_vs_identity(commutator(ops.q_minus, ops.p_minus),
                                     cplx{0.0, 2.0}));
    e.finish(defect, 0.0, cfg.tol(1e-10));
  });

  run_check(out, "helicity_vacuum_annihilation", [&](ReportEntry& e) {
    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(ops.at_plus.dim());
    vac(0) = 1.0;
    const double defect = std::max((ops.at_plus.mat * vac).norm(),
                                   (ops.a_minus.mat * vac).norm());
    e.finish(defect, 0.0, cfg.tol(1e-12));
  });

  run_check(out, "expm_identity", [&](ReportEntry& e) {
    const OperatorMatrix z = OperatorMatrix::zero({12});
    const Eigen::MatrixXcd ex = matrix_exponential(z).mat;
    e.finish(max_abs(ex - Eigen::MatrixXcd::Identity(12, 12)), 0.0,
             cfg.tol(1e-13));
  });

  run_check(out, "expm_diagonal_phases", [&](ReportEntry& e) {
    const double theta = 0.3;
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
    for (int k = 0; k < 3; ++k) d(k, k) = cplx{0.0, theta * k};
    const Eigen::MatrixXcd ex = matrix_exponential(d);
    double defect = 0.0;
    for (int k = 0; k < 3; ++k)
      defect = std::max(defect, std::abs(ex(k, k) - std::polar(1.0, theta * k)));
    e.finish(defect, 0.0, cfg.tol(1e-13));
  });

  run_check(out, "expm_skew_unitary", [&](ReportEntry& e) {
    auto [low, raise] = ladder(FockSpace{n}, 1.0);
    const cplx z{0.9, -0.7};
    OperatorMatrix gen{z * raise.mat - std::conj(z) * low.mat,
                       low.factor_dims};
    const OperatorMatrix u = matrix_exponential(gen);
    Eigen::MatrixXcd defect = u.mat.adjoint() * u.mat;
    defect -= Eigen::MatrixXcd::Identity(n, n);
    e.finish(max_abs(defect), 0.0, cfg.tol(1e-9));
  });

  run_check(out, "expm_coherent_series", [&](ReportEntry& e) {
    const cplx z{0.5, 0.0};
    auto [low, raise] = ladder(FockSpace{n}, 1.0);
    OperatorMatrix gen{z * raise.mat - std::conj(z) * low.mat,
                       low.factor_dims};
    const Eigen::MatrixXcd u = matrix_exponential(gen).mat;
    const int k_max = std::min(20, n - 6);  // keep boundary headroom
    e.add_input("k_max", k_max);
    double defect = 0.0;
    for (int k = 0; k <= k_max; ++k) {
      const cplx ref = std::exp(-0.5 * std::norm(z)) * std::pow(z, k) /
                       std::sqrt(std::tgamma(k + 1.0));
      defect = std::max(defect, std::abs(u(k, 0) - ref));
    }
    e.finish(defect, 0.0, cfg.tol(1e-10));
  });

  return out;
}

std::vector<ReportEntry> hamiltonians_suite(const RunConfig& cfg) {
  std::vector<ReportEntry> out;
  const ModelParams& pr = cfg.params;

  run_check(out, "h1_bundle_identity", [&](ReportEntry& e) {
    const HamiltonianBundle b = build_h1(pr, 10, 8);
    const double defect =
        max_abs((b.total - (b.oscillator_part - b.linear_part)).mat);
    e.finish(defect, 0.0, cfg.tol(1e-12));
  });

  run_check(out, "h1_hermitian", [&](ReportEntry& e) {
    const HamiltonianBundle b = build_h1(pr, 10, 8);
    e.finish(max_abs(b.total.mat - b.total.mat.adjoint()), 0.0,
             cfg.tol(1e-12));
  });

  run_check(out, "h1_ground_expectation", [&](ReportEntry& e) {
    const HamiltonianBundle b = build_h1(pr, 10, 8);
    const double expected =
        0.5 * pr.hbar * pr.omega_c - pr.lambda * pr.lambda / (2.0 * pr.mass);
    e.add_input("lambda", pr.lambda);
    e.finish(b.total.mat(0, 0), expected, cfg.tol(1e-12));
  });

  run_check(out, "h1_lambda0_levels", [&](ReportEntry& e) {
    ModelParams p0 = pr;
    p0.lambda = 0.0;
    const int nb = 13, nd = 8;
    const HamiltonianBundle b = build_h1(p0, nb, nd);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b.total.mat,
                                                       Eigen::EigenvaluesOnly);
    double defect = 0.0;
    for (int lvl = 0; lvl + 1 < nb; ++lvl) {
      const double target = p0.hbar * p0.omega_c * (lvl + 0.5);
      int count = 0;
      for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (std::abs(es.eigenvalues()(i) - target) <= 1e-9) ++count;
      defect = std::max(defect, std::abs(static_cast<double>(count - nd)));
    }
    e.add_input("n_b", nb);
    e.add_input("n_d", nd);
    e.finish(defect, 0.0, 0.5);
  });

  run_check(out, "h2_matches_h1_at_lambda0", [&](ReportEntry& e) {
    ModelParams p0 = pr;
    p0.lambda = 0.0;
    const HamiltonianBundle b1 = build_h1(p0, 9, 7);
    const HamiltonianBundle b2 = build_h2(p0, 9, 7);
    e.finish(max_abs((b1.total - b2.total).mat), 0.0, cfg.tol(1e-12));
  });

  run_check(out, "oscillators_commute", [&](ReportEntry& e) {
    const double scale = std::sqrt(2.0 * pr.mass * pr.hbar * pr.omega_c);
    auto [b, bd] = ladder(FockSpace{9}, scale);
    OperatorMatrix osc{(bd.mat * b.mat + b.mat * bd.mat) / (4.0 * pr.mass),
                       {9}};
    const OperatorMatrix h1 = embed(osc, 0, 9);
    const OperatorMatrix h2 = embed(osc, 1, 9);
    e.finish(max_abs(commutator(h1, h2).mat), 0.0, cfg.tol(1e-12));
  });

  run_check(out, "spectrum_formula_point", [&](ReportEntry& e) {
    ModelParams p = pr;
    p.mass = 1.0;
    p.hbar = 1.0;
    p.omega_c = 1.0;
    p.lambda = 0.4;
    e.add_input("n", 2.0);
    e.add_input("alpha", 1.0);
    e.finish(spectrum_h1(2, 1.0, p).energy, 2.02, cfg.tol(1e-12));
  });

  run_check(out, "spectrum_fd_oracle", [&](ReportEntry& e) {
    const std::vector<double> fd = fd_oscillator_levels(4);
    double defect = 0.0;
    for (int lvl = 0; lvl <= 3; ++lvl)
      for (double alpha : {-1.0, 0.0, 1.0}) {
        const double oracle =
            0.5 * pr.hbar * pr.omega_c * fd[lvl] -
            pr.hbar * pr.lambda / pr.mass * alpha -
            pr.lambda * pr.lambda / (2.0 * pr.mass);
        defect = std::max(
            defect, std::abs(oracle - spectrum_h1(lvl, alpha, pr).energy));
      }
    e.finish(defect, 0.0, cfg.tol(1e-4));
  });

  run_check(out, "shifted_spectrum_values", [&](ReportEntry& e) {
    const ShiftedSpectrum s3 = shifted_spectrum(3, 0.0, pr);
    const ShiftedSpectrum sa = shifted_spectrum(0, -1.0, pr);
    const double defect =
        std::abs(s3.e_n - 3.0 * pr.omega_c) +
        std::abs(sa.e_alpha - pr.lambda_bar() / std::sqrt(2.0));
    e.finish(defect, 0.0, cfg.tol(1e-12));
  });

  const int hdim = std::min(cfg.dim_two, 16);
  const HelicityHamiltonians hh =
      helicity_hamiltonians(pr, FockSpace{hdim}, FockSpace{hdim});

  run_check(out, "helicity_h_hermitian", [&](ReportEntry& e) {
    double defect = 0.0;
    for (const OperatorMatrix* h : {&hh.h_plus, &hh.h_minus, &hh.ht_plus,
                                    &hh.ht_minus})
      defect = std::max(defect, max_abs(h->mat - h->mat.adjoint()));
    e.finish(defect, 0.0, cfg.tol(1e-12));
  });

  run_check(out, "helicity_h_lambda0_levels", [&](ReportEntry& e) {
    ModelParams p0 = pr;
    p0.lambda = 0.0;
    const HelicityHamiltonians h0 =
        helicity_hamiltonians(p0, FockSpace{16}, FockSpace{16});
    double defect = 0.0;
    for (int lvl = 0; lvl + 1 < 16; ++lvl)
      defect = std::max(defect, eigen_distance(h0.h_plus.mat,
                                               p0.omega_c * (lvl + 0.5)));
    e.finish(defect, 0.0, cfg.tol(1e-9));
  });

  run_check(out, "helicity_vacuum_expectation", [&](ReportEntry& e) {
    const double expected =
        0.5 * pr.omega_c - pr.lambda * pr.lambda / (2.0 * pr.mass);
    e.finish(hh.h_plus.mat(0, 0), expected, cfg.tol(1e-12));
  });

  run_check(out, "helicity_linear_difference", [&](ReportEntry& e) {
    // Ht_plus - H_plus = (lambda_bar/2)(At_- + At_-*)
    //                    - (i lambda_bar/2)(A_-* - A_-).
    const HelicityOps ops = helicity_ops(FockSpace{hdim}, FockSpace{hdim});
    const double half_lb = 0.5 * pr.lambda_bar();
    const OperatorMatrix expected =
        cplx{half_lb, 0.0} * (ops.at_minus + ops.at_minus_star) -
        cplx{0.0, half_lb} * (ops.a_minus_star - ops.a_minus);
    e.finish(max_abs((hh.ht_plus - hh.h_plus - expected).mat), 0.0,
             cfg.tol(1e-12));
  });

  run_check(out, "tensor_hd_levels", [&](ReportEntry& e) {
    const TensorDecomposition td = tensor_decompose_h(pr, 12);
    double defect = 0.0;
    for (int lvl = 0; lvl < 12; ++lvl)
      defect = std::max(defect, std::abs(td.h_d.mat(lvl, lvl).real() -
                                         pr.omega_c * (lvl + 0.5)));
    e.finish(defect, 0.0, cfg.tol(1e-12));
  });

  run_check(out, "tensor_hc_affine", [&](ReportEntry& e) {
    const TensorDecomposition td = tensor_decompose_h(pr, 4);
    const double at0 = td.h_c(0.0);
    const double affine =
        td.h_c(0.7) + td.h_c(-1.1) - 2.0 * td.h_c((0.7 - 1.1) / 2.0);
    const double defect =
        std::abs(at0 + 0.5 * pr.lambda * pr.lambda) + std::abs(affine);
    e.finish(defect, 0.0, cfg.tol(1e-14));
  });

  return out;
}

std::vector<ReportEntry> wigner_suite(const RunConfig& cfg) {
  std::vector<ReportEntry> out;
  GridSpec spec{cfg.wigner_range, cfg.wigner_points};

  run_check(out, "w00_origin_value", [&](ReportEntry& e) {
    const PhaseSpaceGrid g = wigner_dyad(0, 0, spec);
    const int mid = spec.points / 2;
    e.add_input("points", spec.points);
    e.finish(g.values(mid, mid), 1.0 / std::sqrt(2.0 * M_PI),
             cfg.tol(1e-8));
  });

  run_check(out, "w00_l2_norm", [&](ReportEntry& e) {
    const Eigen::MatrixXcd g = hs_gram({{0, 0}}, spec);
    e.finish(g(0, 0), 1.0, cfg.tol(1e-6));
  });

  run_check(out, "w10_origin_zero", [&](ReportEntry& e) {
    const PhaseSpaceGrid g = wigner_dyad(1, 0, spec);
    const int mid = spec.points / 2;
    e.finish(g.values(mid, mid), 0.0, cfg.tol(1e-9));
  });

  run_check(out, "gram_identity", [&](ReportEntry& e) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a <= cfg.wigner_max_index; ++a)
      for (int b = 0; b <= cfg.wigner_max_index; ++b) pairs.emplace_back(a, b);
    const Eigen::MatrixXcd g = hs_gram(pairs, spec);
    Eigen::MatrixXcd defect =
        g - Eigen::MatrixXcd::Identity(g.rows(), g.cols());
    e.add_input("max_index", cfg.wigner_max_index);
    e.finish(max_abs(defect), 0.0, cfg.tol(1e-4));
  });

  run_check(out, "roundtrip_dyads", [&](ReportEntry& e) {
    const int dim = cfg.wigner_max_index + 1;
    const InverseWigner inv(dim, spec);
    double defect = 0.0;
    for (const auto& [n, l] :
         std::vector<std::pair<int, int>>{{0, 0}, {1, 2}}) {
      if (n >= dim || l >= dim) continue;
      const OperatorMatrix m = inv.apply(wigner_dyad(n, l, spec));
      Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(dim, dim);
      expect(n, l) = 1.0;
      defect = std::max(defect, max_abs(m.mat - expect));
    }
    e.finish(defect, 0.0, cfg.tol(1e-4));
  });

  run_check(out, "conjugation_symmetry", [&](ReportEntry& e) {
    // W_nl(x, y) = conj(W_ln(-x, -y)); the symmetric odd grid maps the
    // reflection onto exact index mirroring.
    const PhaseSpaceGrid a = wigner_dyad(1, 2, spec);
    const PhaseSpaceGrid b = wigner_dyad(2, 1, spec);
    double defect = 0.0;
    const int np = spec.points;
    for (int iy = 0; iy < np; ++iy)
      for (int ix = 0; ix < np; ++ix)
        defect = std::max(defect,
                          std::abs(a.values(iy, ix) -
                                   std::conj(b.values(np - 1 - iy,
                                                      np - 1 - ix))));
    e.finish(defect, 0.0, cfg.tol(1e-9));
  });

  run_check(out, "u_kernel_column_norm", [&](ReportEntry& e) {
    const double x = 0.8, y = -0.6;
    double acc = 0.0;
    for (int m = 0; m < 20; ++m) acc += std::norm(u_matrix_element(m, 0, x, y));
    e.add_input("x", x);
    e.add_input("y", y);
    e.finish(acc, 1.0, cfg.tol(1e-8));
  });

  return out;
}

std::vector<ReportEntry> gkcs_suite(const RunConfig& cfg) {
  std::vector<ReportEntry> out;
  const ModelParams& pr = cfg.params;
  const GkCsLabel label{cfg.J,  cfg.gamma,  cfg.Jp, cfg.gammap,
                        cfg.l,  cfg.K1,     cfg.theta1, pr.beta};

  run_check(out, "discrete_norm_truncation", [&](ReportEntry& e) {
    const DiscreteNorm dn = discrete_norm(4.0, cfg.Jp, cfg.n_max);
    e.add_input("J", 4.0);
    e.finish(dn.truncated_sum_j, dn.n_j_sq, cfg.tol(1e-12 * dn.n_j_sq));
  });

  run_check(out, "member_norm", [&](ReportEntry& e) {
    const CompositeCs cs = build_cs(label, cfg.n_max);
    const double expected = std::exp(-label.Jp) *
                            std::pow(label.Jp, label.l) /
                            std::tgamma(label.l + 1.0);
    e.add_input("l", label.l);
    e.finish(norm_sq(cs), expected, cfg.tol(1e-8));
  });

  run_check(out, "family_norm", [&](ReportEntry& e) {
    e.add_input("J", label.J);
    e.add_input("Jp", label.Jp);
    e.finish(family_norm_sq(label, cfg.n_max, cfg.l_max), 1.0,
             cfg.tol(1e-8));
  });

  run_check(out, "continuous_norm_general", [&](ReportEntry& e) {
    const ContinuousNorm cn = continuous_norm(cfg.K1, pr.beta);
    e.add_input("K1", cfg.K1);
    e.add_input("beta", pr.beta);
    e.finish_flag(cn.general_form, cn.general_matches, cfg.tol(1e-8));
  });

  run_check(out, "continuous_norm_paper_branch", [&](ReportEntry& e) {
    const ContinuousNorm cn = continuous_norm(cfg.K1, pr.beta);
    e.add_input("K1", cfg.K1);
    e.add_input("beta", pr.beta);
    e.finish_flag(cn.paper_form, cn.paper_matches, cfg.tol(1e-8));
  });

  run_check(out, "continuous_member_normalised", [&](ReportEntry& e) {
    const CompositeCs cs = build_cs(label, cfg.n_max);
    e.finish(cs.continuous.norm_sq_adaptive(), 1.0, cfg.tol(1e-10));
  });

  run_check(out, "rule_matches_adaptive", [&](ReportEntry& e) {
    const CompositeCs cs = build_cs(label, cfg.n_max);
    e.finish(cs.continuous.norm_sq_rule(), cs.continuous.norm_sq_adaptive(),
             cfg.tol(1e-10));
  });

  run_check(out, "overlap_self", [&](ReportEntry& e) {
    const CompositeCs cs = build_cs(label, cfg.n_max);
    const double nsq = norm_sq(cs);
    e.finish(cs_overlap(cs, cs).real() / nsq, 1.0, cfg.tol(1e-8));
  });

  run_check(out, "overlap_l_orthogonal", [&](ReportEntry& e) {
    GkCsLabel other = label;
    other.l = label.l + 1;
    const CompositeCs a = build_cs(label, cfg.n_max);
    const CompositeCs b = build_cs(other, cfg.n_max);
    e.finish(std::abs(cs_overlap(a, b)), 0.0, cfg.tol(1e-14));
  });

  run_check(out, "label_continuity", [&](ReportEntry& e) {
    auto dist_sq = [&](double s) {
      GkCsLabel moved = label;
      moved.J += 0.3 * s;
      moved.gamma += 0.2 * s;
      moved.Jp += 0.25 * s;
      moved.gammap += 0.15 * s;
      moved.K1 += 0.2 * s;
      moved.theta1 += 0.3 * s;
      const CompositeCs a = build_cs(label, cfg.n_max);
      const CompositeCs b = build_cs(moved, cfg.n_max);
      return norm_sq(a) + norm_sq(b) - 2.0 * cs_overlap(a, b).real();
    };
    double prev = dist_sq(1.0);
    const double first = prev;
    bool monotone = true;
    double last = prev;
    for (int k = 1; k <= 5; ++k) {
      last = dist_sq(std::pow(0.5, k));
      if (last >= prev) monotone = false;
      prev = last;
    }
    e.finish_flag(last / first, monotone && last < 0.01 * first,
                  cfg.tol(0.01));
  });

  run_check(out, "evolve_additivity", [&](ReportEntry& e) {
    const GkCsLabel once = evolve(evolve(label, 0.4, pr), 0.3, pr);
    const GkCsLabel direct = evolve(label, 0.7, pr);
    const double defect = std::abs(once.gamma - direct.gamma) +
                          std::abs(once.theta1 - direct.theta1);
    e.finish(defect, 0.0, cfg.tol(1e-12));
  });

  run_check(out, "temporal_stability", [&](ReportEntry& e) {
    const EvolutionCheck ec = evolution_check(label, 0.7, pr, cfg.n_max);
    e.add_input("t", 0.7);
    e.finish(ec.fidelity_deficit, 0.0, cfg.tol(1e-8));
  });

  run_check(out, "action_identity_discrete", [&](ReportEntry& e) {
    const double value =
        action_identity_discrete(label, pr, cfg.n_max, cfg.l_max);
    e.add_input("J", label.J);
    e.add_input("omega_c", pr.omega_c);
    const double tail = action_discrete_tail(label, pr, cfg.n_max, cfg.l_max);
    e.finish(value, pr.omega_c * label.J, cfg.tol(1e-8) + tail);
  });

  run_check(out, "action_label_invariance", [&](ReportEntry& e) {
    const double base =
        action_identity_discrete(label, pr, cfg.n_max, cfg.l_max);
    GkCsLabel moved = label;
    moved.gamma += 1.1;
    moved.K1 *= 1.7;
    moved.theta1 -= 2.0;
    const double other =
        action_identity_discrete(moved, pr, cfg.n_max, cfg.l_max);
    e.finish(other - base, 0.0, cfg.tol(1e-10));
  });

  run_check(out, "action_continuous_gaussian", [&](ReportEntry& e) {
    e.finish(action_continuous(1.0, 1.0), 1.0 / std::sqrt(M_PI),
             cfg.tol(1e-10));
  });

  run_check(out, "action_monotone_in_k1", [&](ReportEntry& e) {
    double min_slope = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 20; ++i) {
      const double k = 0.25 + i * (4.0 - 0.25) / 19.0;
      const double slope =
          (action_continuous(k + 1e-4, pr.beta) -
           action_continuous(k - 1e-4, pr.beta)) / 2e-4;
      min_slope = std::min(min_slope, slope);
    }
    e.finish_flag(min_slope, min_slope > 0.0, 0.0);
  });

  run_check(out, "invert_action_roundtrip", [&](ReportEntry& e) {
    const double target = action_continuous(0.7, pr.beta);
    e.finish(invert_action(target, pr.beta), 0.7, cfg.tol(1e-6));
  });

  run_check(out, "roi_discrete_moments", [&](ReportEntry& e) {
    const RoiDefects d =
        resolution_of_identity_check(20, cfg.l, 2.0, pr.beta);
    e.finish(d.discrete, 0.0, cfg.tol(1e-8));
  });

  run_check(out, "roi_sigma_moments", [&](ReportEntry& e) {
    const RoiDefects d =
        resolution_of_identity_check(20, cfg.l, 2.0, pr.beta);
    e.add_input("beta", pr.beta);
    e.finish(d.continuous, 0.0, cfg.tol(1e-6));
  });

  return out;
}

std::vector<ReportEntry> displacement_suite(const RunConfig& cfg) {
  std::vector<ReportEntry> out;
  const int n = cfg.dim_single;

  run_check(out, "disp_zero_identity", [&](ReportEntry& e) {
    const OperatorMatrix u = displacement_u(cplx{0.0, 0.0}, FockSpace{12});
    e.finish(max_abs(u.mat - Eigen::MatrixXcd::Identity(12, 12)), 0.0,
             cfg.tol(1e-13));
  });

  run_check(out, "disp_unitary", [&](ReportEntry& e) {
    const cplx z = std::polar(1.5, 0.4);
    const OperatorMatrix u = displacement_u(z, FockSpace{n});
    Eigen::MatrixXcd d = u.mat.adjoint() * u.mat;
    d -= Eigen::MatrixXcd::Identity(n, n);
    e.add_input("abs_z", std::abs(z));
    e.finish(max_abs(d), 0.0, cfg.tol(1e-9));
  });

  run_check(out, "disp_coherent_coefficients", [&](ReportEntry& e) {
    const cplx z{0.8, 0.3};
    const OperatorMatrix u = displacement_u(z, FockSpace{n});
    const int k_max = std::min(15, n - 6);
    e.add_input("k_max", k_max);
    double defect = 0.0;
    for (int k = 0; k <= k_max; ++k) {
      const cplx ref = std::exp(-0.5 * std::norm(z)) * std::pow(z, k) /
                       std::sqrt(std::tgamma(k + 1.0));
      defect = std::max(defect, std::abs(u.mat(k, 0) - ref));
    }
    e.finish(defect, 0.0, cfg.tol(1e-10));
  });

  run_check(out, "bch_zero", [&](ReportEntry& e) {
    e.finish(bch_defect(cplx{0.0, 0.0}, FockSpace{16}, 8), 0.0,
             cfg.tol(1e-14));
  });

  run_check(out, "bch_interior", [&](ReportEntry& e) {
    const int cut = (5 * n) / 8;
    e.add_input("abs_z", 0.5);
    e.add_input("interior_cut", cut);
    e.finish(bch_defect(cplx{0.5, 0.0}, FockSpace{n}, cut), 0.0,
             cfg.tol(1e-9));
  });

  run_check(out, "weyl_composition", [&](ReportEntry& e) {
    const cplx z1{0.4, -0.2}, z2{-0.1, 0.35};
    const OperatorMatrix u1 = displacement_u(z1, FockSpace{n});
    const OperatorMatrix u2 = displacement_u(z2, FockSpace{n});
    const OperatorMatrix u12 = displacement_u(z1 + z2, FockSpace{n});
    const cplx phase =
        std::polar(1.0, std::imag(z1 * std::conj(z2)));
    OperatorMatrix lhs = u1 * u2;
    const Eigen::MatrixXcd diff = lhs.mat - phase * u12.mat;
    double defect = 0.0;
    const int cut = (5 * n) / 8;  // truncation leakage sits near the boundary
    for (int i = 0; i < cut; ++i)
      for (int j = 0; j < cut; ++j)
        defect = std::max(defect, std::abs(diff(i, j)));
    e.finish(defect, 0.0, cfg.tol(1e-8));
  });

  run_check(out, "qp_parametrisation", [&](ReportEntry& e) {
    const double q = 0.9, p = -0.55;
    const DisplacementParams dp = DisplacementParams::from_qp(q, p);
    const OperatorMatrix a = displacement_qp(q, p, FockSpace{32});
    const OperatorMatrix b = displacement_u(dp.z, FockSpace{32});
    e.finish(max_abs((a - b).mat), 0.0, cfg.tol(1e-10));
  });

  run_check(out, "two_mode_amplitudes", [&](ReportEntry& e) {
    const cplx z{1.0, 0.0}, zp{0.0, 1.0};
    const TwoModeCs cs = two_mode_cs(z, zp, FockSpace{20}, FockSpace{20});
    double defect = 0.0;
    for (int a = 0; a + 0 <= 12; ++a)
      for (int b = 0; a + b <= 12; ++b)
        defect = std::max(defect, std::abs(cs.amplitude(a, b) -
                                           two_mode_closed_amplitude(
                                               z, zp, a, b)));
    e.finish(defect, 0.0, cfg.tol(1e-10));
  });

  run_check(out, "two_mode_norm", [&](ReportEntry& e) {
    const TwoModeCs cs =
        two_mode_cs(cplx{0.7, 0.2}, cplx{-0.3, 0.5}, FockSpace{20},
                    FockSpace{20});
    e.finish(cs.vec.squaredNorm(), 1.0, cfg.tol(1e-10));
  });

  run_check(out, "relabel_polar_form", [&](ReportEntry& e) {
    auto [z, zp] = gk_relabel(4.0, M_PI / 2.0, 0.0, 0.0);
    e.finish(z, cplx{0.0, -2.0}, cfg.tol(1e-14));
  });

  run_check(out, "relabel_cross_path", [&](ReportEntry& e) {
    auto [z, zp] = gk_relabel(cfg.J, cfg.gamma, cfg.Jp, cfg.gammap);
    const TwoModeCs tm = two_mode_cs(z, zp, FockSpace{24}, FockSpace{24});
    GkCsLabel label{cfg.J, cfg.gamma, cfg.Jp, cfg.gammap,
                    cfg.l, cfg.K1,    cfg.theta1, cfg.params.beta};
    const CompositeCs cs = build_cs(label, 23);
    double defect = 0.0;
    for (int k = 0; k <= 20; ++k)
      defect = std::max(defect, std::abs(cs.discrete.coeffs(k) -
                                         tm.amplitude(k, cfg.l)));
    e.add_input("l", cfg.l);
    e.finish(defect, 0.0, cfg.tol(1e-10));
  });

  run_check(out, "shift_roundtrip", [&](ReportEntry& e) {
    std::vector<cplx> samples(64);
    for (int i = 0; i < 64; ++i)
      samples[i] = cplx{std::sin(0.3 * i), std::cos(0.11 * i)};
    const double h = 0.25;
    const auto shifted = infinitesimal_displacement(samples, 5 * h, h);
    const auto back = infinitesimal_displacement(shifted, -5 * h, h);
    double defect = 0.0;
    for (int i = 0; i < 64; ++i)
      defect = std::max(defect, std::abs(back[i] - samples[i]));
    e.finish(defect, 0.0, cfg.tol(1e-15));
  });

  run_check(out, "shift_plane_wave_phase", [&](ReportEntry& e) {
    const int npts = 128;
    const double h = 0.125;
    const double length = npts * h;
    const double alpha = 2.0 * M_PI * 3.0 / length;  // periodic on the grid
    std::vector<cplx> wave(npts);
    for (int i = 0; i < npts; ++i) wave[i] = std::polar(1.0, alpha * i * h);
    const double eps = 4 * h;
    const auto shifted = infinitesimal_displacement(wave, eps, h);
    double defect = 0.0;
    for (int i = 0; i < npts; ++i)
      defect = std::max(defect, std::abs(shifted[i] -
                                         std::polar(1.0, -alpha * eps) *
                                             wave[i]));
    e.finish(defect, 0.0, cfg.tol(1e-12));
  });

  run_check(out, "unitary_cs_weights", [&](ReportEntry& e) {
    const cplx f{0.6, 0.0}, g{0.0, 0.8};  // |f|^2 + |g|^2 = 1
    auto [z, zp] = gk_relabel(cfg.J, cfg.gamma, cfg.Jp, cfg.gammap);
    const UnitaryCsPieces pieces =
        unitary_cs(z, zp, cfg.l, f, g, 0.4, cfg.K1 * cfg.K1, cfg.theta1,
                   cfg.params.beta, 40);
    const double expected =
        std::norm(f) * std::exp(-std::norm(zp)) *
            std::pow(std::norm(zp), cfg.l) / std::tgamma(cfg.l + 1.0) +
        std::norm(g);
    e.finish(pieces.total_norm_sq, expected, cfg.tol(1e-9));
  });

  return out;
}

void RunConfig::validate() const {
  params.validate();
  if (tol_override && !(*tol_override > 0.0))
    throw ParameterError("tolerance override must be positive");
  if (dim_single < 2 || dim_two < 2)
    throw ParameterError("dimensions must be >= 2");
  if (dim_single > 512 || dim_two > 128)
    throw ParameterError("dimension exceeds the dense-matrix budget");
  if (n_max < 1 || n_max > 4000 || l_max < 1 || l_max > 4000)
    throw ParameterError("n_max/l_max out of range");
  if (wigner_points < 2 || wigner_points > 1001 || !(wigner_range > 0.0))
    throw ParameterError("wigner grid out of range");
  if (wigner_max_index < 0 || wigner_max_index > 12)
    throw ParameterError("wigner_max_index out of range");
  if (J < 0.0 || Jp < 0.0 || l < 0 || !(K1 > 0.0))
    throw ParameterError("invalid state label");
}

std::vector<ReportEntry> run_suite(const std::string& name,
                                   const RunConfig& cfg) {
  cfg.validate();
  std::vector<ReportEntry> out;
  auto append = [&out](std::vector<ReportEntry> more) {
    for (auto& e : more) out.push_back(std::move(e));
  };
  if (name == "algebra" || name == "all") append(algebra_suite(cfg));
  if (name == "hamiltonians" || name == "all") append(hamiltonians_suite(cfg));
  if (name == "wigner" || name == "all") append(wigner_suite(cfg));
  if (name == "gkcs" || name == "all") append(gkcs_suite(cfg));
  if (name == "displacement" || name == "all") append(displacement_suite(cfg));
  if (out.empty())
    throw ParameterError("unknown suite: " + name);
  std::sort(out.begin(), out.end(),
            [](const ReportEntry& a, const ReportEntry& b) {
              return a.check_id < b.check_id;
            });
  return out;
}

bool all_passed(const std::vector<ReportEntry>& entries) {
  return std::all_of(entries.begin(), entries.end(),
                     [](const ReportEntry& e) { return e.pass; });
}

bool any_errored(const std::vector<ReportEntry>& entries) {
  return std::any_of(entries.begin(), entries.end(),
                     [](const ReportEntry& e) { return e.errored; });
}

}  // namespace gkl
