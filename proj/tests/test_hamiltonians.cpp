#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gklandau/hamiltonians.hpp"

using gkl::cplx;
using gkl::FockSpace;
using gkl::ModelParams;

namespace {
double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::VectorXd eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}
}  // namespace

TEST_CASE("split Hamiltonian bundle") {
  ModelParams pr;
  pr.lambda = 0.3;

  const gkl::HamiltonianBundle b = gkl::build_h1(pr, 10, 8);
  CHECK(max_abs((b.total - (b.oscillator_part - b.linear_part)).mat) == 0.0);
  CHECK(b.total.is_hermitian(1e-12));
  CHECK(b.total.factor_dims == std::vector<int>{10, 8});

  // <0,0|H1|0,0> = hbar omega_c/2 - lambda^2/2M; <0|d + d^dag|0> = 0.
  CHECK(std::abs(b.total.mat(0, 0) - cplx{0.5 - 0.045, 0.0}) <= 1e-14);
}

TEST_CASE("lambda = 0 Landau levels with full degeneracy") {
  ModelParams pr;  // lambda = 0
  const int nb = 13, nd = 8;
  const gkl::HamiltonianBundle b = gkl::build_h1(pr, nb, nd);
  const Eigen::VectorXd ev = eigenvalues(b.total.mat);
  for (int n = 0; n + 1 < nb; ++n) {
    const double target = pr.hbar * pr.omega_c * (n + 0.5);
    int count = 0;
    for (int i = 0; i < ev.size(); ++i)
      if (std::abs(ev(i) - target) <= 1e-9) ++count;
    CHECK(count == nd);
  }
}

TEST_CASE("H2 mirrors H1 and the oscillator parts commute") {
  ModelParams pr;
  pr.lambda = 0.4;
  const gkl::HamiltonianBundle b1 = gkl::build_h1(pr, 9, 7);
  const gkl::HamiltonianBundle b2 = gkl::build_h2(pr, 9, 7);
  CHECK(max_abs((b1.oscillator_part - b2.oscillator_part).mat) == 0.0);
  CHECK(std::abs(b2.total.mat(0, 0) -
                 cplx{0.5 * pr.hbar * pr.omega_c -
                          pr.lambda * pr.lambda / (2.0 * pr.mass),
                      0.0}) <= 1e-14);

  // Embed H1_OSC on factor 0 and H2_OSC on factor 1 of a shared space.
  const double scale = std::sqrt(2.0 * pr.mass * pr.hbar * pr.omega_c);
  auto [low, raise] = gkl::ladder(FockSpace{9}, scale);
  gkl::OperatorMatrix osc{
      (raise.mat * low.mat + low.mat * raise.mat) / (4.0 * pr.mass), {9}};
  const gkl::OperatorMatrix h1 = gkl::embed(osc, 0, 9);
  const gkl::OperatorMatrix h2 = gkl::embed(osc, 1, 9);
  CHECK(max_abs(gkl::commutator(h1, h2).mat) == 0.0);

  // Joint eigenvectors: H1_OSC counts n, H2_OSC counts l (interior levels).
  for (int n = 0; n <= 7; ++n)
    for (int l = 0; l <= 7; ++l) {
      const int idx = n * 9 + l;
      CHECK(std::abs(h1.mat(idx, idx) - (n + 0.5)) <= 1e-13);
      CHECK(std::abs(h2.mat(idx, idx) - (l + 0.5)) <= 1e-13);
    }
}

TEST_CASE("energy spectrum formula") {
  ModelParams base;
  CHECK(gkl::spectrum_h1(0, 0.0, base).energy == doctest::Approx(0.5));

  ModelParams pr;
  pr.lambda = 0.4;
  CHECK(gkl::spectrum_h1(2, 1.0, pr).energy ==
        doctest::Approx(2.5 - 0.4 - 0.08).epsilon(1e-14));
  CHECK_THROWS_AS(gkl::spectrum_h1(-1, 0.0, pr), gkl::ParameterError);
}

TEST_CASE("finite-difference oracle cross-checks the spectrum") {
  const std::vector<double> fd = gkl::fd_oscillator_levels(4);
  for (int n = 0; n <= 3; ++n)
    CHECK(std::abs(fd[n] - (2.0 * n + 1.0)) <= 5e-5);

  ModelParams pr;
  pr.lambda = 0.4;
  for (int n = 0; n <= 3; ++n)
    for (double alpha : {-1.0, 0.0, 1.0}) {
      const double oracle = 0.5 * pr.hbar * pr.omega_c * fd[n] -
                            pr.hbar * pr.lambda / pr.mass * alpha -
                            pr.lambda * pr.lambda / (2.0 * pr.mass);
      CHECK(std::abs(oracle - gkl::spectrum_h1(n, alpha, pr).energy) <= 1e-4);
    }
}

TEST_CASE("shifted spectrum") {
  ModelParams pr;
  pr.lambda = 0.5;  // lambda_bar = 0.5 at M = omega_c = 1
  const gkl::ShiftedSpectrum zero = gkl::shifted_spectrum(0, 0.0, pr);
  CHECK(zero.e_n == 0.0);
  CHECK(zero.e_alpha == 0.0);
  CHECK(zero.nonnegative());

  CHECK(gkl::shifted_spectrum(3, 0.0, pr).e_n == doctest::Approx(3.0));
  CHECK(gkl::shifted_spectrum(0, -1.0, pr).e_alpha ==
        doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("helicity Hamiltonians") {
  ModelParams pr;
  pr.lambda = 0.5;
  const gkl::HelicityHamiltonians hh =
      gkl::helicity_hamiltonians(pr, FockSpace{14}, FockSpace{14});

  SUBCASE("hermitian") {
    for (const gkl::OperatorMatrix* h :
         {&hh.h_plus, &hh.h_minus, &hh.ht_plus, &hh.ht_minus})
      CHECK(h->is_hermitian(1e-12));
  }

  SUBCASE("lambda = 0 oscillator levels by diagonalisation") {
    ModelParams p0 = pr;
    p0.lambda = 0.0;
    const gkl::HelicityHamiltonians h0 =
        gkl::helicity_hamiltonians(p0, FockSpace{14}, FockSpace{14});
    const Eigen::VectorXd ev = eigenvalues(h0.h_plus.mat);
    for (int n = 0; n + 1 < 14; ++n) {
      const double target = p0.omega_c * (n + 0.5);
      double best = 1e30;
      for (int i = 0; i < ev.size(); ++i)
        best = std::min(best, std::abs(ev(i) - target));
      CHECK(best <= 1e-10);
    }
  }

  SUBCASE("vacuum expectation") {
    const double expect =
        0.5 * pr.omega_c - pr.lambda * pr.lambda / (2.0 * pr.mass);
    CHECK(std::abs(hh.h_plus.mat(0, 0) - expect) <= 1e-13);
    CHECK(std::abs(hh.ht_plus.mat(0, 0) - expect) <= 1e-13);
  }

  SUBCASE("the tilde partner differs only in the linear term") {
    const gkl::HelicityOps ops =
        gkl::helicity_ops(FockSpace{14}, FockSpace{14});
    const double half_lb = 0.5 * pr.lambda_bar();
    const gkl::OperatorMatrix expected =
        cplx{half_lb, 0.0} * (ops.at_minus + ops.at_minus_star) -
        cplx{0.0, half_lb} * (ops.a_minus_star - ops.a_minus);
    CHECK(max_abs((hh.ht_plus - hh.h_plus - expected).mat) <= 1e-13);
  }
}

TEST_CASE("tensor decomposition") {
  ModelParams pr;
  pr.lambda = 0.6;
  const gkl::TensorDecomposition td = gkl::tensor_decompose_h(pr, 10);

  // H_D = (omega_c/2)(A*A + 1) is diagonal with levels omega_c (n + 1/2),
  // exact on every kept level (A*A = 2 n-hat carries no truncation error).
  for (int n = 0; n < 10; ++n)
    CHECK(std::abs(td.h_d.mat(n, n) - pr.omega_c * (n + 0.5)) <= 1e-14);
  CHECK(td.h_d.is_hermitian(1e-14));

  CHECK(td.h_c(0.0) == doctest::Approx(-0.18).epsilon(1e-14));
  // Affinity: H_C(a1) + H_C(a2) = 2 H_C((a1 + a2)/2).
  CHECK(td.h_c(0.7) + td.h_c(-0.2) ==
        doctest::Approx(2.0 * td.h_c(0.25)).epsilon(1e-14));
  // Slope matches the shifted continuous spectrum.
  CHECK(td.h_c(1.0) - td.h_c(0.0) ==
        doctest::Approx(gkl::shifted_spectrum(0, 1.0, pr).e_alpha));
}

TEST_CASE("fd oracle parameter validation") {
  CHECK_THROWS_AS(gkl::fd_oscillator_levels(0), gkl::ParameterError);
  CHECK_THROWS_AS(gkl::fd_oscillator_levels(3, -1.0), gkl::ParameterError);
  CHECK_THROWS_AS(gkl::build_h1(ModelParams{}, 1, 8), gkl::ParameterError);
}
