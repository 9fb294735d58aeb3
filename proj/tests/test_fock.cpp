#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gklandau/fock.hpp"

using gkl::cplx;
using gkl::FockSpace;
using gkl::ModelParams;
using gkl::OperatorMatrix;

namespace {
double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("ladder pair on three levels") {
  auto [low, raise] = gkl::ladder(FockSpace{3}, 1.0);
  // Oracle: direct 3x3 multiplication of hand-built matrices.
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3);
  a(0, 1) = 1.0;
  a(1, 2) = std::sqrt(2.0);
  const Eigen::MatrixXcd hand = a * a.adjoint() - a.adjoint() * a;
  CHECK(max_abs(low.mat - a) == 0.0);
  CHECK(max_abs(gkl::commutator(low, raise).mat - hand) == 0.0);
  CHECK(std::abs(hand(0, 0) - cplx{1.0, 0.0}) <= 1e-15);
  CHECK(std::abs(hand(1, 1) - cplx{1.0, 0.0}) <= 1e-15);
  CHECK(std::abs(hand(2, 2) - cplx{-2.0, 0.0}) <= 1e-15);
}

TEST_CASE("number operator and scaled commutator") {
  auto [low, raise] = gkl::ladder(FockSpace{8}, 1.0);
  const Eigen::MatrixXcd num = (raise * low).mat;
  for (int n = 0; n < 8; ++n)
    CHECK(std::abs(num(n, n) - cplx{static_cast<double>(n), 0.0}) <=
          4e-15 * std::max(1, n));

  const double scale = std::sqrt(2.0);  // M = omega_c = hbar = 1
  auto [blow, braise] = gkl::ladder(FockSpace{8}, scale);
  const Eigen::MatrixXcd comm = gkl::commutator(blow, braise).mat;
  for (int n = 0; n <= 6; ++n)
    CHECK(std::abs(comm(n, n) - 2.0) <= 1e-14);
}

TEST_CASE("commutator basics") {
  auto [low, raise] = gkl::ladder(FockSpace{10}, 0.7);
  CHECK(max_abs(gkl::commutator(low, low).mat) == 0.0);

  auto [other_low, other_raise] = gkl::ladder(FockSpace{11}, 0.7);
  CHECK_THROWS_AS(gkl::commutator(low, other_low), gkl::SpaceMismatchError);
}

TEST_CASE("truncation law for random scales and dimensions") {
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> scale_dist(0.1, 3.0);
  std::uniform_int_distribution<int> dim_dist(2, 48);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = dim_dist(rng);
    const double s = scale_dist(rng);
    auto [low, raise] = gkl::ladder(FockSpace{n}, s);
    const Eigen::MatrixXcd comm = gkl::commutator(low, raise).mat;
    const double s2 = s * s;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const cplx expect =
            i != j ? cplx{0.0, 0.0}
                   : (i == n - 1 ? cplx{s2 * (1.0 - n), 0.0}
                                 : cplx{s2, 0.0});
        CHECK(std::abs(comm(i, j) - expect) <= 1e-12 * s2 * n);
      }
  }
}

TEST_CASE("quadratures") {
  ModelParams pr;
  pr.mass = 1.3;
  pr.omega_c = 0.9;
  pr.hbar = 1.0;
  const double s2 = 2.0 * pr.mass * pr.hbar * pr.omega_c;
  auto [q, p] = gkl::quadratures(FockSpace{10}, pr, gkl::QuadratureMode::q1p1);

  CHECK(q.is_hermitian(1e-14));
  CHECK(p.is_hermitian(1e-14));
  CHECK(max_abs(q.mat - q.mat.adjoint()) == 0.0);

  // <0|Q^2|0> = M omega_c for scale^2 = 2 M omega_c (hbar = 1).
  CHECK(std::abs((q * q).mat(0, 0) - pr.mass * pr.omega_c) <= 1e-14);

  const Eigen::MatrixXcd comm = gkl::commutator(q, p).mat;
  for (int n = 0; n <= 8; ++n)
    CHECK(std::abs(comm(n, n) - cplx{0.0, s2}) <= 1e-14);

  // Different modes embedded on different factors commute exactly.
  auto [q2, p2] = gkl::quadratures(FockSpace{8}, pr, gkl::QuadratureMode::q2p2);
  auto [q1, p1] = gkl::quadratures(FockSpace{8}, pr, gkl::QuadratureMode::q1p1);
  const OperatorMatrix qa = gkl::embed(q1, 0, 8);
  const OperatorMatrix pb = gkl::embed(p2, 1, 8);
  CHECK(max_abs(gkl::commutator(qa, pb).mat) == 0.0);
}

TEST_CASE("helicity operators") {
  const gkl::HelicityOps ops = gkl::helicity_ops(FockSpace{12}, FockSpace{12});

  SUBCASE("canonical pairs") {
    CHECK(gkl::max_abs_interior_vs_identity(
              gkl::commutator(ops.a_plus, ops.a_plus_star), 2.0) <= 1e-12);
    CHECK(gkl::max_abs_interior_vs_identity(
              gkl::commutator(ops.a_minus, ops.a_minus_star), 2.0) <= 1e-12);
    CHECK(gkl::max_abs_interior_vs_identity(
              gkl::commutator(ops.at_plus, ops.at_plus_star), 2.0) <= 1e-12);
    CHECK(gkl::max_abs_interior_vs_identity(
              gkl::commutator(ops.at_minus, ops.at_minus_star), 2.0) <= 1e-12);
    CHECK(gkl::max_abs_interior_vs_identity(
              gkl::commutator(ops.q_plus, ops.p_plus), cplx{0.0, 2.0}) <=
          1e-12);
  }

  SUBCASE("cross-sector commutators vanish") {
    const OperatorMatrix* plus[] = {&ops.a_plus, &ops.a_plus_star,
                                    &ops.at_plus, &ops.at_plus_star};
    const OperatorMatrix* minus[] = {&ops.a_minus, &ops.a_minus_star,
                                     &ops.at_minus, &ops.at_minus_star};
    for (const auto* x : plus)
      for (const auto* y : minus)
        CHECK(max_abs(gkl::commutator(*x, *y).mat) <= 1e-12);
    CHECK(max_abs(gkl::commutator(ops.a_plus, ops.at_plus).mat) <= 1e-12);
  }

  SUBCASE("vacuum relations") {
    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(ops.a_minus.dim());
    vac(0) = 1.0;
    CHECK((ops.at_plus.mat * vac).norm() == 0.0);
    CHECK((ops.a_minus.mat * vac).norm() == 0.0);
    // <00| A_- A_-* |00> = 2 from [A_-, A_-*] = 2 and A_-|00> = 0.
    const cplx val =
        (vac.adjoint() * (ops.a_minus * ops.a_minus_star).mat * vac)(0);
    CHECK(std::abs(val - 2.0) <= 1e-14);
  }

  SUBCASE("adjoint consistency") {
    CHECK(max_abs(ops.a_minus_star.mat - ops.a_minus.mat.adjoint()) == 0.0);
    CHECK(max_abs(ops.at_minus_star.mat - ops.at_minus.mat.adjoint()) == 0.0);
  }
}

TEST_CASE("matrix exponential") {
  SUBCASE("identity") {
    const OperatorMatrix e = gkl::matrix_exponential(OperatorMatrix::zero({9}));
    CHECK(max_abs(e.mat - Eigen::MatrixXcd::Identity(9, 9)) == 0.0);
  }

  SUBCASE("diagonal phases") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
    const double theta = 0.3;
    for (int k = 0; k < 3; ++k) d(k, k) = cplx{0.0, theta * k};
    const Eigen::MatrixXcd e = gkl::matrix_exponential(d);
    for (int k = 0; k < 3; ++k)
      CHECK(std::abs(e(k, k) - std::polar(1.0, theta * k)) <= 1e-14);
  }

  SUBCASE("nilpotent closed form") {
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(2, 2);
    j(0, 1) = 1.0;
    const Eigen::MatrixXcd e = gkl::matrix_exponential(j);
    CHECK(std::abs(e(0, 0) - 1.0) <= 1e-15);
    CHECK(std::abs(e(0, 1) - 1.0) <= 1e-15);
    CHECK(std::abs(e(1, 0)) <= 1e-15);
  }

  SUBCASE("pade path against the exponential series") {
    // Non-normal input forces the scaling-and-squaring branch.
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    Eigen::MatrixXcd a(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) a(i, j) = cplx{dist(rng), dist(rng)};
    const Eigen::MatrixXcd e = gkl::matrix_exponential(a);
    Eigen::MatrixXcd series = Eigen::MatrixXcd::Identity(6, 6);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(6, 6);
    for (int k = 1; k <= 40; ++k) {
      term = term * a / static_cast<double>(k);
      series += term;
    }
    CHECK(max_abs(e - series) <= 1e-13);
  }

  SUBCASE("skew-hermitian stays unitary") {
    for (int n : {8, 40, 64}) {
      auto [low, raise] = gkl::ladder(FockSpace{n}, 1.0);
      const cplx z{1.1, -0.4};
      OperatorMatrix gen{z * raise.mat - std::conj(z) * low.mat,
                         low.factor_dims};
      const OperatorMatrix u = gkl::matrix_exponential(gen);
      CHECK(u.is_unitary(1e-9));
    }
  }

  SUBCASE("coherent expansion at |0>") {
    const cplx z{0.5, 0.0};
    auto [low, raise] = gkl::ladder(FockSpace{40}, 1.0);
    OperatorMatrix gen{z * raise.mat - std::conj(z) * low.mat,
                       low.factor_dims};
    const Eigen::MatrixXcd u = gkl::matrix_exponential(gen).mat;
    for (int n = 0; n <= 20; ++n) {
      const cplx ref = std::exp(-0.5 * std::norm(z)) * std::pow(z, n) /
                       std::sqrt(std::tgamma(n + 1.0));
      CHECK(std::abs(u(n, 0) - ref) <= 1e-10);
    }
  }

  SUBCASE("overflow raises") {
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(2, 2);
    big(0, 0) = 1e4;
    big(1, 1) = 1e4;
    CHECK_THROWS_AS(gkl::matrix_exponential(big), gkl::NumericError);
  }
}

TEST_CASE("operator matrix flags and embedding") {
  OperatorMatrix id = OperatorMatrix::identity({4, 3});
  CHECK(id.dim() == 12);
  CHECK(id.is_hermitian());
  CHECK(id.is_unitary());

  auto [low, raise] = gkl::ladder(FockSpace{4}, 1.0);
  const OperatorMatrix a0 = gkl::embed(low, 0, 3);
  const OperatorMatrix a1 = gkl::embed(low, 1, 4);
  CHECK(a0.factor_dims == std::vector<int>{4, 3});
  CHECK(a1.factor_dims == std::vector<int>{4, 4});
  CHECK_THROWS_AS(gkl::embed(low, 2, 3), gkl::ParameterError);

  const std::vector<int> interior = gkl::interior_indices({3, 2});
  CHECK(interior == std::vector<int>{0, 2});
}

TEST_CASE("model parameter validation") {
  ModelParams bad;
  bad.beta = 0.0;
  CHECK_THROWS_AS(bad.validate(), gkl::ParameterError);
  ModelParams p;
  p.lambda = 0.75;
  p.mass = 3.0;
  p.omega_c = 4.0;
  // lambda_bar = lambda sqrt(omega_c / M), recomputed on demand.
  CHECK(p.lambda_bar() == doctest::Approx(0.75 * std::sqrt(4.0 / 3.0)));
  CHECK_THROWS_AS(gkl::FockSpace{1}.validate(), gkl::ParameterError);
  CHECK_THROWS_AS(gkl::ladder(FockSpace{5}, 0.0), gkl::ParameterError);
}
