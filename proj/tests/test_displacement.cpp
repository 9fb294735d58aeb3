#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gklandau/displacement.hpp"
#include "gklandau/gkcs.hpp"

using gkl::cplx;
using gkl::FockSpace;

namespace {
double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("displacement operator") {
  SUBCASE("zero displacement is the identity") {
    const gkl::OperatorMatrix u =
        gkl::displacement_u(cplx{0.0, 0.0}, FockSpace{10});
    CHECK(max_abs(u.mat - Eigen::MatrixXcd::Identity(10, 10)) == 0.0);
  }

  SUBCASE("coherent coefficients from the series oracle") {
    const cplx z{0.8, 0.3};
    const gkl::OperatorMatrix u = gkl::displacement_u(z, FockSpace{40});
    for (int n = 0; n <= 15; ++n) {
      const cplx ref = std::exp(-0.5 * std::norm(z)) * std::pow(z, n) /
                       std::sqrt(std::tgamma(n + 1.0));
      CHECK(std::abs(u.mat(n, 0) - ref) <= 1e-10);
    }
  }

  SUBCASE("unitary at |z| = 1.5") {
    const gkl::OperatorMatrix u =
        gkl::displacement_u(std::polar(1.5, 1.1), FockSpace{40});
    CHECK(u.is_unitary(1e-9));
  }

  SUBCASE("budget enforcement") {
    try {
      gkl::displacement_u(cplx{3.0, 0.0}, FockSpace{10});
      FAIL("expected TruncationError");
    } catch (const gkl::TruncationError& e) {
      CHECK(e.suggested_n_max > 10);
      CHECK(gkl::coherent_tail_bound(3.0, e.suggested_n_max) < 1e-12);
    }
  }
}

TEST_CASE("BCH factorisation") {
  CHECK(gkl::bch_defect(cplx{0.0, 0.0}, FockSpace{16}, 8) <= 1e-14);
  CHECK(gkl::bch_defect(cplx{0.5, 0.0}, FockSpace{40}, 25) <= 1e-9);
  CHECK(gkl::bch_defect(std::polar(1.0, 0.7), FockSpace{40}, 25) <= 1e-9);
  // z = 2 on a short space: truncation dominates; reported, not asserted
  // small.
  const double coarse = gkl::bch_defect(cplx{2.0, 0.0}, FockSpace{20}, 15);
  CHECK(std::isfinite(coarse));
  CHECK(coarse > gkl::bch_defect(cplx{0.5, 0.0}, FockSpace{40}, 15));
}

TEST_CASE("weyl composition law") {
  const int n = 40;
  const cplx z1{0.45, -0.15}, z2{-0.3, 0.4};
  const gkl::OperatorMatrix u1 = gkl::displacement_u(z1, FockSpace{n});
  const gkl::OperatorMatrix u2 = gkl::displacement_u(z2, FockSpace{n});
  const gkl::OperatorMatrix u12 = gkl::displacement_u(z1 + z2, FockSpace{n});
  const cplx phase = std::polar(1.0, std::imag(z1 * std::conj(z2)));
  const Eigen::MatrixXcd diff = (u1 * u2).mat - phase * u12.mat;
  double defect = 0.0;
  for (int i = 0; i < 25; ++i)
    for (int j = 0; j < 25; ++j)
      defect = std::max(defect, std::abs(diff(i, j)));
  CHECK(defect <= 1e-8);
}

TEST_CASE("(q,p) parametrisation") {
  const gkl::DisplacementParams dp = gkl::DisplacementParams::from_qp(0.9,
                                                                      -0.55);
  CHECK(dp.q() == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(dp.p() == doctest::Approx(-0.55).epsilon(1e-15));

  const gkl::OperatorMatrix a = gkl::displacement_qp(0.9, -0.55,
                                                     FockSpace{32});
  const gkl::OperatorMatrix b = gkl::displacement_u(dp.z, FockSpace{32});
  CHECK(max_abs((a - b).mat) <= 1e-10);
  CHECK(a.is_unitary(1e-10));
}

TEST_CASE("two-mode coherent states") {
  SUBCASE("vacuum at zero labels") {
    const gkl::TwoModeCs cs = gkl::two_mode_cs(cplx{0.0, 0.0}, cplx{0.0, 0.0},
                                               FockSpace{6}, FockSpace{6});
    CHECK(std::abs(cs.amplitude(0, 0) - 1.0) == 0.0);
    CHECK(cs.vec.squaredNorm() == doctest::Approx(1.0));
  }

  SUBCASE("closed amplitude at (2,1) for z = 1, z' = i") {
    // z_bar' = -i, so the amplitude is e^{-1} (1/sqrt(2)) (-i).
    const gkl::TwoModeCs cs = gkl::two_mode_cs(cplx{1.0, 0.0}, cplx{0.0, 1.0},
                                               FockSpace{24}, FockSpace{24});
    const cplx expect = std::exp(-1.0) / std::sqrt(2.0) * cplx{0.0, -1.0};
    CHECK(std::abs(cs.amplitude(2, 1) - expect) <= 1e-10);
  }

  SUBCASE("matches the closed product formula for n + l <= 20") {
    const cplx z{1.0, 0.0}, zp{0.0, 1.0};
    const gkl::TwoModeCs cs =
        gkl::two_mode_cs(z, zp, FockSpace{24}, FockSpace{24});
    double defect = 0.0;
    for (int n = 0; n <= 20; ++n)
      for (int l = 0; n + l <= 20; ++l)
        defect = std::max(defect,
                          std::abs(cs.amplitude(n, l) -
                                   gkl::two_mode_closed_amplitude(z, zp, n,
                                                                  l)));
    CHECK(defect <= 1e-10);
  }

  SUBCASE("unit norm") {
    const gkl::TwoModeCs cs =
        gkl::two_mode_cs(cplx{0.7, 0.2}, cplx{-0.4, 0.6}, FockSpace{22},
                         FockSpace{22});
    CHECK(std::abs(cs.vec.squaredNorm() - 1.0) <= 1e-10);
  }
}

TEST_CASE("gk relabeling") {
  SUBCASE("polar forms") {
    auto [z0, zp0] = gkl::gk_relabel(0.0, 1.3, 0.0, 0.0);
    CHECK(std::abs(z0) == 0.0);
    auto [z, zp] = gkl::gk_relabel(4.0, M_PI / 2.0, 1.0, 0.0);
    CHECK(std::abs(z - cplx{0.0, -2.0}) <= 1e-15);
    CHECK(std::abs(zp - cplx{1.0, 0.0}) <= 1e-15);
  }

  SUBCASE("cross-path agreement with the gkcs coefficients") {
    const double J = 1.5, gamma = 0.7, Jp = 1.0, gammap = 0.4;
    auto [z, zp] = gkl::gk_relabel(J, gamma, Jp, gammap);
    for (int l : {0, 2}) {
      const gkl::GkCsLabel label{J, gamma, Jp, gammap, l, 0.8, 0.3, 1.0};
      const gkl::CompositeCs cs = gkl::build_cs(label, 23);
      const gkl::TwoModeCs tm =
          gkl::two_mode_cs(z, zp, FockSpace{24}, FockSpace{24});
      double defect = 0.0;
      for (int n = 0; n <= 20; ++n)
        defect = std::max(defect,
                          std::abs(cs.discrete.coeffs(n) - tm.amplitude(n, l)));
      CHECK(defect <= 1e-10);
    }
  }
}

TEST_CASE("lattice displacement") {
  std::vector<cplx> samples(48);
  for (int i = 0; i < 48; ++i)
    samples[i] = cplx{std::sin(0.4 * i), std::cos(0.9 * i)};
  const double h = 0.5;

  SUBCASE("zero shift is the identity") {
    const auto out = gkl::infinitesimal_displacement(samples, 0.0, h);
    for (int i = 0; i < 48; ++i) CHECK(out[i] == samples[i]);
  }

  SUBCASE("shift then unshift restores exactly") {
    const auto fwd = gkl::infinitesimal_displacement(samples, 7 * h, h);
    const auto back = gkl::infinitesimal_displacement(fwd, -7 * h, h);
    for (int i = 0; i < 48; ++i) CHECK(back[i] == samples[i]);
    // The shift permutes the samples, so the multiset of moduli is
    // untouched and the norm is preserved exactly.
    std::vector<double> m0, m1;
    for (int i = 0; i < 48; ++i) {
      m0.push_back(std::norm(samples[i]));
      m1.push_back(std::norm(fwd[i]));
    }
    std::sort(m0.begin(), m0.end());
    std::sort(m1.begin(), m1.end());
    CHECK(m0 == m1);
  }

  SUBCASE("plane waves pick up the translation phase") {
    const int npts = 120;
    const double step = 0.1;
    const double alpha = 2.0 * M_PI * 4.0 / (npts * step);
    std::vector<cplx> wave(npts);
    for (int i = 0; i < npts; ++i) wave[i] = std::polar(1.0, alpha * i * step);
    const double eps = 6 * step;
    const auto shifted = gkl::infinitesimal_displacement(wave, eps, step);
    for (int i = 0; i < npts; ++i)
      CHECK(std::abs(shifted[i] - std::polar(1.0, -alpha * eps) * wave[i]) <=
            1e-12);
  }

  SUBCASE("non-commensurate shifts are rejected") {
    CHECK_THROWS_AS(gkl::infinitesimal_displacement(samples, 0.37, h),
                    gkl::ParameterError);
  }
}

TEST_CASE("weyl relation across random displacements") {
  std::mt19937 rng(90210);
  std::uniform_real_distribution<double> amp(0.05, 0.6);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  const int n = 40;
  for (int trial = 0; trial < 10; ++trial) {
    const cplx z1 = std::polar(amp(rng), angle(rng));
    const cplx z2 = std::polar(amp(rng), angle(rng));
    INFO("z1=", z1.real(), "+", z1.imag(), "i z2=", z2.real(), "+",
         z2.imag(), "i");
    const gkl::OperatorMatrix lhs = gkl::displacement_u(z1, FockSpace{n}) *
                                    gkl::displacement_u(z2, FockSpace{n});
    const gkl::OperatorMatrix rhs =
        gkl::displacement_u(z1 + z2, FockSpace{n});
    const cplx phase = std::polar(1.0, std::imag(z1 * std::conj(z2)));
    const Eigen::MatrixXcd diff = lhs.mat - phase * rhs.mat;
    double defect = 0.0;
    for (int i = 0; i < 25; ++i)
      for (int j = 0; j < 25; ++j)
        defect = std::max(defect, std::abs(diff(i, j)));
    CHECK(defect <= 1e-8);
  }
}

TEST_CASE("combined unitary-operator coherent state") {
  const cplx f{0.6, 0.0}, g{0.0, 0.8};
  const double J = 1.2, gamma = 0.5, Jp = 0.9, gammap = 1.1;
  auto [z, zp] = gkl::gk_relabel(J, gamma, Jp, gammap);

  for (int l : {0, 1, 4}) {
    const gkl::UnitaryCsPieces pieces =
        gkl::unitary_cs(z, zp, l, f, g, 0.4, 0.64, 0.3, 1.0, 40);
    // Discrete piece: f times the two-mode closed amplitudes at fixed l.
    double defect = 0.0;
    for (int n = 0; n <= 15; ++n)
      defect = std::max(defect,
                        std::abs(pieces.discrete(n) -
                                 f * gkl::two_mode_closed_amplitude(z, zp, n,
                                                                    l)));
    CHECK(defect <= 1e-10);
    // |f|^2 + |g|^2 = 1 style weight bookkeeping on orthogonal summands.
    const double expect_disc = std::norm(f) * std::exp(-Jp) *
                               std::pow(Jp, l) / std::tgamma(l + 1.0);
    CHECK(std::abs(pieces.discrete_norm_sq - expect_disc) <= 1e-10);
    CHECK(std::abs(pieces.continuous_norm_sq - std::norm(g)) <= 1e-9);
    CHECK(std::abs(pieces.total_norm_sq -
                   (expect_disc + std::norm(g))) <= 1e-9);
  }

  // With the Gaussian default profile the continuous amplitude reproduces
  // the K1^E e^{-beta E^2/2} family (K = K1^2) up to a constant phase.
  const double K1 = 0.8, beta = 1.0;
  const gkl::UnitaryCsPieces pieces =
      gkl::unitary_cs(z, zp, 0, f, g, 0.0, K1 * K1, 0.3, beta, 40);
  const gkl::ContinuousCs ref{K1, -0.3, beta,
                              gkl::half_line_gaussian(beta, std::log(K1))};
  const double r0 = std::abs(pieces.continuous_amplitude(0.3)) /
                    std::abs(ref.amplitude(0.3));
  for (double e : {0.0, 0.7, 1.4, 2.2}) {
    const double r = std::abs(pieces.continuous_amplitude(e)) /
                     std::abs(ref.amplitude(e));
    CHECK(r == doctest::Approx(r0).epsilon(1e-9));
  }
}
