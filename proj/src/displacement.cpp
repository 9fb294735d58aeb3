#include "gklandau/displacement.hpp"

#include <cmath>

namespace gkl {

double coherent_tail_bound(double abs_z, int dim) {
  if (abs_z < 0.0) throw ParameterError("|z| must be >= 0");
  if (dim < 1) throw ParameterError("dim must be >= 1");
  const double lam = abs_z * abs_z;
  if (lam == 0.0) return 0.0;
  if (lam >= dim + 1.0) return 1.0;
  const double log_lead = -lam + dim * std::log(lam) - std::lgamma(dim + 1.0);
  return std::exp(log_lead) / (1.0 - lam / (dim + 1.0));
}

OperatorMatrix displacement_u(cplx z, FockSpace space) {
  space.validate();
  const double tail = coherent_tail_bound(std::abs(z), space.dim);
  if (!(tail < 1e-12)) {
    int m = space.dim;
    while (m < 4000 && !(coherent_tail_bound(std::abs(z), m) < 1e-12)) ++m;
    throw TruncationError("coherent tail beyond the kept levels exceeds 1e-12",
                          m);
  }
  auto [lower, raise] = ladder(space, 1.0);
  OperatorMatrix gen{z * raise.mat - std::conj(z) * lower.mat,
                     lower.factor_dims};
  return matrix_exponential(gen);
}

OperatorMatrix displacement_qp(double q, double p, FockSpace space) {
  space.validate();
  auto [lower, raise] = ladder(space, 1.0);
  const double inv_rt2 = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd qop = inv_rt2 * (lower.mat + raise.mat);
  Eigen::MatrixXcd pop = cplx{0.0, inv_rt2} * (raise.mat - lower.mat);
  OperatorMatrix gen{cplx{0.0, 1.0} * (p * qop - q * pop),
                     lower.factor_dims};
  return matrix_exponential(gen);
}

double bch_defect(cplx z, FockSpace space, int interior_cut) {
  space.validate();
  if (interior_cut < 0 || interior_cut >= space.dim)
    throw ParameterError("interior_cut must lie inside the space");
  auto [lower, raise] = ladder(space, 1.0);
  const Eigen::MatrixXcd lhs = matrix_exponential(
      Eigen::MatrixXcd(z * raise.mat - std::conj(z) * lower.mat));
  const Eigen::MatrixXcd rhs =
      std::exp(-0.5 * std::norm(z)) *
      (matrix_exponential(Eigen::MatrixXcd(z * raise.mat)) *
       matrix_exponential(Eigen::MatrixXcd(-std::conj(z) * lower.mat)));
  double defect = 0.0;
  for (int i = 0; i <= interior_cut; ++i)
    for (int j = 0; j <= interior_cut; ++j)
      defect = std::max(defect, std::abs(lhs(i, j) - rhs(i, j)));
  return defect;
}

TwoModeCs two_mode_cs(cplx z, cplx zp, FockSpace f1, FockSpace f2) {
  const OperatorMatrix u1 = displacement_u(z, f1);
  const OperatorMatrix u2 = displacement_u(std::conj(zp), f2);
  const OperatorMatrix both = kron(u1, u2);
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(f1.dim * f2.dim);
  vac(0) = 1.0;
  return {both.mat * vac, f1.dim, f2.dim};
}

cplx two_mode_closed_amplitude(cplx z, cplx zp, int n, int l) {
  if (n < 0 || l < 0) throw ParameterError("indices must be >= 0");
  const double pref = std::exp(-0.5 * (std::norm(z) + std::norm(zp)) -
                               0.5 * (std::lgamma(n + 1.0) +
                                      std::lgamma(l + 1.0)));
  return pref * std::pow(z, n) * std::pow(std::conj(zp), l);
}

std::pair<cplx, cplx> gk_relabel(double J, double gamma, double Jp,
                                 double gammap) {
  if (J < 0.0 || Jp < 0.0) throw ParameterError("J and J' must be >= 0");
  return {std::sqrt(J) * std::polar(1.0, -gamma),
          std::sqrt(Jp) * std::polar(1.0, -gammap)};
}

std::vector<cplx> infinitesimal_displacement(std::span<const cplx> samples,
                                             double epsilon, double step) {
  if (!(step > 0.0)) throw ParameterError("grid step must be positive");
  if (samples.empty()) throw ParameterError("samples must be non-empty");
  const double ratio = epsilon / step;
  const long k = std::lround(ratio);
  if (std::abs(ratio - k) > 1e-9)
    throw ParameterError("epsilon must be an integer multiple of the step");
  const long n = static_cast<long>(samples.size());
  std::vector<cplx> out(samples.size());
  for (long i = 0; i < n; ++i) {
    long src = (i - k) % n;
    if (src < 0) src += n;
    out[i] = samples[src];
  }
  return out;
}

UnitaryCsPieces unitary_cs(cplx z, cplx zp, int l, cplx f_weight,
                           cplx g_weight, double rel_phase, double K,
                           double theta, double beta, int dim,
                           const std::function<double(double)>& rho) {
  if (l < 0) throw ParameterError("l must be >= 0");
  if (!(K > 0.0)) throw ParameterError("K must be positive");
  if (!(beta > 0.0)) throw ParameterError("beta must be positive");
  const OperatorMatrix u1 = displacement_u(z, FockSpace{dim});

  UnitaryCsPieces out;
  out.l = l;
  const cplx l_factor =
      std::pow(std::conj(zp), l) *
      std::exp(-0.5 * std::norm(zp) - 0.5 * std::lgamma(l + 1.0));
  out.discrete = f_weight * l_factor * u1.mat.col(0);
  out.discrete_norm_sq = out.discrete.squaredNorm();

  // N_rho(K) = Int_0^inf K^E / rho(E) dE; with the default Gaussian profile
  // the integrand is exp(E ln K - beta E^2).
  const double lk = std::log(K);
  std::function<double(double)> density =
      rho ? rho : [beta](double e) { return std::exp(beta * e * e); };
  auto f = [lk, density](double e) -> cplx {
    return std::exp(e * lk) / density(e);
  };
  const DecayHint hint =
      rho ? DecayHint{}
          : DecayHint::gaussian(beta, std::max(0.0, 0.5 * lk / beta));
  const double n_rho =
      integrate_half_line(f, 0.0, Tolerance{0.0, 1e-12}, hint).value.real();
  if (!(n_rho > 0.0) || !std::isfinite(n_rho))
    throw NumericError("unitary_cs normalisation integral is not finite");

  const cplx cont_pref =
      g_weight * std::polar(1.0, -rel_phase) / std::sqrt(n_rho);
  out.continuous_amplitude = [cont_pref, lk, theta, density](double e) {
    return cont_pref * std::exp(0.5 * e * lk) *
           std::polar(1.0, e * theta) / std::sqrt(density(e));
  };
  auto amp_sq = [&out](double e) -> cplx {
    return std::norm(out.continuous_amplitude(e));
  };
  out.continuous_norm_sq =
      integrate_half_line(amp_sq, 0.0, Tolerance{0.0, 1e-12}, hint)
          .value.real();
  out.total_norm_sq = out.discrete_norm_sq + out.continuous_norm_sq;
  return out;
}

}  // namespace gkl
