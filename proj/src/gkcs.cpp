#include "gklandau/gkcs.hpp"

#include <cmath>

namespace gkl {

namespace {

double log_factorial(int n) { return std::lgamma(n + 1.0); }

// log of J^{n/2} / sqrt(n!); -inf when J == 0 and n > 0.
double half_log_poisson(double J, int n) {
  if (n == 0) return 0.0;
  if (J == 0.0) return -std::numeric_limits<double>::infinity();
  return 0.5 * (n * std::log(J) - log_factorial(n));
}

// Hint for envelopes exp(c1 E - c2 E^2): Gaussian of rate c2 peaked at
// c1 / (2 c2).
DecayHint continuous_hint(double c1, double c2) {
  return DecayHint::gaussian(c2, std::max(0.0, 0.5 * c1 / c2));
}

}  // namespace

void GkCsLabel::validate() const {
  if (J < 0.0 || Jp < 0.0) throw ParameterError("J and J' must be >= 0");
  if (l < 0) throw ParameterError("l must be >= 0");
  if (!(K1 > 0.0)) throw ParameterError("K1 must be positive");
  if (!(beta > 0.0)) throw ParameterError("beta must be positive");
  if (!std::isfinite(gamma) || !std::isfinite(gammap) ||
      !std::isfinite(theta1))
    throw ParameterError("phases must be finite");
}

DiscreteNorm discrete_norm(double J, double Jp, int n_max) {
  if (J < 0.0 || Jp < 0.0) throw ParameterError("J and J' must be >= 0");
  if (n_max < 0) throw ParameterError("n_max must be >= 0");
  auto truncated = [n_max](double x) {
    double term = 1.0, acc = 1.0;
    for (int n = 1; n <= n_max; ++n) {
      term *= x / n;
      acc += term;
    }
    return acc;
  };
  return {std::exp(J), std::exp(Jp), truncated(J), truncated(Jp)};
}

double discrete_tail_bound(double J, int n_max) {
  if (J < 0.0) throw ParameterError("J must be >= 0");
  if (J == 0.0) return 0.0;
  if (J >= n_max + 2.0) return std::numeric_limits<double>::infinity();
  // e^{-J} J^{n_max+1}/(n_max+1)! * (1 - J/(n_max+2))^{-1}
  const double log_lead =
      -J + (n_max + 1.0) * std::log(J) - log_factorial(n_max + 1);
  return std::exp(log_lead) / (1.0 - J / (n_max + 2.0));
}

double continuous_norm_general(double K1, double beta) {
  if (!(K1 > 0.0) || !(beta > 0.0))
    throw ParameterError("continuous_norm requires K1 > 0 and beta > 0");
  const double lk = std::log(K1);
  return 0.5 * std::sqrt(M_PI / beta) * std::exp(lk * lk / beta) *
         erfc(-lk / std::sqrt(beta));
}

double continuous_norm_paper(double K1, double beta) {
  if (!(K1 > 0.0) || !(beta > 0.0))
    throw ParameterError("continuous_norm requires K1 > 0 and beta > 0");
  const double lk = std::log(K1);
  return 0.5 * std::sqrt(M_PI / beta) * std::exp(lk * lk / beta) *
         erfc(std::abs(lk) / std::sqrt(beta));
}

ContinuousNorm continuous_norm(double K1, double beta, double rel_tol) {
  const double general = continuous_norm_general(K1, beta);
  const double paper = continuous_norm_paper(K1, beta);
  const double lk = std::log(K1);
  auto f = [lk, beta](double e) -> cplx {
    return std::exp(2.0 * e * lk - beta * e * e);
  };
  const IntegrationResult oracle = integrate_half_line(
      f, 0.0, Tolerance{0.0, 1e-12}, continuous_hint(2.0 * lk, beta));
  const double ref = oracle.value.real();
  // Keep "math wrong" distinct from "integration too coarse".
  if (oracle.error > rel_tol * std::abs(ref) / 3.0)
    throw NumericError(
        "continuous_norm oracle error exceeds a third of the tolerance");
  ContinuousNorm out;
  out.general_form = general;
  out.paper_form = paper;
  out.oracle = ref;
  out.oracle_error = oracle.error;
  out.general_matches = std::abs(general - ref) <= rel_tol * std::abs(ref);
  out.paper_matches = std::abs(paper - ref) <= rel_tol * std::abs(ref);
  return out;
}

cplx ContinuousCs::amplitude(double E) const {
  const double n = std::sqrt(continuous_norm_general(K1, beta));
  const double mag = std::exp(E * std::log(K1) - 0.5 * beta * E * E) / n;
  return mag * std::polar(1.0, -theta1 * E);
}

double ContinuousCs::norm_sq_rule() const {
  const double lk = std::log(K1);
  const double n2 = continuous_norm_general(K1, beta);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double e = rule.nodes[i];
    acc += rule.weights[i] * std::exp(2.0 * e * lk - beta * e * e);
  }
  return acc / n2;
}

double ContinuousCs::norm_sq_adaptive() const {
  const double lk = std::log(K1);
  const double n2 = continuous_norm_general(K1, beta);
  auto f = [&](double e) -> cplx {
    return std::exp(2.0 * e * lk - beta * e * e);
  };
  const IntegrationResult r = integrate_half_line(
      f, 0.0, Tolerance{0.0, 1e-12}, continuous_hint(2.0 * lk, beta));
  return r.value.real() / n2;
}

CompositeCs build_cs(const GkCsLabel& label, int n_max) {
  label.validate();
  if (n_max < 1) throw ParameterError("n_max must be >= 1");
  const double tail = discrete_tail_bound(label.J, n_max);
  if (!(tail < 1e-12)) {
    int m = n_max;
    while (m < 4000 && !(discrete_tail_bound(label.J, m) < 1e-12)) ++m;
    throw TruncationError("discrete tail bound exceeds 1e-12", m);
  }

  DiscreteCs disc;
  disc.l = label.l;
  disc.tail_bound = tail;
  disc.coeffs.resize(n_max + 1);
  const double log_norm = -0.5 * (label.J + label.Jp);
  const double l_part = half_log_poisson(label.Jp, label.l);
  for (int n = 0; n <= n_max; ++n) {
    const double lg = log_norm + l_part + half_log_poisson(label.J, n);
    const double mag = std::isfinite(lg) ? std::exp(lg) : 0.0;
    disc.coeffs(n) =
        mag * std::polar(1.0, label.l * label.gammap - n * label.gamma);
  }

  ContinuousCs cont;
  cont.K1 = label.K1;
  cont.theta1 = label.theta1;
  cont.beta = label.beta;
  cont.rule = half_line_gaussian(label.beta, std::log(label.K1));

  return {label, disc, cont};
}

namespace {

cplx continuous_overlap(const ContinuousCs& a, const ContinuousCs& b,
                        double extra_phase_a = 0.0) {
  // integrand conj(amp_a e^{-i E extra_phase_a}) * amp_b
  const double la = std::log(a.K1), lb = std::log(b.K1);
  const double na = std::sqrt(continuous_norm_general(a.K1, a.beta));
  const double nb = std::sqrt(continuous_norm_general(b.K1, b.beta));
  const double beta_avg = 0.5 * (a.beta + b.beta);
  const double phase = a.theta1 + extra_phase_a - b.theta1;
  auto f = [&](double e) -> cplx {
    const double mag = std::exp(e * (la + lb) - beta_avg * e * e);
    return mag * std::polar(1.0, phase * e);
  };
  const IntegrationResult r = integrate_half_line(
      f, 0.0, Tolerance{1e-14, 1e-13}, continuous_hint(la + lb, beta_avg));
  return r.value / (na * nb);
}

}  // namespace

cplx cs_overlap(const CompositeCs& a, const CompositeCs& b) {
  if (a.discrete.l != b.discrete.l) return {0.0, 0.0};
  const int n = static_cast<int>(
      std::min(a.discrete.coeffs.size(), b.discrete.coeffs.size()));
  cplx disc{0.0, 0.0};
  for (int i = 0; i < n; ++i)
    disc += std::conj(a.discrete.coeffs(i)) * b.discrete.coeffs(i);
  return disc * continuous_overlap(a.continuous, b.continuous);
}

double norm_sq(const CompositeCs& cs) {
  return cs.discrete.norm_sq() * cs.continuous.norm_sq_adaptive();
}

double family_norm_sq(const GkCsLabel& label, int n_max, int l_max) {
  label.validate();
  const double cont = build_cs(label, n_max).continuous.norm_sq_adaptive();
  double disc = 0.0;
  for (int l = 0; l <= l_max; ++l) {
    GkCsLabel member = label;
    member.l = l;
    disc += build_cs(member, n_max).discrete.norm_sq();
  }
  return disc * cont;
}

GkCsLabel evolve(const GkCsLabel& label, double t, const ModelParams& params) {
  params.validate();
  GkCsLabel out = label;
  out.gamma = label.gamma + params.omega_c * t;
  out.theta1 = label.theta1 + t;
  return out;
}

EvolutionCheck evolution_check(const GkCsLabel& label, double t,
                               const ModelParams& params, int n_max) {
  const CompositeCs start = build_cs(label, n_max);
  const CompositeCs evolved = build_cs(evolve(label, t, params), n_max);

  // exp(-i t H_D) on the discrete coefficients via the matrix exponential of
  // the diagonal shifted Hamiltonian.
  const int dim = static_cast<int>(start.discrete.coeffs.size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) h(k, k) = params.omega_c * k;
  const Eigen::MatrixXcd u = matrix_exponential(
      Eigen::MatrixXcd(cplx{0.0, -t} * h));
  const Eigen::VectorXcd op_coeffs = u * start.discrete.coeffs;

  const cplx disc_cross = (op_coeffs.adjoint() * evolved.discrete.coeffs)(0);
  const cplx cont_cross =
      continuous_overlap(start.continuous, evolved.continuous, t);
  const double op_nsq =
      op_coeffs.squaredNorm() * start.continuous.norm_sq_adaptive();
  const double lab_nsq =
      evolved.discrete.norm_sq() * evolved.continuous.norm_sq_adaptive();
  const cplx cross = disc_cross * cont_cross;

  EvolutionCheck out;
  const double diff_sq = op_nsq + lab_nsq - 2.0 * cross.real();
  out.norm_defect = std::sqrt(std::max(0.0, diff_sq));
  out.fidelity_deficit =
      1.0 - std::abs(cross) / std::sqrt(op_nsq * lab_nsq);
  return out;
}

double action_identity_discrete(const GkCsLabel& label,
                                const ModelParams& params, int n_max,
                                int l_max) {
  label.validate();
  params.validate();
  double acc = 0.0;
  for (int l = 0; l <= l_max; ++l) {
    GkCsLabel member = label;
    member.l = l;
    const CompositeCs cs = build_cs(member, n_max);
    for (int n = 0; n < cs.discrete.coeffs.size(); ++n)
      acc += std::norm(cs.discrete.coeffs(n)) * params.omega_c * n;
  }
  return acc;
}

double action_discrete_tail(const GkCsLabel& label, const ModelParams& params,
                            int n_max, int l_max) {
  const double tn = discrete_tail_bound(label.J, n_max > 0 ? n_max - 1 : 0);
  const double tl = discrete_tail_bound(label.Jp, l_max);
  return params.omega_c * label.J * (tn + tl);
}

double action_continuous(double K1, double beta) {
  if (!(K1 > 0.0) || !(beta > 0.0))
    throw ParameterError("action_continuous requires K1 > 0 and beta > 0");
  const double lk = std::log(K1);
  auto weighted = [&](double e) -> cplx {
    return e * std::exp(2.0 * e * lk - beta * e * e);
  };
  auto plain = [&](double e) -> cplx {
    return std::exp(2.0 * e * lk - beta * e * e);
  };
  const DecayHint hint = continuous_hint(2.0 * lk, beta);
  const Tolerance tol{0.0, 1e-12};
  const double num = integrate_half_line(weighted, 0.0, tol, hint).value.real();
  const double den = integrate_half_line(plain, 0.0, tol, hint).value.real();
  return num / den;
}

double invert_action(double target, double beta) {
  if (!(beta > 0.0)) throw ParameterError("invert_action requires beta > 0");
  if (!(target > 0.0))
    throw InversionError("target action must be positive");
  double lo = 1e-4, hi = 4.0;
  while (action_continuous(hi, beta) < target) {
    hi *= 2.0;
    if (hi > 1e9)
      throw InversionError("bracket expansion failed; target action too large");
  }
  while (action_continuous(lo, beta) > target) {
    lo *= 0.25;
    if (lo < 1e-30)
      throw InversionError("bracket expansion failed; target action too small");
  }
  // Monotonicity check on the bracket before bisecting.
  double prev = action_continuous(lo, beta);
  for (int i = 1; i <= 8; ++i) {
    const double k = lo * std::pow(hi / lo, i / 8.0);
    const double v = action_continuous(k, beta);
    if (v < prev - 1e-12)
      throw InversionError("action is not monotone on the bracket");
    prev = v;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (action_continuous(mid, beta) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-12 * hi) break;
  }
  return std::sqrt(lo * hi);
}

double sigma_weight(double K1, double beta) {
  if (!(K1 > 0.0) || !(beta > 0.0))
    throw ParameterError("sigma_weight requires K1 > 0 and beta > 0");
  const double lk = std::log(K1);
  return std::exp(-lk * lk / beta) / (K1 * std::sqrt(beta * M_PI));
}

RoiDefects resolution_of_identity_check(int n_max, int l, double e_max,
                                        double beta, int gl_order,
                                        int e_samples) {
  if (n_max < 0 || l < 0) throw ParameterError("n_max and l must be >= 0");
  if (!(beta > 0.0)) throw ParameterError("beta must be positive");
  if (e_samples < 2) throw ParameterError("need at least 2 energy samples");
  if (2 * gl_order - 1 < std::max(n_max, l))
    throw ParameterError("Gauss-Laguerre order too small for the moments");

  const QuadratureRule rule = gauss_laguerre(gl_order);
  double disc = 0.0;
  for (int n = 0; n <= std::max(n_max, l); ++n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] *
             std::exp(n * std::log(rule.nodes[i]) - log_factorial(n));
    disc = std::max(disc, std::abs(acc - 1.0));
  }

  // sigma moment via t = ln K1: (1/sqrt(beta pi)) Int e^{2 E t - t^2/beta} dt.
  double cont = 0.0;
  for (int s = 0; s < e_samples; ++s) {
    const double e = e_max * s / (e_samples - 1.0);
    auto f = [&](double t) -> cplx {
      return std::exp(2.0 * e * t - t * t / beta);
    };
    const IntegrationResult r =
        integrate_real_line(f, Tolerance{0.0, 1e-12},
                            DecayHint::gaussian(1.0 / beta, beta * e));
    const double moment = r.value.real() / std::sqrt(beta * M_PI);
    // The stated tolerance for the sigma moments is 1e-6; quadrature noise
    // must stay well below it (one third, per the error budget).
    const double scaled_err =
        r.error / std::sqrt(beta * M_PI) * std::exp(-beta * e * e);
    if (scaled_err > 1e-6 / 3.0)
      throw NumericError("sigma moment quadrature error exceeds a third of "
                         "the tolerance");
    cont = std::max(cont, std::abs(moment * std::exp(-beta * e * e) - 1.0));
  }
  return {disc, cont};
}

}  // namespace gkl
