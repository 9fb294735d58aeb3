#include "gklandau/numerics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace gkl {

void Tolerance::validate() const {
  if (abs_tol < 0.0 || rel_tol < 0.0)
    throw ParameterError("tolerance components must be nonnegative");
  if (abs_tol == 0.0 && rel_tol == 0.0)
    throw ParameterError("at least one of abs_tol, rel_tol must be positive");
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
  return acc;
}

cplx QuadratureRule::integrate_complex(
    const std::function<cplx(double)>& f) const {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
  return acc;
}

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights are
// mu0 * (first eigenvector component)^2.
void golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& subdiag,
                  double mu0, std::vector<double>& nodes,
                  std::vector<double>& weights) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw NumericError("Golub-Welsch eigensolve failed");
  const int n = static_cast<int>(diag.size());
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    weights[i] = mu0 * v0 * v0;
  }
}

struct LegendrePanelRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

constexpr int kMaxLegendreOrder = 40;

// Built once on first use; afterwards reads are lock-free, which matters on
// the threaded grid paths.
const LegendrePanelRule& legendre_rule(int order) {
  static const std::vector<LegendrePanelRule> cache = [] {
    std::vector<LegendrePanelRule> rules(kMaxLegendreOrder + 1);
    for (int n = 1; n <= kMaxLegendreOrder; ++n) {
      Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
      Eigen::VectorXd sub(std::max(n - 1, 0));
      for (int k = 1; k < n; ++k)
        sub(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
      golub_welsch(diag, sub, 2.0, rules[n].nodes, rules[n].weights);
    }
    return rules;
  }();
  if (order <= 0 || order > kMaxLegendreOrder)
    throw ParameterError("legendre order out of range");
  return cache[order];
}

cplx legendre_panel(const std::function<cplx(double)>& f, double a, double b,
                    int order) {
  const LegendrePanelRule& rule = legendre_rule(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * acc;
}

constexpr int kPanelOrder = 15;

struct AdaptiveState {
  const std::function<cplx(double)>* f;
  int max_panels;
  int panels = 0;
  cplx total{0.0, 0.0};
  double err = 0.0;
  std::vector<std::pair<double, double>>* record = nullptr;
  bool budget_hit = false;
};

void adapt(AdaptiveState& st, double a, double b, cplx whole, double local_tol,
           int depth) {
  const double mid = 0.5 * (a + b);
  const cplx left = legendre_panel(*st.f, a, mid, kPanelOrder);
  const cplx right = legendre_panel(*st.f, mid, b, kPanelOrder);
  const double diff = std::abs(whole - left - right);
  st.panels += 2;
  const bool interval_floor =
      (b - a) < 1e-13 * std::max(1.0, std::abs(mid)) || depth >= 52;
  const bool out_of_budget = st.panels >= st.max_panels;
  if (diff <= local_tol || interval_floor || out_of_budget) {
    st.total += left + right;
    st.err += diff;
    if (out_of_budget && diff > local_tol) st.budget_hit = true;
    if (st.record) {
      st.record->emplace_back(a, mid);
      st.record->emplace_back(mid, b);
    }
    return;
  }
  adapt(st, a, mid, left, 0.5 * local_tol, depth + 1);
  adapt(st, mid, b, right, 0.5 * local_tol, depth + 1);
}

IntegrationResult integrate_core(const std::function<cplx(double)>& f,
                                 double a, double b, Tolerance tol,
                                 int max_panels,
                                 std::vector<std::pair<double, double>>* record) {
  tol.validate();
  if (!std::isfinite(a) || !std::isfinite(b))
    throw ParameterError("integrate_adaptive requires finite endpoints");
  if (a == b) return {cplx{0.0, 0.0}, 0.0, 0};
  AdaptiveState st;
  st.f = &f;
  st.max_panels = max_panels;
  st.record = record;
  // Seed with a modest split so narrow features away from the midpoint are
  // not missed by the first error estimate.
  const int seed = 8;
  const double h = (b - a) / seed;
  std::vector<cplx> pieces(seed);
  double rough = 0.0;
  for (int i = 0; i < seed; ++i) {
    const double lo = a + i * h;
    const double hi = (i + 1 == seed) ? b : a + (i + 1) * h;
    pieces[i] = legendre_panel(f, lo, hi, kPanelOrder);
    rough += std::abs(pieces[i]);
  }
  st.panels = seed;
  const double tol_total =
      std::max(tol.abs_tol, tol.rel_tol * std::max(rough, 1e-300));
  for (int i = 0; i < seed; ++i) {
    const double lo = a + i * h;
    const double hi = (i + 1 == seed) ? b : a + (i + 1) * h;
    adapt(st, lo, hi, pieces[i], tol_total / seed, 0);
  }
  if (st.budget_hit)
    throw ConvergenceError("adaptive quadrature exceeded panel budget",
                           st.total, st.err);
  return {st.total, st.err, st.panels};
}

double half_line_cutoff(double a, const DecayHint& hint) {
  // Envelope below ~1e-20 at the cutoff.
  constexpr double kLogTail = 46.0;
  switch (hint.kind) {
    case DecayHint::Kind::gaussian:
      return std::max(hint.center, a) + std::sqrt(kLogTail / hint.rate);
    case DecayHint::Kind::exponential:
      return std::max(hint.center, a) + kLogTail / hint.rate;
    case DecayHint::Kind::none:
      break;
  }
  return a;
}

}  // namespace

namespace {

// Scaled Laguerre values phi_k(x) = L_k(x) e^{-x/2} for k = n and n-1,
// via the three-term recurrence (the e^{-x/2} factor passes through it).
std::pair<double, double> laguerre_scaled(int n, double x) {
  double prev = std::exp(-0.5 * x);  // phi_0
  if (n == 0) return {prev, 0.0};
  double cur = (1.0 - x) * prev;  // phi_1
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return {cur, prev};  // phi_n, phi_{n-1}
}

}  // namespace

QuadratureRule gauss_laguerre(int order) {
  if (order < 1 || order > 200)
    throw ParameterError("gauss_laguerre order must be in [1, 200]");
  QuadratureRule rule;
  rule.kind = RuleKind::gauss_laguerre;
  rule.order = order;
  Eigen::VectorXd diag(order), sub(std::max(order - 1, 0));
  for (int k = 0; k < order; ++k) diag(k) = 2.0 * k + 1.0;
  for (int k = 1; k < order; ++k) sub(k - 1) = static_cast<double>(k);
  golub_welsch(diag, sub, 1.0, rule.nodes, rule.weights);
  // The tridiagonal eigenvalues are only absolutely accurate; polish each
  // node with Newton on L_n (x L_n' = n (L_n - L_{n-1})) and rebuild the
  // weight from w_i = x_i e^{-x_i} / ((n+1) phi_{n+1}(x_i))^2, which keeps
  // the far-tail weights relatively accurate for high moments.
  for (int i = 0; i < order; ++i) {
    double x = rule.nodes[i];
    for (int it = 0; it < 4; ++it) {
      const auto [pn, pnm1] = laguerre_scaled(order, x);
      const double denom = order * (pn - pnm1);
      if (denom == 0.0) break;
      const double dx = -x * pn / denom;
      x += dx;
      if (std::abs(dx) <= 1e-15 * x) break;
    }
    rule.nodes[i] = x;
    const auto [pnp1, unused] = laguerre_scaled(order + 1, x);
    const double d = (order + 1.0) * pnp1;
    // Beyond x ~ 745 the weight drops below the smallest subnormal; clamp to
    // it so the positivity invariant survives (absolute error <= 5e-324).
    rule.weights[i] = std::max(x * std::exp(-x) / (d * d),
                               std::numeric_limits<double>::denorm_min());
  }
  return rule;
}

QuadratureRule periodic_trapezoid(int points) {
  if (points < 1) throw ParameterError("periodic_trapezoid needs >= 1 point");
  QuadratureRule rule;
  rule.kind = RuleKind::periodic_trapezoid;
  rule.order = points;
  const double two_pi = 2.0 * M_PI;
  const double w = two_pi / points;
  rule.nodes.resize(points);
  rule.weights.assign(points, w);
  for (int i = 0; i < points; ++i) rule.nodes[i] = i * w;
  return rule;
}

QuadratureRule half_line_gaussian(double beta, double log_k,
                                  int points_per_panel) {
  if (beta <= 0.0) throw ParameterError("half_line_gaussian requires beta > 0");
  if (points_per_panel < 4 || points_per_panel > 40)
    throw ParameterError("half_line_gaussian points_per_panel out of range");
  const double mu = std::max(0.0, log_k / beta);
  const double hi = mu + std::sqrt(46.0 / beta);
  const double panel_len = 1.0 / std::sqrt(beta);
  const int n_panels = std::max(4, static_cast<int>(std::ceil(hi / panel_len)));
  const LegendrePanelRule& gl = legendre_rule(points_per_panel);

  QuadratureRule rule;
  rule.kind = RuleKind::half_line_gaussian;
  rule.order = n_panels * points_per_panel;
  const double h = hi / n_panels;
  for (int p = 0; p < n_panels; ++p) {
    const double mid = (p + 0.5) * h;
    const double half = 0.5 * h;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      rule.nodes.push_back(mid + half * gl.nodes[i]);
      rule.weights.push_back(half * gl.weights[i]);
    }
  }
  return rule;
}

IntegrationResult integrate_adaptive(const std::function<cplx(double)>& f,
                                     double a, double b, Tolerance tol,
                                     int max_panels) {
  return integrate_core(f, a, b, tol, max_panels, nullptr);
}

IntegrationResult integrate_half_line(const std::function<cplx(double)>& f,
                                      double a, Tolerance tol, DecayHint hint,
                                      int max_panels) {
  if (hint.kind != DecayHint::Kind::none) {
    const double b = half_line_cutoff(a, hint);
    return integrate_core(f, a, b, tol, max_panels, nullptr);
  }
  // x = a + t/(1-t) maps (0,1) onto (a, inf); dx = dt/(1-t)^2.
  auto g = [&f, a](double t) -> cplx {
    const double om = 1.0 - t;
    const double x = a + t / om;
    return f(x) / (om * om);
  };
  return integrate_core(g, 0.0, 1.0 - 1e-12, tol, max_panels, nullptr);
}

IntegrationResult integrate_real_line(const std::function<cplx(double)>& f,
                                      Tolerance tol, DecayHint hint,
                                      int max_panels) {
  if (hint.kind == DecayHint::Kind::none)
    throw ParameterError("integrate_real_line requires a decay hint");
  const double span = hint.kind == DecayHint::Kind::gaussian
                          ? std::sqrt(46.0 / hint.rate)
                          : 46.0 / hint.rate;
  return integrate_core(f, hint.center - span, hint.center + span, tol,
                        max_panels, nullptr);
}

QuadratureRule adaptive_panel_rule(const std::function<cplx(double)>& f,
                                   double a, double b, Tolerance tol,
                                   int max_panels) {
  std::vector<std::pair<double, double>> intervals;
  integrate_core(f, a, b, tol, max_panels, &intervals);
  std::sort(intervals.begin(), intervals.end());
  const LegendrePanelRule& gl = legendre_rule(kPanelOrder);
  QuadratureRule rule;
  rule.kind = RuleKind::adaptive_panel;
  rule.order = static_cast<int>(intervals.size()) * kPanelOrder;
  rule.nodes.reserve(rule.order);
  rule.weights.reserve(rule.order);
  for (const auto& [lo, hi] : intervals) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      rule.nodes.push_back(mid + half * gl.nodes[i]);
      rule.weights.push_back(half * gl.weights[i]);
    }
  }
  return rule;
}

double erfc(double x) {
  if (!std::isfinite(x)) throw ParameterError("erfc requires finite input");
  return std::erfc(x);
}

double erf(double x) {
  if (!std::isfinite(x)) throw ParameterError("erf requires finite input");
  return std::erf(x);
}

}  // namespace gkl
