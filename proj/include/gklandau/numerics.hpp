#pragma once

// Quadrature rules, error-function helpers and adaptive panel integration.
// Everything here is pure and allocation-light; rules are immutable after
// construction and safe to share across threads.

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkl {

using cplx = std::complex<double>;

struct Tolerance {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;

  void validate() const;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when the panel budget is exhausted; carries the best estimate so
// callers can decide whether it is still usable.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, cplx best, double err)
      : std::runtime_error(what), best_estimate(best), error_estimate(err) {}

  cplx best_estimate;
  double error_estimate;
};

// A truncated expansion would drop more tail mass than the caller allows.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int suggested)
      : std::runtime_error(what), suggested_n_max(suggested) {}

  int suggested_n_max;
};

enum class RuleKind {
  gauss_laguerre,
  half_line_gaussian,
  adaptive_panel,
  periodic_trapezoid,
};

struct QuadratureRule {
  RuleKind kind = RuleKind::adaptive_panel;
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;

  double integrate(const std::function<double(double)>& f) const;
  cplx integrate_complex(const std::function<cplx(double)>& f) const;
};

// Gauss-Laguerre rule for the weight e^{-J} on (0, inf), built by
// Golub-Welsch on the Laguerre Jacobi matrix. Exact (to roundoff) for
// polynomials of degree <= 2*order - 1.
QuadratureRule gauss_laguerre(int order);

// Uniform rule on [0, 2pi); spectrally accurate for trigonometric
// polynomials of degree < points.
QuadratureRule periodic_trapezoid(int points);

// Composite Gauss-Legendre panels covering the effective support of
// integrands shaped like g(E) * exp(-beta E^2 + 2 E log_k) on (0, inf).
// The weight stays inside the integrand; the rule only places panels where
// the Gaussian factor is non-negligible.
QuadratureRule half_line_gaussian(double beta, double log_k,
                                  int points_per_panel = 16);

struct IntegrationResult {
  cplx value{0.0, 0.0};
  double error = 0.0;
  int panels = 0;
};

struct DecayHint {
  enum class Kind { none, gaussian, exponential };
  Kind kind = Kind::none;
  double rate = 1.0;    // f ~ exp(-rate*(x-center)^2) or exp(-rate*(x-center))
  double center = 0.0;  // location of the integrand peak

  static DecayHint gaussian(double rate, double center = 0.0) {
    return {Kind::gaussian, rate, center};
  }
  static DecayHint exponential(double rate, double center = 0.0) {
    return {Kind::exponential, rate, center};
  }
};

// Adaptive bisection with 15-point Gauss-Legendre panels on [a, b].
IntegrationResult integrate_adaptive(const std::function<cplx(double)>& f,
                                     double a, double b, Tolerance tol,
                                     int max_panels = 20000);

// Half-line integral over (a, inf). With a decay hint the tail is cut where
// the hinted envelope drops below ~1e-20; without one the interval is mapped
// to (0,1) via x = a + t/(1-t).
IntegrationResult integrate_half_line(const std::function<cplx(double)>& f,
                                      double a, Tolerance tol,
                                      DecayHint hint = {},
                                      int max_panels = 20000);

// Whole-line integral; requires a decay hint to place the cutoffs.
IntegrationResult integrate_real_line(const std::function<cplx(double)>& f,
                                      Tolerance tol, DecayHint hint,
                                      int max_panels = 20000);

// Runs the adaptive integrator and flattens the final refinement into a
// reusable nodes/weights rule (kind adaptive_panel).
QuadratureRule adaptive_panel_rule(const std::function<cplx(double)>& f,
                                   double a, double b, Tolerance tol,
                                   int max_panels = 20000);

// Complementary error function; input must be finite.
double erfc(double x);
double erf(double x);

}  // namespace gkl
