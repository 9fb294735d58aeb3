#pragma once

// Gazeau-Klauder coherent states for the shifted Hamiltonian with discrete
// spectrum omega_c * n and continuous spectrum E >= 0, together with the
// machinery that verifies normalisation, continuity, resolution of the
// identity, temporal stability and the action identity.

#include <Eigen/Dense>

#include "gklandau/fock.hpp"

namespace gkl {

class InversionError : public NumericError {
 public:
  using NumericError::NumericError;
};

struct GkCsLabel {
  double J = 0.0;
  double gamma = 0.0;  // radians, canonical range [0, 2 pi)
  double Jp = 0.0;
  double gammap = 0.0;
  int l = 0;
  double K1 = 1.0;
  double theta1 = 0.0;
  double beta = 1.0;

  void validate() const;
};

struct DiscreteNorm {
  double n_j_sq;             // e^J
  double n_jp_sq;            // e^{J'}
  double truncated_sum_j;    // sum_{n<=n_max} J^n / n!
  double truncated_sum_jp;
};

DiscreteNorm discrete_norm(double J, double Jp, int n_max = 40);

// Upper bound on e^{-J} sum_{n > n_max} J^n / n!.
double discrete_tail_bound(double J, int n_max);

// The closed form (1/2) sqrt(pi/beta) e^{(ln K1)^2 / beta}
// erfc(-ln K1 / sqrt(beta)) of Int_0^inf e^{2 E ln K1 - beta E^2} dE.
double continuous_norm_general(double K1, double beta);
// The printed variant with erfc(|ln K1| / sqrt(beta)); coincides with the
// general form only for K1 <= 1.
double continuous_norm_paper(double K1, double beta);

struct ContinuousNorm {
  double general_form;
  double paper_form;
  double oracle;        // adaptive quadrature of the defining integral
  double oracle_error;  // integrator error estimate
  bool general_matches;
  bool paper_matches;
};

// Evaluates both printed expressions against the quadrature oracle and
// flags which of them agrees (relative tolerance rel_tol).
ContinuousNorm continuous_norm(double K1, double beta, double rel_tol = 1e-8);

struct DiscreteCs {
  int l = 0;
  Eigen::VectorXcd coeffs;  // index n = 0 .. n_max
  double tail_bound = 0.0;

  double norm_sq() const { return coeffs.squaredNorm(); }
};

struct ContinuousCs {
  double K1 = 1.0;
  double theta1 = 0.0;
  double beta = 1.0;
  QuadratureRule rule;  // half-line panels matched to the Gaussian envelope

  cplx amplitude(double E) const;
  double norm_sq_rule() const;      // by the carried rule
  double norm_sq_adaptive() const;  // by the adaptive oracle
};

struct CompositeCs {
  GkCsLabel label;
  DiscreteCs discrete;
  ContinuousCs continuous;
};

// Coefficients a_n = [N(J) N(J')]^{-1} J'^{l/2} e^{i l gamma'} J^{n/2}
// e^{-i n gamma} / sqrt(n! l!). Throws TruncationError when the n-tail
// exceeds 1e-12, carrying a sufficient n_max.
CompositeCs build_cs(const GkCsLabel& label, int n_max = 40);

// Product of the discrete overlap (orthogonal across l) and the continuous
// quadrature overlap.
cplx cs_overlap(const CompositeCs& a, const CompositeCs& b);

// Squared norm of a single-l member; the family norm sums these over l.
double norm_sq(const CompositeCs& cs);
double family_norm_sq(const GkCsLabel& label, int n_max = 40, int l_max = 60);

// Temporal stability label map: (J, gamma + omega_c t, J', gamma', l, K1,
// theta1 + t).
GkCsLabel evolve(const GkCsLabel& label, double t, const ModelParams& params);

struct EvolutionCheck {
  double norm_defect;      // || e^{-iHt}|s> - |evolve(s,t)> ||
  double fidelity_deficit; // 1 - |<op-evolved | label-evolved>| / norms
};

// Operator evolution applies exp(-i t H_D) to the discrete coefficients and
// the phase e^{-i E t} inside the continuous overlap integrand.
EvolutionCheck evolution_check(const GkCsLabel& label, double t,
                               const ModelParams& params, int n_max = 40);

// sum_l <.|H_1D|.> computed as the appendix double sum; equals omega_c J up
// to truncation.
double action_identity_discrete(const GkCsLabel& label,
                                const ModelParams& params, int n_max = 40,
                                int l_max = 60);
double action_discrete_tail(const GkCsLabel& label, const ModelParams& params,
                            int n_max, int l_max);

// H_1C(K1) = N(K1)^{-2} Int_0^inf K1^{2E} e^{-beta E^2} E dE.
double action_continuous(double K1, double beta);
// Finds K1 with action_continuous(K1, beta) = target by bisection; the
// bracket is checked for monotonicity first.
double invert_action(double target, double beta);

// Weight sigma(K1) = (1/(K1 sqrt(beta pi))) e^{-(ln K1)^2 / beta} whose
// moments reproduce e^{beta E^2}.
double sigma_weight(double K1, double beta);

struct RoiDefects {
  double discrete;    // max_n |GL moment / n! - 1|
  double continuous;  // max_E |sigma moment * e^{-beta E^2} - 1|
};

RoiDefects resolution_of_identity_check(int n_max, int l, double e_max,
                                        double beta, int gl_order = 64,
                                        int e_samples = 9);

}  // namespace gkl
