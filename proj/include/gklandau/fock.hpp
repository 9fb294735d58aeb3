#pragma once

// Truncated Fock-space operators: ladder pairs, quadratures, helicity modes,
// commutators and the dense matrix exponential. Matrices are immutable value
// types; all constructions are pure.

#include <Eigen/Dense>
#include <vector>

#include "gklandau/numerics.hpp"

namespace gkl {

class SpaceMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ModelParams {
  double mass = 1.0;
  double omega_c = 1.0;
  double lambda = 0.0;
  double hbar = 1.0;
  double beta = 1.0;

  // lambda_bar = lambda * sqrt(omega_c / M), defined with the helicity
  // Hamiltonians; always recomputed, never stored.
  double lambda_bar() const { return lambda * std::sqrt(omega_c / mass); }
  void validate() const;
};

struct FockSpace {
  int dim;  // levels 0 .. dim-1, dim >= 2

  void validate() const;
};

struct OperatorMatrix {
  Eigen::MatrixXcd mat;
  std::vector<int> factor_dims;  // {N} or {N1, N2}

  int dim() const { return static_cast<int>(mat.rows()); }
  bool same_space(const OperatorMatrix& other) const {
    return factor_dims == other.factor_dims;
  }
  OperatorMatrix adjoint() const { return {mat.adjoint(), factor_dims}; }
  bool is_hermitian(double tol = 1e-10) const;
  bool is_unitary(double tol = 1e-10) const;

  static OperatorMatrix identity(const std::vector<int>& dims);
  static OperatorMatrix zero(const std::vector<int>& dims);
};

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(cplx s, const OperatorMatrix& a);

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b);
// Promotes a single-mode operator to a two-mode space; factor 0 acts as
// op (x) I, factor 1 as I (x) op.
OperatorMatrix embed(const OperatorMatrix& op, int factor, int other_dim);

// Indices whose every factor level is below the top kept level. Commutator
// identities are asserted on this block since truncation corrupts exactly
// the top row/column of each mode.
std::vector<int> interior_indices(const std::vector<int>& factor_dims);
double max_abs_interior(const OperatorMatrix& a);
// max |A_ij - s*delta_ij| over the interior block.
double max_abs_interior_vs_identity(const OperatorMatrix& a, cplx s);

struct LadderPair {
  OperatorMatrix lower;
  OperatorMatrix raise;
};

// <n-1|lower|n> = scale * sqrt(n); raise = lower^dagger.
LadderPair ladder(FockSpace space, double scale);

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

enum class QuadratureMode { q1p1, q1p1_tilde, q2p2, q2p2_tilde };

struct QuadraturePair {
  OperatorMatrix q;
  OperatorMatrix p;
};

// Q = (lower + raise)/sqrt(2), P = i(raise - lower)/sqrt(2) with mode scale
// sqrt(2 M hbar omega_c); [Q, P] = 2 i M hbar omega_c on interior levels.
QuadraturePair quadratures(FockSpace space, const ModelParams& params,
                           QuadratureMode mode);

// The eight helicity ladder operators plus the helicity quadratures they are
// built from. Plus-sector operators act on factor 0, minus-sector on
// factor 1; [A_pm, A*_pm] = 2 and cross-sector commutators vanish.
struct HelicityOps {
  OperatorMatrix a_plus, a_plus_star;
  OperatorMatrix a_minus, a_minus_star;
  OperatorMatrix at_plus, at_plus_star;
  OperatorMatrix at_minus, at_minus_star;
  OperatorMatrix q_plus, p_plus, qt_plus, pt_plus;
  OperatorMatrix q_minus, p_minus, qt_minus, pt_minus;
};

HelicityOps helicity_ops(FockSpace factor0, FockSpace factor1);

// Scaling-and-squaring Pade exponential; Hermitian and skew-Hermitian inputs
// take the eigendecomposition path, which keeps exp(skew) unitary.
OperatorMatrix matrix_exponential(const OperatorMatrix& a);
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a);

}  // namespace gkl
