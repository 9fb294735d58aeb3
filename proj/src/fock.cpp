#include "gklandau/fock.hpp"

#include <cmath>
#include <numeric>

namespace gkl {

void ModelParams::validate() const {
  if (mass <= 0.0) throw ParameterError("mass must be positive");
  if (omega_c <= 0.0) throw ParameterError("omega_c must be positive");
  if (hbar <= 0.0) throw ParameterError("hbar must be positive");
  if (beta <= 0.0) throw ParameterError("beta must be positive");
  if (!std::isfinite(lambda)) throw ParameterError("lambda must be finite");
}

void FockSpace::validate() const {
  if (dim < 2) throw ParameterError("FockSpace dimension must be >= 2");
}

bool OperatorMatrix::is_hermitian(double tol) const {
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool OperatorMatrix::is_unitary(double tol) const {
  Eigen::MatrixXcd d = mat.adjoint() * mat;
  d -= Eigen::MatrixXcd::Identity(mat.rows(), mat.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

OperatorMatrix OperatorMatrix::identity(const std::vector<int>& dims) {
  int n = 1;
  for (int d : dims) n *= d;
  return {Eigen::MatrixXcd::Identity(n, n), dims};
}

OperatorMatrix OperatorMatrix::zero(const std::vector<int>& dims) {
  int n = 1;
  for (int d : dims) n *= d;
  return {Eigen::MatrixXcd::Zero(n, n), dims};
}

namespace {
void require_same_space(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (!a.same_space(b))
    throw SpaceMismatchError("operators live on different spaces");
}
}  // namespace

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a, b);
  return {a.mat + b.mat, a.factor_dims};
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a, b);
  return {a.mat - b.mat, a.factor_dims};
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a, b);
  return {a.mat * b.mat, a.factor_dims};
}

OperatorMatrix operator*(cplx s, const OperatorMatrix& a) {
  return {s * a.mat, a.factor_dims};
}

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
  const int ra = a.dim(), rb = b.dim();
  Eigen::MatrixXcd out(ra * rb, ra * rb);
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < ra; ++j)
      out.block(i * rb, j * rb, rb, rb) = a.mat(i, j) * b.mat;
  std::vector<int> dims = a.factor_dims;
  dims.insert(dims.end(), b.factor_dims.begin(), b.factor_dims.end());
  return {std::move(out), dims};
}

OperatorMatrix embed(const OperatorMatrix& op, int factor, int other_dim) {
  if (op.factor_dims.size() != 1)
    throw ParameterError("embed expects a single-mode operator");
  OperatorMatrix eye{Eigen::MatrixXcd::Identity(other_dim, other_dim),
                     {other_dim}};
  if (factor == 0) return kron(op, eye);
  if (factor == 1) return kron(eye, op);
  throw ParameterError("embed factor must be 0 or 1");
}

std::vector<int> interior_indices(const std::vector<int>& factor_dims) {
  std::vector<int> idx;
  if (factor_dims.size() == 1) {
    for (int i = 0; i + 1 < factor_dims[0]; ++i) idx.push_back(i);
    return idx;
  }
  if (factor_dims.size() == 2) {
    const int n1 = factor_dims[0], n2 = factor_dims[1];
    for (int i = 0; i + 1 < n1; ++i)
      for (int j = 0; j + 1 < n2; ++j) idx.push_back(i * n2 + j);
    return idx;
  }
  throw ParameterError("interior_indices supports 1 or 2 factors");
}

double max_abs_interior(const OperatorMatrix& a) {
  return max_abs_interior_vs_identity(a, cplx{0.0, 0.0});
}

double max_abs_interior_vs_identity(const OperatorMatrix& a, cplx s) {
  const std::vector<int> idx = interior_indices(a.factor_dims);
  double m = 0.0;
  for (int i : idx)
    for (int j : idx) {
      cplx v = a.mat(i, j);
      if (i == j) v -= s;
      m = std::max(m, std::abs(v));
    }
  return m;
}

LadderPair ladder(FockSpace space, double scale) {
  space.validate();
  if (!(scale > 0.0)) throw ParameterError("ladder scale must be positive");
  Eigen::MatrixXcd low = Eigen::MatrixXcd::Zero(space.dim, space.dim);
  for (int n = 1; n < space.dim; ++n) low(n - 1, n) = scale * std::sqrt(n);
  OperatorMatrix lower{low, {space.dim}};
  return {lower, lower.adjoint()};
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a, b);
  return {a.mat * b.mat - b.mat * a.mat, a.factor_dims};
}

QuadraturePair quadratures(FockSpace space, const ModelParams& params,
                           QuadratureMode) {
  params.validate();
  const double scale =
      std::sqrt(2.0 * params.mass * params.hbar * params.omega_c);
  auto [lower, raise] = ladder(space, scale);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  OperatorMatrix q{inv_sqrt2 * (lower.mat + raise.mat), lower.factor_dims};
  OperatorMatrix p{cplx{0.0, inv_sqrt2} * (raise.mat - lower.mat),
                   lower.factor_dims};
  return {q, p};
}

HelicityOps helicity_ops(FockSpace factor0, FockSpace factor1) {
  factor0.validate();
  factor1.validate();
  if (factor0.dim != factor1.dim)
    throw ParameterError("helicity_ops expects equal factor dimensions");
  // Unit ladders; the 1/sqrt(M omega_c) normalisation of the helicity
  // quadratures cancels the sqrt(2 M omega_c) mode scale exactly.
  auto [u0, u0d] = ladder(factor0, 1.0);
  auto [u1, u1d] = ladder(factor1, 1.0);
  const int d0 = factor0.dim, d1 = factor1.dim;
  const double rt2 = std::sqrt(2.0);
  const cplx i_rt2{0.0, rt2};

  OperatorMatrix a_plus = embed({rt2 * u0.mat, {d0}}, 0, d1);
  OperatorMatrix at_plus = a_plus;
  OperatorMatrix a_minus = embed({i_rt2 * u1.mat, {d1}}, 1, d0);
  OperatorMatrix at_minus = a_minus;

  OperatorMatrix q_plus = embed({u0.mat + u0d.mat, {d0}}, 0, d1);
  OperatorMatrix p_plus =
      embed({cplx{0.0, 1.0} * (u0d.mat - u0.mat), {d0}}, 0, d1);
  OperatorMatrix q_minus = embed({u1.mat + u1d.mat, {d1}}, 1, d0);
  OperatorMatrix p_minus =
      embed({cplx{0.0, 1.0} * (u1d.mat - u1.mat), {d1}}, 1, d0);

  HelicityOps ops{
      a_plus,   a_plus.adjoint(),  a_minus,  a_minus.adjoint(),
      at_plus,  at_plus.adjoint(), at_minus, at_minus.adjoint(),
      q_plus,   p_plus,            q_plus,   p_plus,
      q_minus,  p_minus,           q_minus,  p_minus,
  };
  return ops;
}

namespace {

// Diagonal Pade coefficients and scaling thresholds from Higham's method.
void pade13(const Eigen::MatrixXcd& a, Eigen::MatrixXcd& u,
            Eigen::MatrixXcd& v) {
  static const double b[] = {
      64764752532480000., 32382376266240000., 7771770303897600.,
      1187353796428800.,  129060195264000.,   10559470521600.,
      670442572800.,      33522128640.,       1323241920.,
      40840800.,          960960.,            16380.,
      182.,               1.};
  const Eigen::MatrixXcd id =
      Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  const Eigen::MatrixXcd a2 = a * a;
  const Eigen::MatrixXcd a4 = a2 * a2;
  const Eigen::MatrixXcd a6 = a4 * a2;
  Eigen::MatrixXcd tmp = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
  tmp += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  u = a * tmp;
  v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2);
  v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

Eigen::MatrixXcd expm_pade(const Eigen::MatrixXcd& a) {
  const double theta13 = 5.371920351148152;
  const double l1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  Eigen::MatrixXcd scaled = a;
  if (l1 > theta13) {
    squarings = std::max(0, static_cast<int>(
                                std::ceil(std::log2(l1 / theta13))));
    scaled *= std::pow(2.0, -squarings);
  }
  Eigen::MatrixXcd u, v;
  pade13(scaled, u, v);
  Eigen::MatrixXcd result = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

}  // namespace

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a) {
  if (!a.allFinite())
    throw NumericError("matrix_exponential requires finite entries");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double herm_defect = (a - a.adjoint()).cwiseAbs().maxCoeff();
  const double skew_defect = (a + a.adjoint()).cwiseAbs().maxCoeff();
  const double tol = 1e-14 * scale;
  if (herm_defect <= tol || skew_defect <= tol) {
    // exp(H) or exp(iH) through the spectral decomposition of the Hermitian
    // part; the latter is unitary to roundoff.
    const bool skew = skew_defect <= tol && herm_defect > tol;
    Eigen::MatrixXcd h = skew ? Eigen::MatrixXcd(a / cplx{0.0, 1.0}) : a;
    h = 0.5 * (h + Eigen::MatrixXcd(h.adjoint()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
      throw NumericError("matrix_exponential eigensolve failed");
    Eigen::VectorXcd phases(h.rows());
    for (int k = 0; k < h.rows(); ++k) {
      const double ev = es.eigenvalues()(k);
      phases(k) = skew ? std::polar(1.0, ev) : cplx{std::exp(ev), 0.0};
    }
    Eigen::MatrixXcd out = es.eigenvectors() * phases.asDiagonal() *
                           es.eigenvectors().adjoint();
    if (!out.allFinite()) throw NumericError("matrix_exponential overflowed");
    return out;
  }
  Eigen::MatrixXcd out = expm_pade(a);
  if (!out.allFinite()) throw NumericError("matrix_exponential overflowed");
  return out;
}

OperatorMatrix matrix_exponential(const OperatorMatrix& a) {
  return {matrix_exponential(a.mat), a.factor_dims};
}

}  // namespace gkl
