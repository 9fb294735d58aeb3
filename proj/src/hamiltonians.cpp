#include "gklandau/hamiltonians.hpp"

#include <cmath>

namespace gkl {

namespace {

HamiltonianBundle build_split(const ModelParams& params, int n_b, int n_d) {
  params.validate();
  if (n_b < 2 || n_d < 2)
    throw ParameterError("split Hamiltonian needs dims >= 2");
  const double scale =
      std::sqrt(2.0 * params.mass * params.hbar * params.omega_c);
  auto [b, bd] = ladder(FockSpace{n_b}, scale);
  auto [d, dd] = ladder(FockSpace{n_d}, scale);

  const double quarter_m = 1.0 / (4.0 * params.mass);
  OperatorMatrix osc_single{
      quarter_m * (bd.mat * b.mat + b.mat * bd.mat), {n_b}};
  OperatorMatrix osc = embed(osc_single, 0, n_d);

  const double lin_coeff = params.lambda / (2.0 * params.mass);
  const double const_term =
      params.lambda * params.lambda / (2.0 * params.mass);
  OperatorMatrix lin_single{lin_coeff * (dd.mat + d.mat), {n_d}};
  OperatorMatrix linear =
      embed(lin_single, 1, n_b) +
      cplx{const_term, 0.0} * OperatorMatrix::identity({n_b, n_d});

  return {osc - linear, osc, linear};
}

}  // namespace

HamiltonianBundle build_h1(const ModelParams& params, int n_b, int n_d) {
  return build_split(params, n_b, n_d);
}

HamiltonianBundle build_h2(const ModelParams& params, int n_b, int n_d) {
  // The frak-mode ladders obey the same commutation relations, so the
  // truncated matrices coincide with the H1 family.
  return build_split(params, n_b, n_d);
}

SpectrumEntry spectrum_h1(int n, double alpha, const ModelParams& params) {
  params.validate();
  if (n < 0) throw ParameterError("spectrum_h1 requires n >= 0");
  const double energy =
      0.5 * params.hbar * params.omega_c * (2.0 * n + 1.0) -
      params.hbar * params.lambda / params.mass * alpha -
      params.lambda * params.lambda / (2.0 * params.mass);
  return {n, alpha, energy};
}

ShiftedSpectrum shifted_spectrum(int n, double alpha,
                                 const ModelParams& params) {
  params.validate();
  if (n < 0) throw ParameterError("shifted_spectrum requires n >= 0");
  return {params.omega_c * n, -params.lambda_bar() / std::sqrt(2.0) * alpha};
}

HelicityHamiltonians helicity_hamiltonians(const ModelParams& params,
                                           FockSpace factor0,
                                           FockSpace factor1) {
  params.validate();
  HelicityOps ops = helicity_ops(factor0, factor1);
  const double wc4 = params.omega_c / 4.0;
  const double half_lb = 0.5 * params.lambda_bar();
  const double const_term =
      params.lambda * params.lambda / (2.0 * params.mass);
  const OperatorMatrix id =
      OperatorMatrix::identity({factor0.dim, factor1.dim});
  const cplx i_half_lb{0.0, half_lb};

  OperatorMatrix h_plus =
      cplx{wc4, 0.0} * (ops.q_plus * ops.q_plus + ops.p_plus * ops.p_plus) -
      cplx{half_lb, 0.0} * (ops.at_minus + ops.at_minus_star) -
      cplx{const_term, 0.0} * id;
  OperatorMatrix h_minus =
      cplx{wc4, 0.0} * (ops.q_minus * ops.q_minus + ops.p_minus * ops.p_minus) -
      cplx{half_lb, 0.0} * (ops.at_plus + ops.at_plus_star) -
      cplx{const_term, 0.0} * id;
  OperatorMatrix ht_plus =
      cplx{wc4, 0.0} * (ops.qt_plus * ops.qt_plus + ops.pt_plus * ops.pt_plus) -
      i_half_lb * (ops.a_minus_star - ops.a_minus) -
      cplx{const_term, 0.0} * id;
  OperatorMatrix ht_minus =
      cplx{wc4, 0.0} *
          (ops.qt_minus * ops.qt_minus + ops.pt_minus * ops.pt_minus) -
      i_half_lb * (ops.a_plus_star - ops.a_plus) -
      cplx{const_term, 0.0} * id;
  return {h_plus, h_minus, ht_plus, ht_minus};
}

TensorDecomposition tensor_decompose_h(const ModelParams& params, int dim) {
  params.validate();
  auto [u, ud] = ladder(FockSpace{dim}, std::sqrt(2.0));
  OperatorMatrix number{ud.mat * u.mat, {dim}};  // A*A, eigenvalues 2n
  OperatorMatrix h_d{
      0.5 * params.omega_c *
          (number.mat + Eigen::MatrixXcd::Identity(dim, dim)),
      {dim}};
  TensorDecomposition out;
  out.h_d = h_d;
  out.hc_slope = -params.lambda_bar() / std::sqrt(2.0);
  out.hc_offset = -0.5 * params.lambda * params.lambda;
  return out;
}

std::vector<double> fd_oscillator_levels(int count, double half_width,
                                         double step) {
  if (count < 1) throw ParameterError("fd_oscillator_levels needs count >= 1");
  if (half_width <= 0.0 || step <= 0.0 || step >= half_width)
    throw ParameterError("fd_oscillator_levels grid is invalid");
  const int n = static_cast<int>(std::round(2.0 * half_width / step)) - 1;
  if (count > n) throw ParameterError("grid too small for requested count");
  Eigen::VectorXd diag(n), sub(n - 1);
  const double inv_h2 = 1.0 / (step * step);
  for (int i = 0; i < n; ++i) {
    const double xi = -half_width + (i + 1) * step;
    diag(i) = 2.0 * inv_h2 + xi * xi;
  }
  sub.setConstant(-inv_h2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericError("fd_oscillator_levels eigensolve failed");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = solver.eigenvalues()(i);
  return out;
}

}  // namespace gkl
