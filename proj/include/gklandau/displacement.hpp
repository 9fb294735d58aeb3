#pragma once

// Unitary displacement operators U(z) = exp(z b'^dag - z_bar b') on unit
// ladders, their BCH factorisation, the two-mode coherent states, the
// Weyl-Heisenberg (q,p) parametrisation and the exact lattice shift used for
// the continuous-spectrum construction.

#include <Eigen/Dense>
#include <span>

#include "gklandau/fock.hpp"

namespace gkl {

struct DisplacementParams {
  cplx z;

  // Consistent bijection with exp(i (p Q' - q P')): z = (q + i p)/sqrt(2).
  double q() const { return std::sqrt(2.0) * z.real(); }
  double p() const { return std::sqrt(2.0) * z.imag(); }
  static DisplacementParams from_qp(double q, double p) {
    return {cplx{q, p} / std::sqrt(2.0)};
  }
};

// Poisson tail mass of a coherent state |z> beyond the kept levels.
double coherent_tail_bound(double abs_z, int dim);

// exp(z raise - z_bar lower) with unit-scale ladders; unitary within 1e-9.
// Throws TruncationError when the coherent tail beyond dim exceeds 1e-12.
OperatorMatrix displacement_u(cplx z, FockSpace space);

// exp(i (p Q' - q P')) with Q' = (b' + b'^dag)/sqrt(2),
// P' = i(b'^dag - b')/sqrt(2).
OperatorMatrix displacement_qp(double q, double p, FockSpace space);

// Max-norm defect of exp(zR - z_bar L) vs e^{-|z|^2/2} exp(zR) exp(-z_bar L)
// on the interior block with indices <= interior_cut.
double bch_defect(cplx z, FockSpace space, int interior_cut);

struct TwoModeCs {
  Eigen::VectorXcd vec;  // index n * n2 + l
  int n1 = 0;
  int n2 = 0;

  cplx amplitude(int n, int l) const { return vec(n * n2 + l); }
};

// U1(z) U2(z') |Psi_00>; U2 carries the conjugated argument so the closed
// amplitudes are e^{-(|z|^2+|z'|^2)/2} z^n z_bar'^l / sqrt(n! l!).
TwoModeCs two_mode_cs(cplx z, cplx zp, FockSpace f1, FockSpace f2);
cplx two_mode_closed_amplitude(cplx z, cplx zp, int n, int l);

// z = sqrt(J) e^{-i gamma}, z' = sqrt(J') e^{-i gamma'}.
std::pair<cplx, cplx> gk_relabel(double J, double gamma, double Jp,
                                 double gammap);

// Exact lattice translation (D_eps phi)(x + eps) = phi(x) on a uniform
// periodic grid; eps must be an integer multiple of the grid step.
std::vector<cplx> infinitesimal_displacement(std::span<const cplx> samples,
                                             double epsilon, double step);

// Combined coherent state of the unitary-operator construction: a discrete
// U1-generated piece and a continuous weighted-integral piece living in
// orthogonal summands. The weights f, g and the density rho are caller
// supplied; rho defaults to the Gaussian e^{beta E^2} profile so that the
// continuous amplitude matches the K^{E}/e^{beta E^2/2} family.
struct UnitaryCsPieces {
  Eigen::VectorXcd discrete;  // amplitudes over n at the fixed l
  int l = 0;
  std::function<cplx(double)> continuous_amplitude;
  double discrete_norm_sq = 0.0;
  double continuous_norm_sq = 0.0;  // integrated from the amplitude
  double total_norm_sq = 0.0;
};

UnitaryCsPieces unitary_cs(
    cplx z, cplx zp, int l, cplx f_weight, cplx g_weight, double rel_phase,
    double K, double theta, double beta, int dim,
    const std::function<double(double)>& rho = {});

}  // namespace gkl
