#pragma once

// Split Hamiltonians H1 and H2 on two-mode truncated spaces, the helicity
// Hamiltonians H_pm / Ht_pm, their discrete (x) continuous decomposition and
// the associated spectra.

#include "gklandau/fock.hpp"

namespace gkl {

struct SpectrumEntry {
  int n = 0;
  double alpha = 0.0;
  double energy = 0.0;
};

struct ShiftedSpectrum {
  double e_n = 0.0;      // omega_c * n
  double e_alpha = 0.0;  // -lambda_bar * alpha / sqrt(2)
  double total() const { return e_n + e_alpha; }
  bool nonnegative() const { return total() >= 0.0; }
};

struct HamiltonianBundle {
  OperatorMatrix total;
  OperatorMatrix oscillator_part;
  OperatorMatrix linear_part;  // total = oscillator_part - linear_part
};

// H1 = (1/4M)(b^dag b + b b^dag) (x) I - [(lambda/2M) I (x) (d^dag + d)
//      + (lambda^2/2M)] on an (n_b (x) n_d) space.
HamiltonianBundle build_h1(const ModelParams& params, int n_b, int n_d);
// Same structure in the opposite gauge (frak modes).
HamiltonianBundle build_h2(const ModelParams& params, int n_b, int n_d);

// E(n, alpha) = (hbar omega_c / 2)(2n + 1) - (hbar lambda / M) alpha
//               - lambda^2 / 2M.
SpectrumEntry spectrum_h1(int n, double alpha, const ModelParams& params);

ShiftedSpectrum shifted_spectrum(int n, double alpha,
                                 const ModelParams& params);

struct HelicityHamiltonians {
  OperatorMatrix h_plus;
  OperatorMatrix h_minus;
  OperatorMatrix ht_plus;
  OperatorMatrix ht_minus;
};

// The four helicity Hamiltonians (hbar = 1 convention of the section they
// come from); all Hermitian on the shared two-mode space.
HelicityHamiltonians helicity_hamiltonians(const ModelParams& params,
                                           FockSpace factor0,
                                           FockSpace factor1);

// Discrete factor H_D = (omega_c/2)(N + 1) with N = A*A, plus the continuous
// factor as the affine spectral function E(alpha) = -(lambda_bar/sqrt(2))
// alpha - lambda^2/2 (it is diagonal in the delta-normalised |alpha> basis,
// so no grid matrix is built for it).
struct TensorDecomposition {
  OperatorMatrix h_d;
  double hc_slope = 0.0;
  double hc_offset = 0.0;
  double h_c(double alpha) const { return hc_slope * alpha + hc_offset; }
};

TensorDecomposition tensor_decompose_h(const ModelParams& params, int dim);

// Finite-difference oracle: lowest `count` eigenvalues of -psi'' + xi^2 psi
// on a uniform grid over [-half_width, half_width] with a second-order
// stencil. Independent of the ladder construction it cross-checks; exact
// values are 2n + 1.
std::vector<double> fd_oscillator_levels(int count, double half_width = 7.0,
                                         double step = 0.004);

}  // namespace gkl
