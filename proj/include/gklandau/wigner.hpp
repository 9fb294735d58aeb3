#pragma once

// Wigner transform of Hermite-basis dyads |Phi_n><Phi_l|, Hilbert-Schmidt
// Gram matrices over phase-space grids, and the weak-integral inverse map.

#include <ostream>
#include <utility>

#include "gklandau/fock.hpp"

namespace gkl {

class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Normalised Hermite function pi^{-1/4} (2^n n!)^{-1/2} H_n(xi) e^{-xi^2/2}.
double hermite_fn(int n, double xi);

struct GridSpec {
  double half_range = 8.0;
  int points = 161;

  double step() const { return 2.0 * half_range / (points - 1); }
  void validate() const;
  // Full width must cover >= 6 position standard deviations of the highest
  // basis index sampled on the grid.
  void require_coverage(int max_index) const;
};

// Grid wide enough that dyads up to max_index round-trip at the 1e-4 level.
GridSpec grid_for_max_index(int max_index, int points = 161);

struct PhaseSpaceGrid {
  GridSpec spec;
  Eigen::MatrixXcd values;  // values(iy, ix)

  // Centred so the reflection ix -> points-1-ix negates x exactly and an
  // odd grid contains x = 0 exactly.
  double x(int ix) const {
    return (ix - 0.5 * (spec.points - 1)) * spec.step();
  }
  double y(int iy) const {
    return (iy - 0.5 * (spec.points - 1)) * spec.step();
  }
  cplx at(int ix, int iy) const { return values(iy, ix); }
};

// Samples of (2 pi)^{-1/2} Int e^{i x (xi - y/2)} Phi_l(xi - y) Phi_n(xi) dxi
// over the grid. The xi-integral uses panel rules produced by the adaptive
// integrator at the worst-case phase; a handful of points per grid are
// re-verified against the direct per-point adaptive integral.
PhaseSpaceGrid wigner_dyad(int n, int l, GridSpec spec = {},
                           Tolerance tol = {1e-10, 0.0});

// L^2(R^2) Gram matrix of the listed dyads by grid quadrature. Diagonal
// drift beyond 1e-3 raises ResolutionError.
Eigen::MatrixXcd hs_gram(const std::vector<std::pair<int, int>>& pairs,
                         GridSpec spec = {});

// <Phi_m | U(x,y) Phi_k> from the explicit kernel
// (U(x,y) Phi)(xi) = e^{-i x (xi - y/2)} Phi(xi - y), by 1-D quadrature.
cplx u_matrix_element(int m, int k, double x, double y,
                      Tolerance tol = {1e-10, 0.0});

// Holds the U(x,y) matrix-element tables for one (dim, grid) pair so that
// many fields can be inverted against the same kernel data.
class InverseWigner {
 public:
  InverseWigner(int dim, GridSpec spec);

  OperatorMatrix apply(const PhaseSpaceGrid& f) const;
  int dim() const { return dim_; }

 private:
  int dim_;
  GridSpec spec_;
  std::vector<Eigen::MatrixXcd> kernel_;  // [m * dim + k](iy, ix)
};

// One-shot inverse: matrix elements (2 pi)^{-1/2} Int Int <m|U(x,y)|k>
// f(x,y) dx dy over the grid.
OperatorMatrix inverse_wigner(const PhaseSpaceGrid& f, int dim);

// CSV export, columns x,y,re,im.
void export_csv(const PhaseSpaceGrid& grid, std::ostream& os);

}  // namespace gkl
