#include "gklandau/wigner.hpp"

#include <cmath>
#include <sstream>

#include "gklandau/parallel.hpp"

namespace gkl {

double hermite_fn(int n, double xi) {
  if (n < 0) throw ParameterError("hermite_fn requires n >= 0");
  const double h0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * xi * xi);
  if (n == 0) return h0;
  double prev = h0;
  double cur = std::sqrt(2.0) * xi * h0;
  for (int k = 2; k <= n; ++k) {
    const double next =
        std::sqrt(2.0 / k) * xi * cur - std::sqrt((k - 1.0) / k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void GridSpec::validate() const {
  if (points < 2) throw ParameterError("grid needs at least 2 points");
  if (!(half_range > 0.0)) throw ParameterError("grid half_range must be > 0");
}

void GridSpec::require_coverage(int max_index) const {
  validate();
  const double sigma = std::sqrt(max_index + 0.5);
  if (2.0 * half_range < 6.0 * sigma)
    throw ResolutionError("grid narrower than 6 standard deviations of the "
                          "highest basis index");
}

GridSpec grid_for_max_index(int max_index, int points) {
  GridSpec spec;
  spec.points = points;
  spec.half_range =
      std::max(8.0, 2.0 * std::sqrt(2.0 * max_index + 1.0) + 4.0);
  return spec;
}

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;  // (2 pi)^{-1/2}

// Effective support half-width of Phi_n: classical turning point plus a
// Gaussian-tail margin.
double support_radius(int n) { return std::sqrt(2.0 * n + 1.0) + 7.5; }

// Evaluates S(x_j) = Int Phi_a(xi) Phi_b(xi - y) e^{i sign x_j xi} dxi for
// every x on the row, reusing one adaptive-panel rule built at the largest
// |x| (the worst oscillation). The phase factor advances by a per-node
// complex multiply across the row and is refreshed periodically.
void eval_row(int unshifted, int shifted, double y,
              const std::vector<double>& xs, int sign, Tolerance tol,
              std::vector<cplx>& out) {
  const int nx = static_cast<int>(xs.size());
  out.assign(nx, cplx{0.0, 0.0});
  const double ra = support_radius(unshifted);
  const double rb = support_radius(shifted);
  const double lo = std::max(-ra, y - rb);
  const double hi = std::min(ra, y + rb);
  if (lo >= hi) return;

  double x_worst = 0.0;
  for (double x : xs) x_worst = std::max(x_worst, std::abs(x));
  auto worst = [&](double xi) -> cplx {
    return hermite_fn(unshifted, xi) * hermite_fn(shifted, xi - y) *
           std::polar(1.0, sign * x_worst * xi);
  };
  const double rule_abs =
      tol.abs_tol > 0.0 ? std::min(tol.abs_tol, 1e-11) : 1e-11;
  QuadratureRule rule =
      adaptive_panel_rule(worst, lo, hi, Tolerance{rule_abs, 0.0});

  const std::size_t m = rule.nodes.size();
  std::vector<double> g(m);
  for (std::size_t k = 0; k < m; ++k)
    g[k] = rule.weights[k] * hermite_fn(unshifted, rule.nodes[k]) *
           hermite_fn(shifted, rule.nodes[k] - y);

  std::vector<cplx> cur(m), step(m);
  const double dx = nx > 1 ? xs[1] - xs[0] : 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    cur[k] = std::polar(1.0, sign * xs[0] * rule.nodes[k]);
    step[k] = std::polar(1.0, sign * dx * rule.nodes[k]);
  }
  for (int j = 0; j < nx; ++j) {
    if (j > 0 && j % 64 == 0)
      for (std::size_t k = 0; k < m; ++k)
        cur[k] = std::polar(1.0, sign * xs[j] * rule.nodes[k]);
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < m; ++k) acc += g[k] * cur[k];
    out[j] = acc;
    for (std::size_t k = 0; k < m; ++k) cur[k] *= step[k];
  }
}

std::vector<double> grid_axis(const GridSpec& spec) {
  std::vector<double> xs(spec.points);
  const double half = 0.5 * (spec.points - 1);
  for (int i = 0; i < spec.points; ++i) xs[i] = (i - half) * spec.step();
  return xs;
}

// Trapezoid weight along one axis.
double axis_weight(const GridSpec& spec, int i) {
  const double h = spec.step();
  return (i == 0 || i + 1 == spec.points) ? 0.5 * h : h;
}

cplx wigner_point_direct(int n, int l, double x, double y, Tolerance tol) {
  const double ra = support_radius(n);
  const double rb = support_radius(l);
  const double lo = std::max(-ra, y - rb);
  const double hi = std::min(ra, y + rb);
  if (lo >= hi) return {0.0, 0.0};
  auto f = [&](double xi) -> cplx {
    return hermite_fn(n, xi) * hermite_fn(l, xi - y) *
           std::polar(1.0, x * (xi - 0.5 * y));
  };
  return kInvSqrt2Pi * integrate_adaptive(f, lo, hi, tol).value;
}

}  // namespace

PhaseSpaceGrid wigner_dyad(int n, int l, GridSpec spec, Tolerance tol) {
  if (n < 0 || l < 0 || n > 20 || l > 20)
    throw ParameterError("wigner_dyad supports indices 0..20");
  spec.require_coverage(std::max(n, l));
  tol.validate();

  const std::vector<double> xs = grid_axis(spec);
  PhaseSpaceGrid grid{spec, Eigen::MatrixXcd::Zero(spec.points, spec.points)};
  parallel_for(spec.points, [&](int iy) {
    const double y = xs[iy];
    std::vector<cplx> row;
    eval_row(n, l, y, xs, +1, tol, row);
    for (int ix = 0; ix < spec.points; ++ix)
      grid.values(iy, ix) =
          kInvSqrt2Pi * std::polar(1.0, -0.5 * xs[ix] * y) * row[ix];
  });

  // Re-verify a few points against the direct per-point adaptive integral.
  const int checks[3][2] = {{spec.points / 2, spec.points / 2},
                            {spec.points / 3, (2 * spec.points) / 3},
                            {(3 * spec.points) / 5, spec.points / 4}};
  for (const auto& c : checks) {
    const double x = xs[c[0]], y = xs[c[1]];
    const cplx direct = wigner_point_direct(n, l, x, y, tol);
    if (std::abs(direct - grid.values(c[1], c[0])) >
        std::max(20.0 * tol.abs_tol, 1e-9)) {
      std::ostringstream msg;
      msg << "wigner_dyad quadrature check failed at (x=" << x << ", y=" << y
          << ")";
      throw NumericError(msg.str());
    }
  }
  return grid;
}

Eigen::MatrixXcd hs_gram(const std::vector<std::pair<int, int>>& pairs,
                         GridSpec spec) {
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
      if (pairs[i] == pairs[j])
        throw ParameterError("hs_gram requires distinct dyad pairs");
  const int np = static_cast<int>(pairs.size());
  Eigen::MatrixXcd gram(np, np);
  if (np == 0) return gram;

  std::vector<PhaseSpaceGrid> grids;
  grids.reserve(np);
  for (const auto& [n, l] : pairs) grids.push_back(wigner_dyad(n, l, spec));

  std::vector<double> w(spec.points);
  for (int i = 0; i < spec.points; ++i) w[i] = axis_weight(spec, i);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b) {
      cplx acc{0.0, 0.0};
      for (int iy = 0; iy < spec.points; ++iy) {
        cplx row{0.0, 0.0};
        for (int ix = 0; ix < spec.points; ++ix)
          row += w[ix] * std::conj(grids[a].values(iy, ix)) *
                 grids[b].values(iy, ix);
        acc += w[iy] * row;
      }
      gram(a, b) = acc;
    }

  for (int a = 0; a < np; ++a)
    if (std::abs(gram(a, a) - 1.0) > 1e-3)
      throw ResolutionError("hs_gram norm drift exceeds 1e-3; grid too coarse "
                            "or too narrow for the requested dyads");
  return gram;
}

cplx u_matrix_element(int m, int k, double x, double y, Tolerance tol) {
  if (m < 0 || k < 0 || m > 20 || k > 20)
    throw ParameterError("u_matrix_element supports indices 0..20");
  tol.validate();
  const double ra = support_radius(m);
  const double rb = support_radius(k);
  const double lo = std::max(-ra, y - rb);
  const double hi = std::min(ra, y + rb);
  if (lo >= hi) return {0.0, 0.0};
  auto f = [&](double xi) -> cplx {
    return hermite_fn(m, xi) * hermite_fn(k, xi - y) *
           std::polar(1.0, -x * (xi - 0.5 * y));
  };
  return integrate_adaptive(f, lo, hi, tol).value;
}

InverseWigner::InverseWigner(int dim, GridSpec spec) : dim_(dim), spec_(spec) {
  if (dim < 1 || dim > 16)
    throw ParameterError("InverseWigner supports dim in [1, 16]");
  spec.require_coverage(dim - 1);
  const std::vector<double> xs = grid_axis(spec);
  kernel_.assign(dim * dim,
                 Eigen::MatrixXcd::Zero(spec.points, spec.points));
  Tolerance tol{1e-10, 0.0};
  parallel_for(spec.points, [&](int iy) {
    const double y = xs[iy];
    std::vector<cplx> row;
    for (int m = 0; m < dim_; ++m)
      for (int k = 0; k < dim_; ++k) {
        eval_row(m, k, y, xs, -1, tol, row);
        Eigen::MatrixXcd& table = kernel_[m * dim_ + k];
        for (int ix = 0; ix < spec_.points; ++ix)
          table(iy, ix) = std::polar(1.0, 0.5 * xs[ix] * y) * row[ix];
      }
  });
  // Spot-check the kernel tables against the direct adaptive integral.
  const int ix = spec.points / 3, iy = (2 * spec.points) / 3;
  const cplx direct =
      u_matrix_element(dim_ - 1, 0, xs[ix], xs[iy], tol);
  if (std::abs(direct - kernel_[(dim_ - 1) * dim_](iy, ix)) > 1e-8) {
    std::ostringstream msg;
    msg << "inverse Wigner kernel check failed at (x=" << xs[ix]
        << ", y=" << xs[iy] << ")";
    throw NumericError(msg.str());
  }
}

OperatorMatrix InverseWigner::apply(const PhaseSpaceGrid& f) const {
  if (f.spec.points != spec_.points ||
      f.spec.half_range != spec_.half_range)
    throw ParameterError("field grid does not match the kernel grid");
  Eigen::MatrixXcd weighted(spec_.points, spec_.points);
  for (int iy = 0; iy < spec_.points; ++iy)
    for (int ix = 0; ix < spec_.points; ++ix)
      weighted(iy, ix) = axis_weight(spec_, iy) * axis_weight(spec_, ix) *
                         f.values(iy, ix);
  OperatorMatrix out = OperatorMatrix::zero({dim_});
  for (int m = 0; m < dim_; ++m)
    for (int k = 0; k < dim_; ++k)
      out.mat(m, k) =
          kInvSqrt2Pi * (kernel_[m * dim_ + k].cwiseProduct(weighted)).sum();
  return out;
}

OperatorMatrix inverse_wigner(const PhaseSpaceGrid& f, int dim) {
  return InverseWigner(dim, f.spec).apply(f);
}

void export_csv(const PhaseSpaceGrid& grid, std::ostream& os) {
  os << "x,y,re,im\n";
  char buf[128];
  for (int iy = 0; iy < grid.spec.points; ++iy)
    for (int ix = 0; ix < grid.spec.points; ++ix) {
      const cplx v = grid.values(iy, ix);
      std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.17g,%.17g\n",
                    grid.x(ix), grid.y(iy), v.real(), v.imag());
      os << buf;
    }
}

}  // namespace gkl
