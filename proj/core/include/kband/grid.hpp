#pragma once

#include <complex>
#include <vector>

#include "kband/errors.hpp"

namespace kband {

/// Uniform grid on the square (-R, R)^2. x_2 = y is the backscatter axis;
/// the measurement face Gamma is the row iy = n-1 (y = R).
struct SpaceGrid {
  double R;
  int n; // points per axis

  SpaceGrid(double R_, int n_) : R(R_), n(n_) {
    if (R <= 0.0) throw config_error("SpaceGrid: R must be positive");
    if (n < 3) throw config_error("SpaceGrid: need at least 3 points per axis");
  }

  double spacing() const { return 2.0 * R / (n - 1); }
  double coord(int i) const { return -R + i * spacing(); }
  int index(int ix, int iy) const { return ix + n * iy; }
  int point_count() const { return n * n; }

  bool is_interior(int ix, int iy) const {
    return ix >= 1 && ix <= n - 2 && iy >= 1 && iy <= n - 2;
  }
};

using ComplexGrid = std::vector<std::complex<double>>;
using RealGrid = std::vector<double>;

/// Second-order first derivatives: central differences in the interior,
/// 3-point one-sided on the boundary.
ComplexGrid grad_x(const ComplexGrid& f, const SpaceGrid& grid);
ComplexGrid grad_y(const ComplexGrid& f, const SpaceGrid& grid);

/// Standard 5-point Laplacian. Valid on interior points only; the boundary
/// ring is set to zero.
ComplexGrid laplacian(const ComplexGrid& f, const SpaceGrid& grid);

/// Complex field on grid x k-node tensor; houses u, p, v, d_k v.
struct SampledField {
  SpaceGrid grid;
  std::vector<double> k_nodes;
  std::vector<std::complex<double>> values; // index (ix, iy, ik)

  SampledField(const SpaceGrid& g, std::vector<double> ks)
      : grid(g), k_nodes(std::move(ks)),
        values(static_cast<std::size_t>(g.point_count()) * k_nodes.size()) {}

  std::complex<double>& at(int ix, int iy, int ik) {
    return values[static_cast<std::size_t>(ik) * grid.point_count() +
                  grid.index(ix, iy)];
  }
  const std::complex<double>& at(int ix, int iy, int ik) const {
    return values[static_cast<std::size_t>(ik) * grid.point_count() +
                  grid.index(ix, iy)];
  }

  ComplexGrid slice(int ik) const {
    const std::size_t np = grid.point_count();
    return ComplexGrid(values.begin() + ik * np, values.begin() + (ik + 1) * np);
  }
  void set_slice(int ik, const ComplexGrid& s) {
    const std::size_t np = grid.point_count();
    std::copy(s.begin(), s.end(), values.begin() + ik * np);
  }
};

/// Trapezoidal weight of grid point (ix, iy) over the interior sub-box
/// [1, n-2]^2 (zero outside it).
double interior_trapezoid_weight(const SpaceGrid& grid, int ix, int iy);

} // namespace kband
