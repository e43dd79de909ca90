#include "kband/grid.hpp"

namespace kband {

namespace {

using cgrid = ComplexGrid;

// 1-D second-order derivative along a lane of stride `stride`.
void deriv_lane(const cgrid& f, cgrid& out, int base, int stride, int count,
                double h) {
  const double inv2h = 1.0 / (2.0 * h);
  out[base] = (-3.0 * f[base] + 4.0 * f[base + stride] - f[base + 2 * stride]) *
              inv2h;
  for (int i = 1; i < count - 1; ++i)
    out[base + i * stride] =
        (f[base + (i + 1) * stride] - f[base + (i - 1) * stride]) * inv2h;
  const int last = base + (count - 1) * stride;
  out[last] = (3.0 * f[last] - 4.0 * f[last - stride] + f[last - 2 * stride]) *
              inv2h;
}

} // namespace

ComplexGrid grad_x(const ComplexGrid& f, const SpaceGrid& grid) {
  ComplexGrid out(f.size());
  for (int iy = 0; iy < grid.n; ++iy)
    deriv_lane(f, out, grid.index(0, iy), 1, grid.n, grid.spacing());
  return out;
}

ComplexGrid grad_y(const ComplexGrid& f, const SpaceGrid& grid) {
  ComplexGrid out(f.size());
  for (int ix = 0; ix < grid.n; ++ix)
    deriv_lane(f, out, grid.index(ix, 0), grid.n, grid.n, grid.spacing());
  return out;
}

ComplexGrid laplacian(const ComplexGrid& f, const SpaceGrid& grid) {
  ComplexGrid out(f.size(), 0.0);
  const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
  for (int iy = 1; iy < grid.n - 1; ++iy)
    for (int ix = 1; ix < grid.n - 1; ++ix) {
      const int i = grid.index(ix, iy);
      out[i] = (f[i - 1] + f[i + 1] + f[i - grid.n] + f[i + grid.n] -
                4.0 * f[i]) *
               inv_h2;
    }
  return out;
}

double interior_trapezoid_weight(const SpaceGrid& grid, int ix, int iy) {
  if (!grid.is_interior(ix, iy)) return 0.0;
  const double h = grid.spacing();
  double w = h * h;
  if (ix == 1 || ix == grid.n - 2) w *= 0.5;
  if (iy == 1 || iy == grid.n - 2) w *= 0.5;
  return w;
}

} // namespace kband
