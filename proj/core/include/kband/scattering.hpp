#pragma once

#include <complex>
#include <vector>

#include "kband/grid.hpp"

namespace kband {

/// Smooth compactly supported scatterer: contrast * exp(1 - 1/(1 - s^2))
/// inside the disk s = |x - c|/radius < 1, zero outside.
struct BumpMedium {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.3;
  double contrast = 0.5;

  double operator()(double x, double y) const;
};

/// 2-D Helmholtz fundamental solution (i/4) H0^(1)(k |x - y|).
std::complex<double> greens_kernel(double k, double x1, double y1, double x2,
                                   double y2);

/// Nystrom solution of u = u_in + k^2 int G_k(x,y) a(y) u(y) dy at a single
/// wavenumber. The support grid is cell-centered over the bump bounding box;
/// the singular self-cell weight is the kernel integrated over the disk of
/// equal area. Knows how to evaluate u (and d_y u) anywhere via the
/// representation integral.
struct LippmannSchwingerSolution {
  double k = 0.0;
  double cell_area = 0.0;
  double cell_radius = 0.0; // radius of the equal-area disk
  std::vector<double> xs, ys, a_vals;
  std::vector<std::complex<double>> u_support;
  double solve_residual = 0.0; // ||A u - rhs|| / ||rhs|| of the dense solve

  std::complex<double> total_field(double x, double y) const;
  /// d u / d y by analytic kernel differentiation (valid away from the support).
  std::complex<double> total_field_dy(double x, double y) const;
};

/// Dense direct solve; support_n x support_n unknowns, capped at 64 x 64.
LippmannSchwingerSolution solve_lippmann_schwinger(const BumpMedium& medium,
                                                   double k, int support_n);

/// Evaluate the representation integral on the full grid, one thread per
/// wavenumber.
SampledField sample_total_field(
    const std::vector<LippmannSchwingerSolution>& solutions,
    const SpaceGrid& grid);

/// Trace and y-derivative of u on the face y = R, all wavenumbers.
struct CauchyData {
  int n = 0; // points along Gamma
  std::vector<double> k_nodes;
  std::vector<std::complex<double>> g0, g1; // index ix + n*ik
};

CauchyData extract_cauchy_data(
    const std::vector<LippmannSchwingerSolution>& solutions,
    const SpaceGrid& grid);

} // namespace kband
