#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "kband/basis.hpp"
#include "kband/galerkin.hpp"
#include "kband/grid.hpp"
#include "kband/projection.hpp"

namespace kband {

/// Separable test field v(x,k) = phi(x) chi(k) with closed-form derivatives:
/// phi is a C^3 radial bump (1-q)^4, q = |x|^2/rho^2, supported strictly
/// inside the domain; chi is smooth on the band.
struct ManufacturedField {
  double rho = 0.5;
  std::function<double(double)> chi;
  std::function<double(double)> chi_prime;

  double phi(double x, double y) const;
  /// grad phi and lap phi, closed form.
  void phi_derivs(double x, double y, double& dpx, double& dpy,
                  double& lap) const;

  SampledField sample_v(const SpaceGrid& grid,
                        const std::vector<double>& k_nodes) const;
  SampledField sample_dkv(const SpaceGrid& grid,
                          const std::vector<double>& k_nodes) const;

  static ManufacturedField gaussian(double k0, double alpha = 4.0,
                                    double rho = 0.5);
  /// chi = sum c_n Phi_n: finite expansion, exact under projection once
  /// N >= c.size().
  static ManufacturedField in_span(const OrthonormalBasis& basis,
                                   const Eigen::VectorXd& c, double rho = 0.5);
};

/// Closed-form residual of the k-differentiated log-field equation:
/// h = chi' lap phi + 2k chi (chi + k chi') |grad phi|^2
///     - 2i (chi + k chi') d_y phi.
cplx manufactured_h(const ManufacturedField& mf, double x, double y, double k);

/// Same closed form with chi replaced by its truncation
/// chi_N = sum_{n<=N} chi_n Phi_n (coefficients supplied by the caller).
cplx manufactured_hN(const ManufacturedField& mf, const OrthonormalBasis& basis,
                     const Eigen::VectorXcd& chi_coeffs, double x, double y,
                     double k);

/// Stencil-based h = lap(d_k v) + 2k grad v . grad(v + k d_k v)
///                   - 2i (d_y v + k d_y d_k v).
/// Valid on interior grid points; boundary entries are not meaningful.
SampledField compute_h(const SampledField& v, const SampledField& dkv);

/// Truncated-series counterpart: project v in k per grid point (coefficients
/// by the band rule), take d_k of the projection exactly through the basis,
/// and push both through the same stencils. With commuted = true the proof's
/// rewritten form is used instead (spatial derivatives first, then
/// projection); the two agree to rounding since all spatial operators are
/// linear.
SampledField compute_hN(const SampledField& v, const OrthonormalBasis& basis,
                        const QuadratureRule& rule, int N,
                        bool commuted = false);

/// L2(Omega_int x band) distance: band quadrature in k, trapezoid over the
/// interior sub-box in x (one stencil layer inset).
double residual_norm(const SampledField& a, const SampledField& b,
                     const QuadratureRule& k_rule);
double field_norm(const SampledField& a, const QuadratureRule& k_rule);

/// Fourier-coefficient grids v_n(x) of a sampled field, n = 1..N.
std::vector<ComplexGrid> coefficient_grids(const SampledField& v,
                                           const OrthonormalBasis& basis,
                                           const QuadratureRule& rule, int N);

/// Per-point N-vector D lap V + B sum_j d_j V • d_j V + S d_y V, spatial
/// derivatives by the grid stencils. Result: one complex grid per component.
std::vector<ComplexGrid> system_residual(const std::vector<ComplexGrid>& V,
                                         const GalerkinSystem& sys,
                                         const SpaceGrid& grid);

/// Max gap over interior points and components between the system form and
/// int Phi_m h_N dk, with h_N rebuilt from the same coefficient grids and the
/// integral taken by check_rule. Links the block system back to the
/// Phi_m-weighted truncated equation.
double galerkin_consistency_gap(const std::vector<ComplexGrid>& V,
                                const OrthonormalBasis& basis,
                                const GalerkinSystem& sys,
                                const SpaceGrid& grid,
                                const QuadratureRule& check_rule);

struct ResidualRow {
  int N = 0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double galerkin_gap = 0.0;
  double tail_coeff = 0.0; // max |chi_n| (or coefficient-grid norm) beyond N
};

struct ResidualReport {
  std::vector<ResidualRow> rows;
};

/// N-sweep of ||h_N - h|| / ||h|| on the manufactured field, closed-form
/// derivative path.
ResidualReport decay_study_manufactured(const ManufacturedField& mf,
                                        const OrthonormalBasis& basis,
                                        const QuadratureRule& rule,
                                        const SpaceGrid& grid,
                                        const std::vector<int>& n_list);

/// Same sweep on a solver-produced field; d_k v by finite differences on the
/// k grid, spatial derivatives by stencils.
ResidualReport decay_study_solver(const SampledField& v,
                                  const OrthonormalBasis& basis,
                                  const QuadratureRule& rule,
                                  const std::vector<int>& n_list);

} // namespace kband
