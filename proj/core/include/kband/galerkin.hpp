#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "kband/basis.hpp"

namespace kband {

/// Matrices of the truncated quasilinear system:
///   d_{mn} = int Phi_m Phi_n' dk                       (upper triangular, unit diag)
///   s_{mn} = -2i int Phi_m [Phi_n + k Phi_n'] dk       (purely imaginary)
///   b_{mn}^{(l)} = int 2k Phi_m Phi_n [Phi_l + k Phi_l'] dk
/// All entries are exact moment integrals, not quadrature.
struct GalerkinSystem {
  int size = 0;
  Eigen::MatrixXd D;
  Eigen::MatrixXcd S;
  /// Block (m,n) is a length-N vector over l; stored row-major as B[m*N+n].
  std::vector<Eigen::VectorXd> B;

  const Eigen::VectorXd& block(int m, int n) const { return B[m * size + n]; }
};

Eigen::MatrixXd assemble_D(const OrthonormalBasis& basis);
Eigen::MatrixXcd assemble_S(const OrthonormalBasis& basis);
std::vector<Eigen::VectorXd> assemble_B(const OrthonormalBasis& basis);

GalerkinSystem assemble_system(const OrthonormalBasis& basis);

/// Stacked unconjugated dot products: component m of the result is P_m . V.
Eigen::VectorXcd bullet(const std::vector<Eigen::VectorXcd>& P,
                        const Eigen::VectorXcd& V);

/// Block matrix-vector product (B W)_m = sum_n B_{mn} W_n, producing the
/// block vector fed to bullet for the quadratic term.
std::vector<Eigen::VectorXcd> block_apply(const GalerkinSystem& sys,
                                          const Eigen::VectorXcd& W);

} // namespace kband
