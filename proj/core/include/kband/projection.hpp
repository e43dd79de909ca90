#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "kband/band.hpp"
#include "kband/basis.hpp"

namespace kband {

using cplx = std::complex<double>;

/// Fourier coefficients u_n = int u Phi_n dk, n = 1..N, by the band rule.
Eigen::VectorXcd fourier_coeffs(const std::vector<cplx>& f_at_nodes,
                                const OrthonormalBasis& basis,
                                const QuadratureRule& rule, int N);

Eigen::VectorXcd fourier_coeffs(const std::function<cplx(double)>& f,
                                const OrthonormalBasis& basis,
                                const QuadratureRule& rule, int N);

/// sum_n c_n Phi_n(k) and its exact k-derivative.
cplx eval_expansion(const Eigen::VectorXcd& coeffs,
                    const OrthonormalBasis& basis, double k);
cplx eval_expansion_deriv(const Eigen::VectorXcd& coeffs,
                          const OrthonormalBasis& basis, double k);

/// P_N f sampled back at the rule nodes.
std::vector<cplx> project(const std::vector<cplx>& f_at_nodes,
                          const OrthonormalBasis& basis,
                          const QuadratureRule& rule, int N);

/// L2(k_lo, k_hi) norm of a node-sampled function.
double l2_norm(const std::vector<cplx>& f_at_nodes, const QuadratureRule& rule);

/// ||(P_N f)' - f'|| with (P_N f)' from exact basis derivatives.
double h1_projection_error(const std::vector<cplx>& f_at_nodes,
                           const std::vector<cplx>& fprime_at_nodes,
                           const OrthonormalBasis& basis,
                           const QuadratureRule& rule, int N);

/// For w in T_N given by coefficients, returns (||w'||^2, N^2 sum |w_n|^2 ||Phi_n'||^2).
/// The left side is exact via derivative inner products; the bound holds with
/// lhs <= rhs + 1e-10.
std::pair<double, double> lemma2_bound_check(const Eigen::VectorXcd& w_coeffs,
                                             const OrthonormalBasis& basis);

/// Weighted sequence-space norm sqrt(sum |u_n|^2 ||Phi_n'||^2).
double weighted_norm(const Eigen::VectorXcd& coeffs,
                     const OrthonormalBasis& basis);

struct DecayFit {
  bool defined = false;         // false when all coefficients vanish
  bool super_algebraic = false; // tail coefficients at round-off level
  double C = 0.0;
  double beta = 0.0;
  bool series_convergent = false; // partial-sum ratio diagnostic for
                                  // sum ||Phi_n'||^2 / n^{2(beta-1)}
};

/// Least-squares fit of log|u_n| against log n over the nonzero coefficients.
DecayFit coefficient_decay_fit(const Eigen::VectorXcd& coeffs,
                               const OrthonormalBasis& basis);

} // namespace kband
