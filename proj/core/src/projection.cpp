#include "kband/projection.hpp"

#include <cmath>

namespace kband {

Eigen::VectorXcd fourier_coeffs(const std::vector<cplx>& f_at_nodes,
                                const OrthonormalBasis& basis,
                                const QuadratureRule& rule, int N) {
  if (f_at_nodes.size() != rule.size())
    throw config_error("fourier_coeffs: sample count does not match rule");
  if (N < 1 || N > basis.size())
    throw config_error("fourier_coeffs: N out of range");
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(N);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const cplx wf = rule.weights[i] * f_at_nodes[i];
    for (int n = 1; n <= N; ++n) u(n - 1) += wf * basis.eval(n, rule.nodes[i]);
  }
  return u;
}

Eigen::VectorXcd fourier_coeffs(const std::function<cplx(double)>& f,
                                const OrthonormalBasis& basis,
                                const QuadratureRule& rule, int N) {
  std::vector<cplx> samples(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) samples[i] = f(rule.nodes[i]);
  return fourier_coeffs(samples, basis, rule, N);
}

cplx eval_expansion(const Eigen::VectorXcd& coeffs,
                    const OrthonormalBasis& basis, double k) {
  cplx s = 0.0;
  for (int n = 1; n <= coeffs.size(); ++n) s += coeffs(n - 1) * basis.eval(n, k);
  return s;
}

cplx eval_expansion_deriv(const Eigen::VectorXcd& coeffs,
                          const OrthonormalBasis& basis, double k) {
  cplx s = 0.0;
  for (int n = 1; n <= coeffs.size(); ++n)
    s += coeffs(n - 1) * basis.eval_deriv(n, k);
  return s;
}

std::vector<cplx> project(const std::vector<cplx>& f_at_nodes,
                          const OrthonormalBasis& basis,
                          const QuadratureRule& rule, int N) {
  const Eigen::VectorXcd u = fourier_coeffs(f_at_nodes, basis, rule, N);
  std::vector<cplx> out(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i)
    out[i] = eval_expansion(u, basis, rule.nodes[i]);
  return out;
}

double l2_norm(const std::vector<cplx>& f_at_nodes, const QuadratureRule& rule) {
  if (f_at_nodes.size() != rule.size())
    throw config_error("l2_norm: sample count does not match rule");
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    s += rule.weights[i] * std::norm(f_at_nodes[i]);
  return std::sqrt(s);
}

double h1_projection_error(const std::vector<cplx>& f_at_nodes,
                           const std::vector<cplx>& fprime_at_nodes,
                           const OrthonormalBasis& basis,
                           const QuadratureRule& rule, int N) {
  const Eigen::VectorXcd u = fourier_coeffs(f_at_nodes, basis, rule, N);
  std::vector<cplx> diff(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i)
    diff[i] = eval_expansion_deriv(u, basis, rule.nodes[i]) - fprime_at_nodes[i];
  return l2_norm(diff, rule);
}

std::pair<double, double> lemma2_bound_check(const Eigen::VectorXcd& w_coeffs,
                                             const OrthonormalBasis& basis) {
  const int N = static_cast<int>(w_coeffs.size());
  if (N > basis.size()) throw config_error("lemma2_bound_check: N exceeds basis");
  double lhs = 0.0;
  for (int n = 1; n <= N; ++n)
    for (int j = 1; j <= N; ++j) {
      const double gram = inner_product(basis.element_deriv(n),
                                        basis.element_deriv(j), basis.band());
      lhs += std::real(w_coeffs(n - 1) * std::conj(w_coeffs(j - 1))) * gram;
    }
  double rhs = 0.0;
  for (int n = 1; n <= N; ++n) {
    const double dn = basis.deriv_norm(n);
    rhs += std::norm(w_coeffs(n - 1)) * dn * dn;
  }
  rhs *= static_cast<double>(N) * N;
  return {lhs, rhs};
}

double weighted_norm(const Eigen::VectorXcd& coeffs,
                     const OrthonormalBasis& basis) {
  double s = 0.0;
  for (int n = 1; n <= coeffs.size(); ++n) {
    const double dn = basis.deriv_norm(n);
    s += std::norm(coeffs(n - 1)) * dn * dn;
  }
  return std::sqrt(s);
}

DecayFit coefficient_decay_fit(const Eigen::VectorXcd& coeffs,
                               const OrthonormalBasis& basis) {
  DecayFit fit;
  const int N = static_cast<int>(coeffs.size());
  double peak = 0.0;
  for (int n = 0; n < N; ++n) peak = std::max(peak, std::abs(coeffs(n)));
  if (peak == 0.0) return fit; // undefined
  fit.defined = true;

  // Tail at round-off relative to the peak: finite expansion.
  const int tail_start = 2 * N / 3;
  bool tail_zero = N >= 3;
  for (int n = tail_start; n < N; ++n)
    if (std::abs(coeffs(n)) > 1e-12 * peak) tail_zero = false;
  fit.super_algebraic = tail_zero;

  // log|u_n| = log C - beta log n over coefficients above round-off.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int n = 1; n <= N; ++n) {
    const double a = std::abs(coeffs(n - 1));
    if (a <= 1e-14 * peak) continue;
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(a);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++m;
  }
  if (m >= 2 && sxx * m - sx * sx > 0.0) {
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    fit.beta = -slope;
    fit.C = std::exp((sy - slope * sx) / m);
  } else {
    // single usable point: no slope information
    fit.beta = 0.0;
    fit.C = peak;
  }

  // Partial sums of ||Phi_n'||^2 / n^{2(beta-1)}: convergent-looking when the
  // increments keep shrinking over the available range.
  if (fit.beta > 1.0) {
    bool shrinking = true;
    double prev = -1.0;
    for (int n = 1; n <= basis.size(); ++n) {
      const double dn = basis.deriv_norm(n);
      const double inc = dn * dn / std::pow(n, 2.0 * (fit.beta - 1.0));
      if (prev >= 0.0 && inc > prev) shrinking = false;
      prev = inc;
    }
    fit.series_convergent = shrinking;
  }
  return fit;
}

} // namespace kband
