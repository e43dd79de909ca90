#include "kband/galerkin.hpp"

namespace kband {

using detail::integrate_poly_exp;

Eigen::MatrixXd assemble_D(const OrthonormalBasis& basis) {
  const int N = basis.size();
  const long double L = basis.band().half_width();
  Eigen::MatrixXd D(N, N);
  for (int m = 1; m <= N; ++m)
    for (int n = 1; n <= N; ++n)
      D(m - 1, n - 1) = static_cast<double>(integrate_poly_exp(
          poly_mul(basis.element(m).coeffs(), basis.element_deriv(n).coeffs()),
          2.0L, L));
  return D;
}

Eigen::MatrixXcd assemble_S(const OrthonormalBasis& basis) {
  const int N = basis.size();
  const long double L = basis.band().half_width();
  Eigen::MatrixXcd S(N, N);
  for (int m = 1; m <= N; ++m)
    for (int n = 1; n <= N; ++n) {
      const auto integrand =
          poly_mul(basis.element(m).coeffs(),
                   poly_add(basis.element(n).coeffs(),
                            basis.element_deriv(n).times_k_poly()));
      const double re = static_cast<double>(integrate_poly_exp(integrand, 2.0L, L));
      S(m - 1, n - 1) = std::complex<double>(0.0, -2.0 * re);
    }
  return S;
}

std::vector<Eigen::VectorXd> assemble_B(const OrthonormalBasis& basis) {
  const int N = basis.size();
  const long double L = basis.band().half_width();
  const double k0 = basis.band().k0();
  const std::vector<double> two_k = {2.0 * k0, 2.0}; // 2k = 2k0 + 2t

  // Precompute Phi_l + k Phi_l' once per l.
  std::vector<std::vector<double>> q(N);
  for (int l = 1; l <= N; ++l)
    q[l - 1] = poly_add(basis.element(l).coeffs(),
                        basis.element_deriv(l).times_k_poly());

  std::vector<Eigen::VectorXd> B(static_cast<std::size_t>(N) * N);
  for (int m = 1; m <= N; ++m)
    for (int n = 1; n <= N; ++n) {
      const auto pmn = poly_mul(basis.element(m).coeffs(),
                                basis.element(n).coeffs());
      const auto pmn2k = poly_mul(pmn, two_k);
      Eigen::VectorXd blk(N);
      for (int l = 1; l <= N; ++l)
        blk(l - 1) = static_cast<double>(
            integrate_poly_exp(poly_mul(pmn2k, q[l - 1]), 3.0L, L));
      B[(m - 1) * N + (n - 1)] = std::move(blk);
    }
  return B;
}

GalerkinSystem assemble_system(const OrthonormalBasis& basis) {
  GalerkinSystem sys;
  sys.size = basis.size();
  sys.D = assemble_D(basis);
  sys.S = assemble_S(basis);
  sys.B = assemble_B(basis);
  return sys;
}

Eigen::VectorXcd bullet(const std::vector<Eigen::VectorXcd>& P,
                        const Eigen::VectorXcd& V) {
  const int N = static_cast<int>(P.size());
  Eigen::VectorXcd out(N);
  for (int m = 0; m < N; ++m) {
    if (P[m].size() != V.size())
      throw config_error("bullet: block dimension mismatch");
    // unconjugated bilinear product
    out(m) = (P[m].array() * V.array()).sum();
  }
  return out;
}

std::vector<Eigen::VectorXcd> block_apply(const GalerkinSystem& sys,
                                          const Eigen::VectorXcd& W) {
  if (W.size() != sys.size)
    throw config_error("block_apply: vector dimension mismatch");
  const int N = sys.size;
  std::vector<Eigen::VectorXcd> out(N);
  for (int m = 0; m < N; ++m) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(N);
    for (int n = 0; n < N; ++n) acc += sys.block(m, n).cast<std::complex<double>>() * W(n);
    out[m] = std::move(acc);
  }
  return out;
}

} // namespace kband
