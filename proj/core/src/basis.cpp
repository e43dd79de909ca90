#include "kband/basis.hpp"

#include <cmath>
#include <string>

namespace kband {

namespace detail {

std::vector<long double> exp_moments(long double L, long double c,
                                     int max_power) {
  // I_m = sum_{j >= 0, m+j even} c^j/j! * 2 L^{m+j+1}/(m+j+1).
  // All terms positive: no cancellation at any m, unlike the
  // integration-by-parts recurrence whose error grows like (m/c)!.
  std::vector<long double> I(max_power + 1, 0.0L);
  for (int m = 0; m <= max_power; ++m) {
    long double cj = 1.0L;          // c^j / j!
    long double Lp = std::pow(L, m + 1); // L^{m+j+1}
    long double s = 0.0L;
    for (int j = 0;; ++j) {
      if ((m + j) % 2 == 0) {
        const long double term = cj * 2.0L * Lp / (m + j + 1);
        s += term;
        if (j > 2 && term < 1e-25L * s) break;
      }
      cj *= c / (j + 1);
      Lp *= L;
    }
    I[m] = s;
  }
  return I;
}

long double integrate_poly_exp(const std::vector<double>& poly, long double c,
                               long double L) {
  if (poly.empty()) return 0.0L;
  const auto I = exp_moments(L, c, static_cast<int>(poly.size()) - 1);
  long double s = 0.0L;
  for (std::size_t m = 0; m < poly.size(); ++m)
    s += static_cast<long double>(poly[m]) * I[m];
  return s;
}

} // namespace detail

std::vector<double> moment_integrals(const Band& band, int max_power) {
  if (max_power < 0) throw config_error("moment_integrals: max_power < 0");
  const auto I = detail::exp_moments(band.half_width(), 2.0L, max_power);
  return std::vector<double>(I.begin(), I.end());
}

double inner_product(const ExpPolynomial& f, const ExpPolynomial& g,
                     const Band& band) {
  return static_cast<double>(detail::integrate_poly_exp(
      poly_mul(f.coeffs(), g.coeffs()), 2.0L, band.half_width()));
}

OrthonormalBasis::OrthonormalBasis(Band band,
                                   std::vector<ExpPolynomial> elements,
                                   std::vector<ExpPolynomial> derivatives,
                                   std::vector<double> deriv_norms)
    : band_(band),
      elements_(std::move(elements)),
      derivatives_(std::move(derivatives)),
      deriv_norms_(std::move(deriv_norms)) {}

const ExpPolynomial& OrthonormalBasis::element(int n) const {
  if (n < 1 || n > size())
    throw config_error("basis index out of range: n=" + std::to_string(n));
  return elements_[n - 1];
}

const ExpPolynomial& OrthonormalBasis::element_deriv(int n) const {
  if (n < 1 || n > size())
    throw config_error("basis index out of range: n=" + std::to_string(n));
  return derivatives_[n - 1];
}

double OrthonormalBasis::deriv_norm(int n) const {
  if (n < 1 || n > size())
    throw config_error("basis index out of range: n=" + std::to_string(n));
  return deriv_norms_[n - 1];
}

OrthonormalBasis build_basis(const Band& band, int N, int cap) {
  if (N < 1 || N > cap)
    throw config_error("build_basis: N must be in [1, " + std::to_string(cap) +
                       "], got " + std::to_string(N));

  // Gram matrix of psi_n: G_{mn} = I_{m+n-2} with I the e^{2t} moments.
  const auto I = detail::exp_moments(band.half_width(), 2.0L, 2 * (N - 1));
  std::vector<long double> G(static_cast<std::size_t>(N) * N);
  for (int m = 0; m < N; ++m)
    for (int n = 0; n < N; ++n) G[m * N + n] = I[m + n];

  // Cholesky G = L L^T with conditioning guard on the pivots.
  std::vector<long double> L(static_cast<std::size_t>(N) * N, 0.0L);
  long double first_pivot = 0.0L;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j <= i; ++j) {
      long double s = G[i * N + j];
      for (int p = 0; p < j; ++p) s -= L[i * N + p] * L[j * N + p];
      if (i == j) {
        if (s <= 0.0L)
          throw numerical_error(
              "build_basis: Gram matrix not positive definite at index " +
              std::to_string(i + 1));
        L[i * N + i] = std::sqrt(s);
        if (i == 0) first_pivot = L[0];
        if (L[i * N + i] < 1e-12L * first_pivot)
          throw numerical_error(
              "build_basis: ill-conditioned psi-Gram matrix at index " +
              std::to_string(i + 1) + " (Cholesky pivot underflow)");
      } else {
        L[i * N + j] = s / L[j * N + j];
      }
    }
  }

  // Rows of L^{-1} are the basis coefficients: Phi_n = sum_j (L^{-1})_{nj} psi_j,
  // since L^{-1} G L^{-T} = I. Invert the triangular factor explicitly.
  std::vector<ExpPolynomial> elements, derivatives;
  std::vector<double> deriv_norms;
  elements.reserve(N);
  derivatives.reserve(N);
  deriv_norms.reserve(N);
  std::vector<long double> Linv(static_cast<std::size_t>(N) * N, 0.0L);
  for (int c = 0; c < N; ++c) {
    for (int r = c; r < N; ++r) {
      long double s = (r == c) ? 1.0L : 0.0L;
      for (int p = c; p < r; ++p) s -= L[r * N + p] * Linv[p * N + c];
      Linv[r * N + c] = s / L[r * N + r];
    }
  }

  const double k0 = band.k0();
  for (int n = 0; n < N; ++n) {
    std::vector<double> coeffs(n + 1);
    for (int j = 0; j <= n; ++j)
      coeffs[j] = static_cast<double>(Linv[n * N + j]);
    ExpPolynomial phi(k0, std::move(coeffs));
    ExpPolynomial dphi = phi.derivative();
    const double dn2 = static_cast<double>(detail::integrate_poly_exp(
        poly_mul(dphi.coeffs(), dphi.coeffs()), 2.0L, band.half_width()));
    deriv_norms.push_back(std::sqrt(dn2));
    elements.push_back(std::move(phi));
    derivatives.push_back(std::move(dphi));
  }

  return OrthonormalBasis(band, std::move(elements), std::move(derivatives),
                          std::move(deriv_norms));
}

} // namespace kband
