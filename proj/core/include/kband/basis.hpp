#pragma once

#include <vector>

#include "kband/band.hpp"
#include "kband/exp_polynomial.hpp"

namespace kband {

/// Moments I_m = int_{-L}^{L} t^m e^{2t} dt, m = 0..max_power. Computed by
/// termwise integration of the exponential series (all terms positive), which
/// stays accurate at high m where the integration-by-parts recurrence
/// I_m = [t^m e^{2t}/2] - (m/2) I_{m-1} loses digits to cancellation.
std::vector<double> moment_integrals(const Band& band, int max_power);

/// Exact L2(k_lo, k_hi) inner product of two exponential-polynomials over
/// the same band, via the moment recurrence.
double inner_product(const ExpPolynomial& f, const ExpPolynomial& g,
                     const Band& band);

namespace detail {
/// int_{-L}^{L} t^m e^{c t} dt for m = 0..max_power, long double.
std::vector<long double> exp_moments(long double L, long double c,
                                     int max_power);

/// int_{-L}^{L} e^{c t} P(t) dt with P given by coefficients.
long double integrate_poly_exp(const std::vector<double>& poly, long double c,
                               long double L);
} // namespace detail

/// Orthonormalization of psi_n(k) = (k-k0)^{n-1} e^{k-k0} on (k_lo, k_hi).
/// Element n is e^{k-k0} times a polynomial of exact degree n-1 with
/// positive leading coefficient. Immutable after construction.
class OrthonormalBasis {
public:
  OrthonormalBasis(Band band, std::vector<ExpPolynomial> elements,
                   std::vector<ExpPolynomial> derivatives,
                   std::vector<double> deriv_norms);

  const Band& band() const { return band_; }
  int size() const { return static_cast<int>(elements_.size()); }

  /// Phi_n, 1-based per the usual indexing of the family.
  const ExpPolynomial& element(int n) const;
  const ExpPolynomial& element_deriv(int n) const;

  double eval(int n, double k) const { return element(n)(k); }
  double eval_deriv(int n, double k) const { return element_deriv(n)(k); }

  /// ||Phi_n'||_{L2}, computed exactly from the representation.
  double deriv_norm(int n) const;

private:
  Band band_;
  std::vector<ExpPolynomial> elements_;
  std::vector<ExpPolynomial> derivatives_;
  std::vector<double> deriv_norms_;
};

inline constexpr int kDefaultBasisCap = 15;

/// Algebraic Gram-Schmidt: assemble the psi-Gram matrix from exact moments,
/// Cholesky-factor it in extended precision, and read the basis coefficients
/// off the inverse factor. Throws numerical_error if a Cholesky pivot falls
/// below 1e-12 of the first pivot, config_error if N is out of range.
OrthonormalBasis build_basis(const Band& band, int N, int cap = kDefaultBasisCap);

} // namespace kband
