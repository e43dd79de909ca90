#pragma once

#include <vector>

namespace kband {

/// Function of the form f(k) = e^{k-k0} * sum_j c_j (k-k0)^j.
/// The family is closed under differentiation: f' has coefficients
/// c_j + (j+1) c_{j+1}, so derivatives are exact.
class ExpPolynomial {
public:
  ExpPolynomial() : k0_(0.0) {}
  ExpPolynomial(double k0, std::vector<double> coeffs)
      : k0_(k0), coeffs_(std::move(coeffs)) {}

  double k0() const { return k0_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  /// Degree of the polynomial factor (-1 for the zero function).
  int degree() const;

  double operator()(double k) const;

  ExpPolynomial derivative() const;

  /// Polynomial factor of k * f(k) = e^{k-k0} * (k0 + t) * p(t), t = k - k0.
  std::vector<double> times_k_poly() const;

private:
  double k0_;
  std::vector<double> coeffs_;
};

/// Plain polynomial product in the shifted variable t = k - k0.
std::vector<double> poly_mul(const std::vector<double>& a,
                             const std::vector<double>& b);

std::vector<double> poly_add(const std::vector<double>& a,
                             const std::vector<double>& b);

} // namespace kband
