#include "kband/exp_polynomial.hpp"

#include <cmath>

namespace kband {

int ExpPolynomial::degree() const {
  for (int j = static_cast<int>(coeffs_.size()) - 1; j >= 0; --j)
    if (coeffs_[j] != 0.0) return j;
  return -1;
}

double ExpPolynomial::operator()(double k) const {
  const long double t = k - k0_;
  long double p = 0.0L;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    p = p * t + static_cast<long double>(*it);
  return static_cast<double>(p * std::exp(t));
}

ExpPolynomial ExpPolynomial::derivative() const {
  std::vector<double> d(coeffs_.size(), 0.0);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    d[j] = coeffs_[j];
    if (j + 1 < coeffs_.size()) d[j] += (j + 1) * coeffs_[j + 1];
  }
  return ExpPolynomial(k0_, std::move(d));
}

std::vector<double> ExpPolynomial::times_k_poly() const {
  std::vector<double> out(coeffs_.size() + 1, 0.0);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    out[j] += k0_ * coeffs_[j]; // k0 * t^j
    out[j + 1] += coeffs_[j];   // t * t^j
  }
  return out;
}

std::vector<double> poly_mul(const std::vector<double>& a,
                             const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<double> poly_add(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

} // namespace kband
