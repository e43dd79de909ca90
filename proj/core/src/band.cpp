#include "kband/band.hpp"

#include <cmath>

namespace kband {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw config_error("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  for (int i = 0; i < n; ++i) {
    // Chebyshev-based initial guess, refined by Newton on P_n(x) = 0.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

QuadratureRule band_rule(const Band& band, int n) {
  QuadratureRule base = gauss_legendre(n);
  const double c = band.k0();
  const double L = band.half_width();
  QuadratureRule rule;
  rule.nodes.reserve(n);
  rule.weights.reserve(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes.push_back(c + L * base.nodes[i]);
    rule.weights.push_back(L * base.weights[i]);
  }
  return rule;
}

} // namespace kband
