#pragma once

#include <vector>

#include "kband/errors.hpp"

namespace kband {

/// Wavenumber interval [k_lo, k_hi] with midpoint k0. All basis functions
/// and quadrature rules live on this interval.
struct Band {
  double k_lo;
  double k_hi;

  Band(double lo, double hi) : k_lo(lo), k_hi(hi) {
    if (!(0.0 < k_lo) || !(k_lo < k_hi))
      throw config_error("band degenerate: require 0 < k_lo < k_hi");
  }

  double k0() const { return 0.5 * (k_lo + k_hi); }
  double half_width() const { return 0.5 * (k_hi - k_lo); }
  double width() const { return k_hi - k_lo; }
};

/// Nodes and positive weights for integration over an interval.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule with n points on (-1, 1). Exact for polynomials of
/// degree <= 2n-1. Nodes by Newton iteration on P_n.
QuadratureRule gauss_legendre(int n);

/// Gauss-Legendre rule mapped to (k_lo, k_hi). Weights sum to the band width.
QuadratureRule band_rule(const Band& band, int n);

} // namespace kband
