#pragma once

#include "kband/grid.hpp"

namespace kband {

/// Plane wave e^{-ik y} travelling toward the measurement face.
SampledField incident_field(const SpaceGrid& grid,
                            const std::vector<double>& k_nodes);

/// p = u / u_in pointwise. Throws numerical_error when |u| < 1e-12 at any
/// sample (the log transform is invalid there).
SampledField total_to_p(const SampledField& u);

/// v = log(p) / k^2 with a k-continuous branch per grid point: principal
/// logarithm at the smallest k node, then phase accumulated along increasing
/// k. Throws numerical_error when an adjacent phase step reaches pi.
SampledField p_to_v(const SampledField& p);

/// d_k v by second-order differences on the (generally non-uniform) k grid;
/// 3-point one-sided at the ends. Needs at least 3 k nodes.
SampledField k_derivative(const SampledField& v);

struct RecoveredCoefficient {
  SpaceGrid grid;
  RealGrid a;             // Re of the k-averaged recovery; boundary ring zero
  double max_imag = 0.0;  // max |Im a| over the interior (consistency check)
  double per_node_spread = 0.0; // max deviation of a single-node estimate
                                // from the k-average
};

/// a(x) = -[ lap v + k^2 grad v . grad v - 2ik d_y v ] per k node, averaged
/// over the nodes. The true coefficient is real; max_imag carries the
/// imaginary leakage as a quality diagnostic.
RecoveredCoefficient recover_a(const SampledField& v);

} // namespace kband
