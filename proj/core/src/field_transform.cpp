#include "kband/field_transform.hpp"

#include <cmath>
#include <string>

namespace kband {

namespace {
std::string sample_name(int ix, int iy, int ik) {
  return "(ix=" + std::to_string(ix) + ", iy=" + std::to_string(iy) +
         ", ik=" + std::to_string(ik) + ")";
}
} // namespace

SampledField incident_field(const SpaceGrid& grid,
                            const std::vector<double>& k_nodes) {
  SampledField f(grid, k_nodes);
  for (std::size_t ik = 0; ik < k_nodes.size(); ++ik)
    for (int iy = 0; iy < grid.n; ++iy) {
      const std::complex<double> val =
          std::exp(std::complex<double>(0.0, -k_nodes[ik] * grid.coord(iy)));
      for (int ix = 0; ix < grid.n; ++ix) f.at(ix, iy, ik) = val;
    }
  return f;
}

SampledField total_to_p(const SampledField& u) {
  SampledField p(u.grid, u.k_nodes);
  for (std::size_t ik = 0; ik < u.k_nodes.size(); ++ik)
    for (int iy = 0; iy < u.grid.n; ++iy) {
      const std::complex<double> uin =
          std::exp(std::complex<double>(0.0, -u.k_nodes[ik] * u.grid.coord(iy)));
      for (int ix = 0; ix < u.grid.n; ++ix) {
        const std::complex<double> val = u.at(ix, iy, ik);
        if (std::abs(val) < 1e-12)
          throw numerical_error("total_to_p: total field vanishes at sample " +
                                sample_name(ix, iy, static_cast<int>(ik)));
        p.at(ix, iy, ik) = val / uin;
      }
    }
  return p;
}

SampledField p_to_v(const SampledField& p) {
  const int nk = static_cast<int>(p.k_nodes.size());
  SampledField v(p.grid, p.k_nodes);
  for (int iy = 0; iy < p.grid.n; ++iy)
    for (int ix = 0; ix < p.grid.n; ++ix) {
      double theta = 0.0;
      for (int ik = 0; ik < nk; ++ik) {
        const std::complex<double> val = p.at(ix, iy, ik);
        if (std::abs(val) < 1e-12)
          throw numerical_error("p_to_v: field vanishes at sample " +
                                sample_name(ix, iy, ik));
        if (ik == 0) {
          theta = std::arg(val);
        } else {
          const double step = std::arg(val / p.at(ix, iy, ik - 1));
          if (std::abs(step) >= M_PI - 1e-9)
            throw numerical_error(
                "p_to_v: phase step >= pi between adjacent k nodes at sample " +
                sample_name(ix, iy, ik) + "; refine the k grid");
          theta += step;
        }
        const double k = p.k_nodes[ik];
        v.at(ix, iy, ik) =
            std::complex<double>(std::log(std::abs(val)), theta) / (k * k);
      }
    }
  return v;
}

SampledField k_derivative(const SampledField& v) {
  const int nk = static_cast<int>(v.k_nodes.size());
  if (nk < 3) throw config_error("k_derivative: need at least 3 k nodes");
  SampledField dv(v.grid, v.k_nodes);
  const auto& k = v.k_nodes;
  for (int ik = 0; ik < nk; ++ik) {
    // 3-point second-order stencil on a non-uniform grid.
    int i0 = ik == 0 ? 0 : (ik == nk - 1 ? nk - 3 : ik - 1);
    const double x0 = k[i0], x1 = k[i0 + 1], x2 = k[i0 + 2], x = k[ik];
    const double c0 = (2.0 * x - x1 - x2) / ((x0 - x1) * (x0 - x2));
    const double c1 = (2.0 * x - x0 - x2) / ((x1 - x0) * (x1 - x2));
    const double c2 = (2.0 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
    for (int iy = 0; iy < v.grid.n; ++iy)
      for (int ix = 0; ix < v.grid.n; ++ix)
        dv.at(ix, iy, ik) = c0 * v.at(ix, iy, i0) + c1 * v.at(ix, iy, i0 + 1) +
                            c2 * v.at(ix, iy, i0 + 2);
  }
  return dv;
}

RecoveredCoefficient recover_a(const SampledField& v) {
  const int nk = static_cast<int>(v.k_nodes.size());
  const SpaceGrid& grid = v.grid;
  const int np = grid.point_count();

  std::vector<ComplexGrid> per_node(nk);
  for (int ik = 0; ik < nk; ++ik) {
    const double k = v.k_nodes[ik];
    const ComplexGrid s = v.slice(ik);
    const ComplexGrid lap = laplacian(s, grid);
    const ComplexGrid gx = grad_x(s, grid);
    const ComplexGrid gy = grad_y(s, grid);
    ComplexGrid a(np, 0.0);
    for (int iy = 1; iy < grid.n - 1; ++iy)
      for (int ix = 1; ix < grid.n - 1; ++ix) {
        const int i = grid.index(ix, iy);
        a[i] = -(lap[i] + k * k * (gx[i] * gx[i] + gy[i] * gy[i]) -
                 std::complex<double>(0.0, 2.0 * k) * gy[i]);
      }
    per_node[ik] = std::move(a);
  }

  RecoveredCoefficient out{grid, RealGrid(np, 0.0)};
  for (int iy = 1; iy < grid.n - 1; ++iy)
    for (int ix = 1; ix < grid.n - 1; ++ix) {
      const int i = grid.index(ix, iy);
      std::complex<double> mean = 0.0;
      for (int ik = 0; ik < nk; ++ik) mean += per_node[ik][i];
      mean /= static_cast<double>(nk);
      out.a[i] = mean.real();
      out.max_imag = std::max(out.max_imag, std::abs(mean.imag()));
      for (int ik = 0; ik < nk; ++ik)
        out.per_node_spread =
            std::max(out.per_node_spread, std::abs(per_node[ik][i] - mean));
    }
  return out;
}

} // namespace kband
