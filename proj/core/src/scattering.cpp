#include "kband/scattering.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <thread>

namespace kband {

namespace {

using cd = std::complex<double>;

cd hankel1(int order, double x) {
  return cd(std::cyl_bessel_j(order, x), std::cyl_neumann(order, x));
}

/// Kernel integrated over the disk of radius rho centered at the singularity:
/// int_disk (i/4) H0(kr) dA = (i pi rho / 2k) H1(k rho) - 1/k^2.
cd self_cell_weight(double k, double rho) {
  return cd(0.0, M_PI * rho / (2.0 * k)) * hankel1(1, k * rho) -
         cd(1.0 / (k * k), 0.0);
}

/// Kernel integrated over the square cell of side hc centered at offset
/// (dx, dy) = target - cell center. Far cells use the midpoint rule; near
/// cells (within a few diameters, where the midpoint error is non-smooth in
/// the target position) are subdivided, with the equal-area disk correction
/// on any subcell that contains the target.
cd cell_weight(double k, double dx, double dy, double hc) {
  const double r = std::hypot(dx, dy);
  if (r >= 4.0 * hc) return cd(0.0, 0.25) * hankel1(0, k * r) * hc * hc;
  // Odd subdivision in the near zone so a target at the cell center lands
  // exactly on a subcell center; half-open membership so a target on a
  // subcell edge is counted once.
  const int s = (r >= 2.0 * hc) ? 4 : 9;
  const double hs = hc / s;
  const double rho_s = hs / std::sqrt(M_PI);
  cd acc(0.0, 0.0);
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < s; ++i) {
      const double ox = dx + hc / 2.0 - (i + 0.5) * hs;
      const double oy = dy + hc / 2.0 - (j + 0.5) * hs;
      const double rs = std::hypot(ox, oy);
      const bool inside = ox > -hs / 2.0 && ox <= hs / 2.0 &&
                          oy > -hs / 2.0 && oy <= hs / 2.0;
      acc += inside ? self_cell_weight(k, rho_s)
                    : cd(0.0, 0.25) * hankel1(0, k * rs) * hs * hs;
    }
  return acc;
}

} // namespace

double BumpMedium::operator()(double x, double y) const {
  const double s2 =
      ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (radius * radius);
  if (s2 >= 1.0) return 0.0;
  return contrast * std::exp(1.0 - 1.0 / (1.0 - s2));
}

std::complex<double> greens_kernel(double k, double x1, double y1, double x2,
                                   double y2) {
  const double r = std::hypot(x1 - x2, y1 - y2);
  if (r < 1e-14)
    throw numerical_error("greens_kernel: coincident points");
  return cd(0.0, 0.25) * hankel1(0, k * r);
}

LippmannSchwingerSolution solve_lippmann_schwinger(const BumpMedium& medium,
                                                   double k, int support_n) {
  if (support_n < 1 || support_n > 64)
    throw config_error(
        "solve_lippmann_schwinger: support grid must be 1..64 per axis "
        "(dense mode)");

  LippmannSchwingerSolution sol;
  sol.k = k;
  const double hc = 2.0 * medium.radius / support_n;
  sol.cell_area = hc * hc;
  sol.cell_radius = hc / std::sqrt(M_PI);

  // Cell-centered nodes over the bump bounding box; drop zero-contrast cells.
  for (int j = 0; j < support_n; ++j)
    for (int i = 0; i < support_n; ++i) {
      const double x = medium.cx - medium.radius + (i + 0.5) * hc;
      const double y = medium.cy - medium.radius + (j + 0.5) * hc;
      const double a = medium(x, y);
      if (a == 0.0) continue;
      sol.xs.push_back(x);
      sol.ys.push_back(y);
      sol.a_vals.push_back(a);
    }

  const int m = static_cast<int>(sol.xs.size());
  if (m == 0) {
    sol.solve_residual = 0.0;
    return sol; // a == 0: u == u_in everywhere
  }

  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const cd w =
          cell_weight(k, sol.xs[i] - sol.xs[j], sol.ys[i] - sol.ys[j], hc);
      A(i, j) -= k * k * w * sol.a_vals[j];
    }

  Eigen::VectorXcd rhs(m);
  for (int i = 0; i < m; ++i)
    rhs(i) = std::exp(cd(0.0, -k * sol.ys[i]));

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  Eigen::VectorXcd u = lu.solve(rhs);
  sol.solve_residual = (A * u - rhs).norm() / rhs.norm();
  if (!u.allFinite() || sol.solve_residual > 1e-8)
    throw numerical_error(
        "solve_lippmann_schwinger: singular or badly conditioned system "
        "(relative residual " +
        std::to_string(sol.solve_residual) + ")");

  sol.u_support.assign(u.data(), u.data() + m);
  return sol;
}

std::complex<double> LippmannSchwingerSolution::total_field(double x,
                                                            double y) const {
  cd acc = std::exp(cd(0.0, -k * y));
  const double hc = std::sqrt(cell_area);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const cd w = cell_weight(k, x - xs[j], y - ys[j], hc);
    acc += k * k * w * a_vals[j] * u_support[j];
  }
  return acc;
}

std::complex<double> LippmannSchwingerSolution::total_field_dy(double x,
                                                               double y) const {
  cd acc = cd(0.0, -k) * std::exp(cd(0.0, -k * y));
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double r = std::hypot(x - xs[j], y - ys[j]);
    if (r < 1e-14)
      throw numerical_error("total_field_dy: evaluation on a support node");
    // d/dy (i/4) H0(kr) = -(i/4) k H1(kr) (y - y_j)/r
    const cd dw = cd(0.0, -0.25) * k * hankel1(1, k * r) * ((y - ys[j]) / r) *
                  cell_area;
    acc += k * k * dw * a_vals[j] * u_support[j];
  }
  return acc;
}

SampledField sample_total_field(
    const std::vector<LippmannSchwingerSolution>& solutions,
    const SpaceGrid& grid) {
  std::vector<double> ks;
  ks.reserve(solutions.size());
  for (const auto& s : solutions) ks.push_back(s.k);
  SampledField field(grid, ks);

  // independent per wavenumber
  std::vector<std::thread> workers;
  for (std::size_t ik = 0; ik < solutions.size(); ++ik)
    workers.emplace_back([&, ik] {
      for (int iy = 0; iy < grid.n; ++iy)
        for (int ix = 0; ix < grid.n; ++ix)
          field.at(ix, iy, static_cast<int>(ik)) =
              solutions[ik].total_field(grid.coord(ix), grid.coord(iy));
    });
  for (auto& w : workers) w.join();
  return field;
}

CauchyData extract_cauchy_data(
    const std::vector<LippmannSchwingerSolution>& solutions,
    const SpaceGrid& grid) {
  CauchyData data;
  data.n = grid.n;
  data.g0.resize(static_cast<std::size_t>(grid.n) * solutions.size());
  data.g1.resize(static_cast<std::size_t>(grid.n) * solutions.size());
  for (std::size_t ik = 0; ik < solutions.size(); ++ik) {
    data.k_nodes.push_back(solutions[ik].k);
    for (int ix = 0; ix < grid.n; ++ix) {
      const double x = grid.coord(ix);
      data.g0[ix + grid.n * ik] = solutions[ik].total_field(x, grid.R);
      data.g1[ix + grid.n * ik] = solutions[ik].total_field_dy(x, grid.R);
    }
  }
  return data;
}

} // namespace kband
