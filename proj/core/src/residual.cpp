#include "kband/residual.hpp"

#include <cmath>

#include "kband/field_transform.hpp"

namespace kband {

namespace {

void check_same_shape(const SampledField& a, const SampledField& b,
                      const char* who) {
  if (a.grid.n != b.grid.n || a.k_nodes.size() != b.k_nodes.size())
    throw config_error(std::string(who) + ": shape mismatch");
}

// Values of Phi_n and Phi_n' at a set of nodes, n = 1..N.
struct BasisTable {
  int N;
  std::vector<double> phi;  // [q * N + (n-1)]
  std::vector<double> dphi;

  BasisTable(const OrthonormalBasis& basis, const std::vector<double>& nodes,
             int N_)
      : N(N_), phi(nodes.size() * N_), dphi(nodes.size() * N_) {
    for (std::size_t q = 0; q < nodes.size(); ++q)
      for (int n = 1; n <= N; ++n) {
        phi[q * N + n - 1] = basis.eval(n, nodes[q]);
        dphi[q * N + n - 1] = basis.eval_deriv(n, nodes[q]);
      }
  }
};

} // namespace

double ManufacturedField::phi(double x, double y) const {
  const double q = (x * x + y * y) / (rho * rho);
  if (q >= 1.0) return 0.0;
  const double w = 1.0 - q;
  return w * w * w * w;
}

void ManufacturedField::phi_derivs(double x, double y, double& dpx, double& dpy,
                                   double& lap) const {
  const double q = (x * x + y * y) / (rho * rho);
  if (q >= 1.0) {
    dpx = dpy = lap = 0.0;
    return;
  }
  const double w = 1.0 - q;
  const double c = -8.0 * w * w * w / (rho * rho);
  dpx = c * x;
  dpy = c * y;
  lap = 16.0 / (rho * rho) * w * w * (4.0 * q - 1.0);
}

SampledField ManufacturedField::sample_v(
    const SpaceGrid& grid, const std::vector<double>& k_nodes) const {
  SampledField v(grid, k_nodes);
  for (std::size_t ik = 0; ik < k_nodes.size(); ++ik) {
    const double c = chi(k_nodes[ik]);
    for (int iy = 0; iy < grid.n; ++iy)
      for (int ix = 0; ix < grid.n; ++ix)
        v.at(ix, iy, static_cast<int>(ik)) =
            phi(grid.coord(ix), grid.coord(iy)) * c;
  }
  return v;
}

SampledField ManufacturedField::sample_dkv(
    const SpaceGrid& grid, const std::vector<double>& k_nodes) const {
  SampledField v(grid, k_nodes);
  for (std::size_t ik = 0; ik < k_nodes.size(); ++ik) {
    const double c = chi_prime(k_nodes[ik]);
    for (int iy = 0; iy < grid.n; ++iy)
      for (int ix = 0; ix < grid.n; ++ix)
        v.at(ix, iy, static_cast<int>(ik)) =
            phi(grid.coord(ix), grid.coord(iy)) * c;
  }
  return v;
}

ManufacturedField ManufacturedField::gaussian(double k0, double alpha,
                                              double rho) {
  ManufacturedField mf;
  mf.rho = rho;
  mf.chi = [k0, alpha](double k) {
    const double t = k - k0;
    return std::exp(-alpha * t * t);
  };
  mf.chi_prime = [k0, alpha](double k) {
    const double t = k - k0;
    return -2.0 * alpha * t * std::exp(-alpha * t * t);
  };
  return mf;
}

ManufacturedField ManufacturedField::in_span(const OrthonormalBasis& basis,
                                             const Eigen::VectorXd& c,
                                             double rho) {
  if (c.size() > basis.size())
    throw config_error("ManufacturedField::in_span: too many coefficients");
  ManufacturedField mf;
  mf.rho = rho;
  mf.chi = [basis, c](double k) {
    double s = 0.0;
    for (int n = 1; n <= c.size(); ++n) s += c(n - 1) * basis.eval(n, k);
    return s;
  };
  mf.chi_prime = [basis, c](double k) {
    double s = 0.0;
    for (int n = 1; n <= c.size(); ++n) s += c(n - 1) * basis.eval_deriv(n, k);
    return s;
  };
  return mf;
}

cplx manufactured_h(const ManufacturedField& mf, double x, double y, double k) {
  double dpx, dpy, lap;
  mf.phi_derivs(x, y, dpx, dpy, lap);
  const double c = mf.chi(k);
  const double cp = mf.chi_prime(k);
  const double grad2 = dpx * dpx + dpy * dpy;
  return cplx(cp * lap + 2.0 * k * c * (c + k * cp) * grad2,
              -2.0 * (c + k * cp) * dpy);
}

cplx manufactured_hN(const ManufacturedField& mf, const OrthonormalBasis& basis,
                     const Eigen::VectorXcd& chi_coeffs, double x, double y,
                     double k) {
  double dpx, dpy, lap;
  mf.phi_derivs(x, y, dpx, dpy, lap);
  const cplx c = eval_expansion(chi_coeffs, basis, k);
  const cplx cp = eval_expansion_deriv(chi_coeffs, basis, k);
  const double grad2 = dpx * dpx + dpy * dpy;
  return cp * lap + 2.0 * k * c * (c + k * cp) * grad2 -
         cplx(0.0, 2.0) * (c + k * cp) * dpy;
}

SampledField compute_h(const SampledField& v, const SampledField& dkv) {
  check_same_shape(v, dkv, "compute_h");
  const SpaceGrid& grid = v.grid;
  SampledField h(grid, v.k_nodes);
  for (std::size_t ik = 0; ik < v.k_nodes.size(); ++ik) {
    const double k = v.k_nodes[ik];
    const ComplexGrid sv = v.slice(static_cast<int>(ik));
    const ComplexGrid sd = dkv.slice(static_cast<int>(ik));
    const ComplexGrid lap_d = laplacian(sd, grid);
    const ComplexGrid gx_v = grad_x(sv, grid), gy_v = grad_y(sv, grid);
    const ComplexGrid gx_d = grad_x(sd, grid), gy_d = grad_y(sd, grid);
    for (int iy = 1; iy < grid.n - 1; ++iy)
      for (int ix = 1; ix < grid.n - 1; ++ix) {
        const int i = grid.index(ix, iy);
        const cplx quad = gx_v[i] * (gx_v[i] + k * gx_d[i]) +
                          gy_v[i] * (gy_v[i] + k * gy_d[i]);
        h.at(ix, iy, static_cast<int>(ik)) =
            lap_d[i] + 2.0 * k * quad -
            cplx(0.0, 2.0) * (gy_v[i] + k * gy_d[i]);
      }
  }
  return h;
}

std::vector<ComplexGrid> coefficient_grids(const SampledField& v,
                                           const OrthonormalBasis& basis,
                                           const QuadratureRule& rule, int N) {
  if (v.k_nodes.size() != rule.size())
    throw config_error("coefficient_grids: k sampling does not match rule");
  if (N < 1 || N > basis.size())
    throw config_error("coefficient_grids: N out of range");
  const int np = v.grid.point_count();
  const BasisTable tab(basis, rule.nodes, N);
  std::vector<ComplexGrid> V(N, ComplexGrid(np, 0.0));
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double w = rule.weights[q];
    const std::size_t off = q * np;
    for (int n = 0; n < N; ++n) {
      const double wphi = w * tab.phi[q * N + n];
      for (int i = 0; i < np; ++i) V[n][i] += wphi * v.values[off + i];
    }
  }
  return V;
}

SampledField compute_hN(const SampledField& v, const OrthonormalBasis& basis,
                        const QuadratureRule& rule, int N, bool commuted) {
  const SpaceGrid& grid = v.grid;
  const int np = grid.point_count();
  const BasisTable tab(basis, rule.nodes, N);

  if (!commuted) {
    const auto V = coefficient_grids(v, basis, rule, N);
    SampledField pv(grid, v.k_nodes), pdv(grid, v.k_nodes);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const std::size_t off = q * np;
      for (int i = 0; i < np; ++i) {
        cplx a = 0.0, b = 0.0;
        for (int n = 0; n < N; ++n) {
          a += V[n][i] * tab.phi[q * N + n];
          b += V[n][i] * tab.dphi[q * N + n];
        }
        pv.values[off + i] = a;
        pdv.values[off + i] = b;
      }
    }
    return compute_h(pv, pdv);
  }

  // Proof form: spatial derivatives first, then projection in k.
  std::vector<ComplexGrid> lapC(N, ComplexGrid(np, 0.0)),
      gxC(N, ComplexGrid(np, 0.0)), gyC(N, ComplexGrid(np, 0.0));
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const ComplexGrid s = v.slice(static_cast<int>(q));
    const ComplexGrid lap = laplacian(s, grid);
    const ComplexGrid gx = grad_x(s, grid);
    const ComplexGrid gy = grad_y(s, grid);
    const double w = rule.weights[q];
    for (int n = 0; n < N; ++n) {
      const double wphi = w * tab.phi[q * N + n];
      for (int i = 0; i < np; ++i) {
        lapC[n][i] += wphi * lap[i];
        gxC[n][i] += wphi * gx[i];
        gyC[n][i] += wphi * gy[i];
      }
    }
  }

  SampledField h(grid, v.k_nodes);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double k = rule.nodes[q];
    const std::size_t off = q * np;
    for (int iy = 1; iy < grid.n - 1; ++iy)
      for (int ix = 1; ix < grid.n - 1; ++ix) {
        const int i = grid.index(ix, iy);
        cplx dk_lap = 0.0, pgx = 0.0, pgy = 0.0, dk_pgx = 0.0, dk_pgy = 0.0;
        for (int n = 0; n < N; ++n) {
          const double ph = tab.phi[q * N + n];
          const double dph = tab.dphi[q * N + n];
          dk_lap += lapC[n][i] * dph;
          pgx += gxC[n][i] * ph;
          pgy += gyC[n][i] * ph;
          dk_pgx += gxC[n][i] * dph;
          dk_pgy += gyC[n][i] * dph;
        }
        const cplx quad = pgx * (pgx + k * dk_pgx) + pgy * (pgy + k * dk_pgy);
        h.values[off + i] =
            dk_lap + 2.0 * k * quad - cplx(0.0, 2.0) * (pgy + k * dk_pgy);
      }
  }
  return h;
}

double residual_norm(const SampledField& a, const SampledField& b,
                     const QuadratureRule& k_rule) {
  check_same_shape(a, b, "residual_norm");
  if (a.k_nodes.size() != k_rule.size())
    throw config_error("residual_norm: k sampling does not match rule");
  const SpaceGrid& grid = a.grid;
  double s = 0.0;
  for (std::size_t ik = 0; ik < k_rule.size(); ++ik) {
    double sx = 0.0;
    for (int iy = 1; iy < grid.n - 1; ++iy)
      for (int ix = 1; ix < grid.n - 1; ++ix)
        sx += interior_trapezoid_weight(grid, ix, iy) *
              std::norm(a.at(ix, iy, static_cast<int>(ik)) -
                        b.at(ix, iy, static_cast<int>(ik)));
    s += k_rule.weights[ik] * sx;
  }
  return std::sqrt(s);
}

double field_norm(const SampledField& a, const QuadratureRule& k_rule) {
  SampledField zero(a.grid, a.k_nodes);
  return residual_norm(a, zero, k_rule);
}

std::vector<ComplexGrid> system_residual(const std::vector<ComplexGrid>& V,
                                         const GalerkinSystem& sys,
                                         const SpaceGrid& grid) {
  const int N = static_cast<int>(V.size());
  if (N != sys.size) throw config_error("system_residual: dimension mismatch");
  const int np = grid.point_count();

  std::vector<ComplexGrid> lapV(N), gxV(N), gyV(N);
  for (int n = 0; n < N; ++n) {
    lapV[n] = laplacian(V[n], grid);
    gxV[n] = grad_x(V[n], grid);
    gyV[n] = grad_y(V[n], grid);
  }

  std::vector<ComplexGrid> out(N, ComplexGrid(np, 0.0));
  Eigen::VectorXcd lap(N), gx(N), gy(N);
  for (int iy = 1; iy < grid.n - 1; ++iy)
    for (int ix = 1; ix < grid.n - 1; ++ix) {
      const int i = grid.index(ix, iy);
      for (int n = 0; n < N; ++n) {
        lap(n) = lapV[n][i];
        gx(n) = gxV[n][i];
        gy(n) = gyV[n][i];
      }
      Eigen::VectorXcd r = sys.D.cast<cplx>() * lap + sys.S * gy;
      r += bullet(block_apply(sys, gx), gx);
      r += bullet(block_apply(sys, gy), gy);
      for (int m = 0; m < N; ++m) out[m][i] = r(m);
    }
  return out;
}

namespace {

// Shared by the stencil and closed-form paths: gap between the assembled
// system and the Phi_m-weighted integral of the truncated equation, given
// the spatial-derivative coefficient grids.
double gap_from_derivative_grids(const std::vector<ComplexGrid>& lapV,
                                 const std::vector<ComplexGrid>& gxV,
                                 const std::vector<ComplexGrid>& gyV,
                                 const OrthonormalBasis& basis,
                                 const GalerkinSystem& sys,
                                 const SpaceGrid& grid,
                                 const QuadratureRule& check_rule) {
  const int N = sys.size;
  const BasisTable tab(basis, check_rule.nodes, N);
  const std::size_t nq = check_rule.size();

  double gap = 0.0;
  Eigen::VectorXcd lap(N), gx(N), gy(N);
  for (int iy = 1; iy < grid.n - 1; ++iy)
    for (int ix = 1; ix < grid.n - 1; ++ix) {
      const int i = grid.index(ix, iy);
      for (int n = 0; n < N; ++n) {
        lap(n) = lapV[n][i];
        gx(n) = gxV[n][i];
        gy(n) = gyV[n][i];
      }
      Eigen::VectorXcd sysr = sys.D.cast<cplx>() * lap + sys.S * gy;
      sysr += bullet(block_apply(sys, gx), gx);
      sysr += bullet(block_apply(sys, gy), gy);

      // int Phi_m h_N dk by the check rule, h_N rebuilt from the same grids.
      Eigen::VectorXcd proj = Eigen::VectorXcd::Zero(N);
      for (std::size_t q = 0; q < nq; ++q) {
        const double k = check_rule.nodes[q];
        cplx dk_lap = 0.0, pgx = 0.0, pgy = 0.0, dk_pgx = 0.0, dk_pgy = 0.0;
        for (int n = 0; n < N; ++n) {
          const double ph = tab.phi[q * N + n];
          const double dph = tab.dphi[q * N + n];
          dk_lap += lap(n) * dph;
          pgx += gx(n) * ph;
          pgy += gy(n) * ph;
          dk_pgx += gx(n) * dph;
          dk_pgy += gy(n) * dph;
        }
        const cplx quad = pgx * (pgx + k * dk_pgx) + pgy * (pgy + k * dk_pgy);
        const cplx hN =
            dk_lap + 2.0 * k * quad - cplx(0.0, 2.0) * (pgy + k * dk_pgy);
        const double w = check_rule.weights[q];
        for (int m = 0; m < N; ++m) proj(m) += w * tab.phi[q * N + m] * hN;
      }
      gap = std::max(gap, (sysr - proj).cwiseAbs().maxCoeff());
    }
  return gap;
}

} // namespace

double galerkin_consistency_gap(const std::vector<ComplexGrid>& V,
                                const OrthonormalBasis& basis,
                                const GalerkinSystem& sys,
                                const SpaceGrid& grid,
                                const QuadratureRule& check_rule) {
  const int N = static_cast<int>(V.size());
  if (N != sys.size)
    throw config_error("galerkin_consistency_gap: dimension mismatch");
  std::vector<ComplexGrid> lapV(N), gxV(N), gyV(N);
  for (int n = 0; n < N; ++n) {
    lapV[n] = laplacian(V[n], grid);
    gxV[n] = grad_x(V[n], grid);
    gyV[n] = grad_y(V[n], grid);
  }
  return gap_from_derivative_grids(lapV, gxV, gyV, basis, sys, grid,
                                   check_rule);
}

ResidualReport decay_study_manufactured(const ManufacturedField& mf,
                                        const OrthonormalBasis& basis,
                                        const QuadratureRule& rule,
                                        const SpaceGrid& grid,
                                        const std::vector<int>& n_list) {
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw config_error("decay_study: N list must be strictly increasing");
  if (!n_list.empty() && n_list.back() > basis.size())
    throw config_error("decay_study: N exceeds basis size");

  // chi coefficients up to the full basis; tails come from here.
  const Eigen::VectorXcd chi_all = fourier_coeffs(
      [&](double k) { return cplx(mf.chi(k), 0.0); }, basis, rule,
      basis.size());

  // Closed-form h sampled at the rule nodes.
  SampledField h(grid, rule.nodes);
  for (std::size_t q = 0; q < rule.size(); ++q)
    for (int iy = 0; iy < grid.n; ++iy)
      for (int ix = 0; ix < grid.n; ++ix)
        h.at(ix, iy, static_cast<int>(q)) = manufactured_h(
            mf, grid.coord(ix), grid.coord(iy), rule.nodes[q]);
  const double h_norm = field_norm(h, rule);

  const GalerkinSystem sys_full = assemble_system(basis);
  const QuadratureRule check_rule =
      band_rule(basis.band(), std::max<int>(24, static_cast<int>(rule.size())));
  const int np = grid.point_count();

  ResidualReport report;
  for (int N : n_list) {
    const Eigen::VectorXcd chiN = chi_all.head(N);
    SampledField hN(grid, rule.nodes);
    for (std::size_t q = 0; q < rule.size(); ++q)
      for (int iy = 0; iy < grid.n; ++iy)
        for (int ix = 0; ix < grid.n; ++ix)
          hN.at(ix, iy, static_cast<int>(q)) =
              manufactured_hN(mf, basis, chiN, grid.coord(ix), grid.coord(iy),
                              rule.nodes[q]);

    ResidualRow row;
    row.N = N;
    row.abs_residual = residual_norm(hN, h, rule);
    row.rel_residual = h_norm > 0.0 ? row.abs_residual / h_norm : 0.0;
    for (int n = N; n < basis.size(); ++n)
      row.tail_coeff = std::max(row.tail_coeff, std::abs(chi_all(n)));

    // Closed-form derivative grids of V_n = phi * chi_n.
    GalerkinSystem sysN;
    sysN.size = N;
    sysN.D = sys_full.D.topLeftCorner(N, N);
    sysN.S = sys_full.S.topLeftCorner(N, N);
    sysN.B.resize(static_cast<std::size_t>(N) * N);
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n)
        sysN.B[m * N + n] = sys_full.block(m, n).head(N);

    std::vector<ComplexGrid> lapV(N, ComplexGrid(np, 0.0)),
        gxV(N, ComplexGrid(np, 0.0)), gyV(N, ComplexGrid(np, 0.0));
    for (int iy = 0; iy < grid.n; ++iy)
      for (int ix = 0; ix < grid.n; ++ix) {
        double dpx, dpy, lapphi;
        mf.phi_derivs(grid.coord(ix), grid.coord(iy), dpx, dpy, lapphi);
        const int i = grid.index(ix, iy);
        for (int n = 0; n < N; ++n) {
          lapV[n][i] = lapphi * chiN(n);
          gxV[n][i] = dpx * chiN(n);
          gyV[n][i] = dpy * chiN(n);
        }
      }
    row.galerkin_gap = gap_from_derivative_grids(lapV, gxV, gyV, basis, sysN,
                                                 grid, check_rule);
    report.rows.push_back(row);
  }
  return report;
}

ResidualReport decay_study_solver(const SampledField& v,
                                  const OrthonormalBasis& basis,
                                  const QuadratureRule& rule,
                                  const std::vector<int>& n_list) {
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw config_error("decay_study: N list must be strictly increasing");
  if (v.k_nodes.size() != rule.size())
    throw config_error("decay_study: field sampling does not match rule");
  if (!n_list.empty() && n_list.back() > basis.size())
    throw config_error("decay_study: N exceeds basis size");

  const SampledField h = compute_h(v, k_derivative(v));
  const double h_norm = field_norm(h, rule);

  const int n_extract =
      std::min<int>(basis.size(), static_cast<int>(rule.size()));
  const auto all_coeffs = coefficient_grids(v, basis, rule, n_extract);

  const GalerkinSystem sys_full = assemble_system(basis);
  const QuadratureRule check_rule =
      band_rule(basis.band(), std::max<int>(24, static_cast<int>(rule.size())));

  ResidualReport report;
  for (int N : n_list) {
    ResidualRow row;
    row.N = N;
    const SampledField hN = compute_hN(v, basis, rule, N);
    row.abs_residual = residual_norm(hN, h, rule);
    row.rel_residual = h_norm > 0.0 ? row.abs_residual / h_norm : 0.0;
    for (int n = N; n < n_extract; ++n)
      for (const cplx& c : all_coeffs[n])
        row.tail_coeff = std::max(row.tail_coeff, std::abs(c));

    GalerkinSystem sysN;
    sysN.size = N;
    sysN.D = sys_full.D.topLeftCorner(N, N);
    sysN.S = sys_full.S.topLeftCorner(N, N);
    sysN.B.resize(static_cast<std::size_t>(N) * N);
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n)
        sysN.B[m * N + n] = sys_full.block(m, n).head(N);

    std::vector<ComplexGrid> V(all_coeffs.begin(), all_coeffs.begin() + N);
    row.galerkin_gap =
        galerkin_consistency_gap(V, basis, sysN, v.grid, check_rule);
    report.rows.push_back(row);
  }
  return report;
}

} // namespace kband
