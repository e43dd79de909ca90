#include <doctest.h>

#include <cmath>
#include <complex>

#include <kband/band.hpp>
#include <kband/field_transform.hpp>
#include <kband/residual.hpp>

using namespace kband;

namespace {

using cd = std::complex<double>;

std::vector<double> k3() { return {1.1, 1.5, 1.9}; }

} // namespace

TEST_CASE("incident field: value, modulus, face sample") {
  const SpaceGrid grid(1.0, 9);
  const Band b(1.0, 2.0);
  const auto ks = band_rule(b, 4).nodes;
  const SampledField u = incident_field(grid, ks);

  const int iy0 = 4; // y = 0 row
  CHECK(grid.coord(iy0) == doctest::Approx(0.0));
  for (std::size_t ik = 0; ik < ks.size(); ++ik)
    CHECK(std::abs(u.at(3, iy0, static_cast<int>(ik)) - cd(1.0, 0.0)) <= 1e-15);

  for (std::size_t ik = 0; ik < ks.size(); ++ik)
    for (int iy = 0; iy < grid.n; ++iy)
      for (int ix = 0; ix < grid.n; ++ix)
        CHECK(std::abs(std::abs(u.at(ix, iy, static_cast<int>(ik))) - 1.0) <= 1e-14);

  // y = R row against the direct exponential
  const cd expect = std::exp(cd(0.0, -ks[0] * grid.R));
  CHECK(std::abs(u.at(2, grid.n - 1, 0) - expect) <= 1e-14);
}

TEST_CASE("total_to_p: identity on incident data, round trip, zero guard") {
  const SpaceGrid grid(1.0, 7);
  const SampledField uin = incident_field(grid, k3());

  const SampledField p = total_to_p(uin);
  for (const cd& z : p.values) CHECK(std::abs(z - cd(1.0, 0.0)) <= 1e-14);

  // round trip on a synthetic smooth total field
  SampledField u = uin;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    u.values[i] *= cd(1.2, 0.1) + 0.05 * static_cast<double>(i % 7);
  const SampledField p2 = total_to_p(u);
  for (std::size_t ik = 0; ik < u.k_nodes.size(); ++ik)
    for (int iy = 0; iy < grid.n; ++iy)
      for (int ix = 0; ix < grid.n; ++ix) {
        const cd uin_v = uin.at(ix, iy, static_cast<int>(ik));
        CHECK(std::abs(p2.at(ix, iy, static_cast<int>(ik)) * uin_v -
                       u.at(ix, iy, static_cast<int>(ik))) <= 1e-12);
      }

  u.values[5] = cd(1e-13, 0.0);
  CHECK_THROWS_AS(total_to_p(u), numerical_error);
}

TEST_CASE("p_to_v: constants, exact inverse, round trip through exp") {
  const SpaceGrid grid(1.0, 5);
  const Band b(1.0, 2.0);
  const auto ks = band_rule(b, 8).nodes;

  SampledField p(grid, ks);
  for (cd& z : p.values) z = 1.0;
  SampledField v = p_to_v(p);
  for (const cd& z : v.values) CHECK(std::abs(z) == 0.0);

  // p = exp(k^2 c) -> v = c
  const cd c(0.02, -0.03);
  for (std::size_t ik = 0; ik < ks.size(); ++ik)
    for (int i = 0; i < grid.point_count(); ++i)
      p.values[ik * grid.point_count() + i] = std::exp(ks[ik] * ks[ik] * c);
  v = p_to_v(p);
  for (const cd& z : v.values) CHECK(std::abs(z - c) <= 1e-13);

  // round trip: exp(k^2 v) = p
  for (std::size_t ik = 0; ik < ks.size(); ++ik)
    for (int i = 0; i < grid.point_count(); ++i)
      p.values[ik * grid.point_count() + i] =
          std::exp(cd(0.01 * i, 0.3 * (ik + 1.0)));
  v = p_to_v(p);
  for (std::size_t ik = 0; ik < ks.size(); ++ik)
    for (int i = 0; i < grid.point_count(); ++i) {
      const std::size_t idx = ik * grid.point_count() + i;
      CHECK(std::abs(std::exp(ks[ik] * ks[ik] * v.values[idx]) -
                     p.values[idx]) <= 1e-10);
    }
}

TEST_CASE("p_to_v: unwraps a 3-pi winding phase continuously") {
  const SpaceGrid grid(1.0, 3);
  const Band b(1.0, 2.0);
  std::vector<double> ks(16);
  for (int i = 0; i < 16; ++i) ks[i] = 1.0 + (i + 0.5) / 16.0;

  const auto theta = [&](double k) { return 3.0 * M_PI * (k - 1.0); };
  SampledField p(grid, ks);
  for (std::size_t ik = 0; ik < ks.size(); ++ik)
    for (int i = 0; i < grid.point_count(); ++i)
      p.values[ik * grid.point_count() + i] = std::exp(cd(0.0, theta(ks[ik])));

  const SampledField v = p_to_v(p);
  for (std::size_t ik = 0; ik < ks.size(); ++ik) {
    // expected v = i theta / k^2 with the continuous branch (no mod 2pi)
    const cd expect = cd(0.0, theta(ks[ik]) / (ks[ik] * ks[ik]));
    CHECK(std::abs(v.at(1, 1, static_cast<int>(ik)) - expect) <= 1e-12);
  }

  // nodes spaced so that adjacent samples are phase-opposed (step = pi,
  // the branch becomes ambiguous)
  std::vector<double> coarse = {1.0, 1.0 + 1.0 / 3.0, 1.0 + 2.0 / 3.0};
  SampledField pc(grid, coarse);
  for (std::size_t ik = 0; ik < coarse.size(); ++ik)
    for (int i = 0; i < grid.point_count(); ++i)
      pc.values[ik * grid.point_count() + i] =
          std::exp(cd(0.0, theta(coarse[ik])));
  CHECK_THROWS_AS(p_to_v(pc), numerical_error);
}

TEST_CASE("k_derivative: constants, linear exactness, basis-derivative oracle") {
  const SpaceGrid grid(1.0, 5);
  const Band b(1.0, 2.0);
  const auto rule = band_rule(b, 12);

  SampledField v(grid, rule.nodes);
  for (cd& z : v.values) z = cd(2.0, -1.0);
  SampledField d = k_derivative(v);
  for (const cd& z : d.values) CHECK(std::abs(z) <= 1e-12);

  // linear in k: exact
  for (std::size_t ik = 0; ik < rule.size(); ++ik)
    for (int i = 0; i < grid.point_count(); ++i)
      v.values[ik * grid.point_count() + i] = cd(3.0 * rule.nodes[ik] - 1.0, 0.5 * rule.nodes[ik]);
  d = k_derivative(v);
  for (const cd& z : d.values) CHECK(std::abs(z - cd(3.0, 0.5)) <= 1e-10);

  // v = Phi_2(k) phi(x): second-order accuracy against the exact derivative
  const auto basis = build_basis(b, 2);
  for (std::size_t ik = 0; ik < rule.size(); ++ik)
    for (int i = 0; i < grid.point_count(); ++i)
      v.values[ik * grid.point_count() + i] =
          basis.eval(2, rule.nodes[ik]) * (1.0 + 0.1 * i);
  d = k_derivative(v);
  double worst = 0.0, scale = 0.0;
  for (std::size_t ik = 1; ik + 1 < rule.size(); ++ik)
    for (int i = 0; i < grid.point_count(); ++i) {
      const cd exact = basis.eval_deriv(2, rule.nodes[ik]) * (1.0 + 0.1 * i);
      worst = std::max(worst,
                       std::abs(d.values[ik * grid.point_count() + i] - exact));
      scale = std::max(scale, std::abs(exact));
    }
  CHECK(worst / scale <= 5e-3); // O(dk^2) at 12 nodes

  SampledField two(grid, {1.1, 1.9});
  CHECK_THROWS_AS(k_derivative(two), config_error);
}

TEST_CASE("gradient and laplacian stencils") {
  const SpaceGrid grid(1.0, 33);

  ComplexGrid c(grid.point_count(), cd(4.0, -2.0));
  for (const cd& z : grad_x(c, grid)) CHECK(std::abs(z) <= 1e-12);
  for (const cd& z : grad_y(c, grid)) CHECK(std::abs(z) <= 1e-12);
  for (const cd& z : laplacian(c, grid)) CHECK(std::abs(z) <= 1e-12);

  // quadratic: laplacian exactly 2d = 4
  ComplexGrid q(grid.point_count());
  for (int iy = 0; iy < grid.n; ++iy)
    for (int ix = 0; ix < grid.n; ++ix) {
      const double x = grid.coord(ix), y = grid.coord(iy);
      q[grid.index(ix, iy)] = x * x + y * y;
    }
  const ComplexGrid lq = laplacian(q, grid);
  for (int iy = 1; iy < grid.n - 1; ++iy)
    for (int ix = 1; ix < grid.n - 1; ++ix)
      CHECK(std::abs(lq[grid.index(ix, iy)] - cd(4.0, 0.0)) <= 1e-10);

  CHECK_THROWS_AS(SpaceGrid(1.0, 2), config_error);
  CHECK_THROWS_AS(SpaceGrid(0.0, 9), config_error);
}

TEST_CASE("stencils converge at order 2 on a smooth bump") {
  const auto f = [](double x, double y) {
    return std::exp(-(x * x + 2.0 * y * y));
  };
  const auto lap_exact = [](double x, double y) {
    const double e = std::exp(-(x * x + 2.0 * y * y));
    return e * ((4.0 * x * x - 2.0) + (16.0 * y * y - 4.0));
  };

  double errs[2];
  int idx = 0;
  for (int n : {33, 65}) {
    const SpaceGrid grid(1.0, n);
    ComplexGrid g(grid.point_count());
    for (int iy = 0; iy < grid.n; ++iy)
      for (int ix = 0; ix < grid.n; ++ix)
        g[grid.index(ix, iy)] = f(grid.coord(ix), grid.coord(iy));
    const ComplexGrid lg = laplacian(g, grid);
    double worst = 0.0;
    for (int iy = 1; iy < grid.n - 1; ++iy)
      for (int ix = 1; ix < grid.n - 1; ++ix)
        worst = std::max(
            worst, std::abs(lg[grid.index(ix, iy)] -
                            lap_exact(grid.coord(ix), grid.coord(iy))));
    errs[idx++] = worst;
  }
  const double order = std::log2(errs[0] / errs[1]);
  CHECK(order >= 1.7);
  CHECK(order <= 2.3);
}

TEST_CASE("recover_a: zero field, manufactured per-node formula") {
  const SpaceGrid grid(1.0, 129);
  const Band b(1.0, 2.0);
  const auto ks = band_rule(b, 4).nodes;

  SampledField zero(grid, ks);
  const RecoveredCoefficient rz = recover_a(zero);
  for (double a : rz.a) CHECK(a == 0.0);
  CHECK(rz.max_imag == 0.0);

  // manufactured v = phi(x) chi(k): the formula output matches the closed
  // form -[chi lap phi + k^2 chi^2 |grad phi|^2 - 2ik chi d_y phi] averaged
  // over nodes, to stencil accuracy.
  const ManufacturedField mf = ManufacturedField::gaussian(b.k0());
  const SampledField v = mf.sample_v(grid, ks);
  const RecoveredCoefficient rec = recover_a(v);

  double worst = 0.0, scale = 0.0;
  for (int iy = 1; iy < grid.n - 1; ++iy)
    for (int ix = 1; ix < grid.n - 1; ++ix) {
      const double x = grid.coord(ix), y = grid.coord(iy);
      double dpx, dpy, lap;
      mf.phi_derivs(x, y, dpx, dpy, lap);
      cd avg = 0.0;
      for (double k : ks) {
        const double c = mf.chi(k);
        avg -= cd(c * lap + k * k * c * c * (dpx * dpx + dpy * dpy),
                  -2.0 * k * c * dpy);
      }
      avg /= static_cast<double>(ks.size());
      worst = std::max(worst,
                       std::abs(rec.a[grid.index(ix, iy)] - avg.real()));
      scale = std::max(scale, std::abs(avg.real()));
    }
  CHECK(worst <= 2e-2 * scale); // stencil truncation only
  CHECK(rec.per_node_spread >= 0.0);
}

TEST_CASE("chain rule: residual of the p-equation matches the v-equation") {
  // With p = exp(k^2 v), the field equation for p,
  //   lap p + k^2 a p - 2ik d_y p = 0,
  // gives a = -[lap p - 2ik d_y p] / (k^2 p), while the v-equation gives
  //   a = -[lap v + k^2 grad v . grad v - 2ik d_y v].
  // Both recoveries must agree to stencil accuracy on a manufactured field.
  const SpaceGrid grid(1.0, 129);
  const Band b(1.0, 2.0);
  const double k = 1.5;
  const ManufacturedField mf = ManufacturedField::gaussian(b.k0(), 4.0, 0.5);

  ComplexGrid vg(grid.point_count()), pg(grid.point_count());
  for (int iy = 0; iy < grid.n; ++iy)
    for (int ix = 0; ix < grid.n; ++ix) {
      const cd v = 0.1 * mf.phi(grid.coord(ix), grid.coord(iy)) *
                   cd(mf.chi(k), 0.3 * mf.chi(k));
      vg[grid.index(ix, iy)] = v;
      pg[grid.index(ix, iy)] = std::exp(k * k * v);
    }

  const ComplexGrid lv = laplacian(vg, grid), gxv = grad_x(vg, grid),
                    gyv = grad_y(vg, grid);
  const ComplexGrid lp = laplacian(pg, grid), gyp = grad_y(pg, grid);

  double worst = 0.0;
  for (int iy = 1; iy < grid.n - 1; ++iy)
    for (int ix = 1; ix < grid.n - 1; ++ix) {
      const int i = grid.index(ix, iy);
      const cd a_v = -(lv[i] + k * k * (gxv[i] * gxv[i] + gyv[i] * gyv[i]) -
                       cd(0.0, 2.0 * k) * gyv[i]);
      const cd a_p = -(lp[i] - cd(0.0, 2.0 * k) * gyp[i]) / (k * k * pg[i]);
      worst = std::max(worst, std::abs(a_v - a_p));
    }
  CHECK(worst <= 5e-3); // both sides O(h^2); gap is stencil noise only
}
