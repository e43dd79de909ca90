#include <doctest.h>

#include <cmath>
#include <random>

#include <kband/band.hpp>
#include <kband/basis.hpp>

using namespace kband;

namespace {

// Gauss-Legendre integration of f over [-L, L].
template <typename F>
double quad_sym(F f, double L, int n) {
  const QuadratureRule gl = gauss_legendre(n);
  double s = 0.0;
  for (std::size_t i = 0; i < gl.size(); ++i)
    s += L * gl.weights[i] * f(L * gl.nodes[i]);
  return s;
}

} // namespace

TEST_CASE("band midpoint and width") {
  Band b(1.0, 2.0);
  CHECK(b.k0() == doctest::Approx(1.5));
  CHECK(b.half_width() == doctest::Approx(0.5));
  CHECK_THROWS_AS(Band(2.0, 1.0), config_error);
  CHECK_THROWS_AS(Band(0.0, 1.0), config_error);
  CHECK_THROWS_AS(Band(1.0, 1.0), config_error);
}

TEST_CASE("gauss-legendre rule: weights and polynomial exactness") {
  const QuadratureRule gl = gauss_legendre(5);
  double wsum = 0.0;
  for (double w : gl.weights) wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));

  // exact for degree <= 9
  double s8 = 0.0, s9 = 0.0;
  for (std::size_t i = 0; i < gl.size(); ++i) {
    s8 += gl.weights[i] * std::pow(gl.nodes[i], 8);
    s9 += gl.weights[i] * std::pow(gl.nodes[i], 9);
  }
  CHECK(s8 == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
  CHECK(std::abs(s9) < 1e-14);

  const Band b(1.0, 2.0);
  const QuadratureRule r = band_rule(b, 12);
  double bw = 0.0;
  for (double w : r.weights) bw += w;
  CHECK(bw == doctest::Approx(b.width()).epsilon(1e-14));
  for (double k : r.nodes) {
    CHECK(k > b.k_lo);
    CHECK(k < b.k_hi);
  }
}

TEST_CASE("moment integrals: analytic values on band(1,2)") {
  const Band b(1.0, 2.0);
  const auto I = moment_integrals(b, 20);
  // I_0 = sinh(2L) = sinh(1)
  CHECK(I[0] == doctest::Approx(std::sinh(1.0)).epsilon(1e-13));
  // I_1 = L cosh(2L) - I_0 / 2
  const double i1 = 0.5 * std::cosh(1.0) - 0.5 * std::sinh(1.0);
  CHECK(I[1] == doctest::Approx(i1).epsilon(1e-13));
  CHECK(I[1] == doctest::Approx(0.1839397).epsilon(1e-6));
}

TEST_CASE("moment integrals: zero-width limit") {
  const Band b(1.0, 1.0 + 1e-6);
  const auto I = moment_integrals(b, 4);
  CHECK(std::abs(I[0]) < 1.1e-6); // -> 0 with the interval length
  CHECK(std::abs(I[1]) < 1e-12);
}

TEST_CASE("moment integrals agree with order-28 quadrature to 1e-11") {
  const Band b(1.0, 2.0);
  const int N = 10;
  const auto I = moment_integrals(b, 2 * N);
  for (int m = 0; m <= 2 * N; ++m) {
    const double q = quad_sym(
        [m](double t) { return std::pow(t, m) * std::exp(2.0 * t); },
        b.half_width(), 2 * N + 8);
    CHECK(std::abs(I[m] - q) <= 1e-11 * std::max(1.0, std::abs(q)));
  }
}

TEST_CASE("exp-polynomial representation and derivative rule") {
  // f = e^{k-k0} (1 + 2t + 3t^2), t = k - k0
  const ExpPolynomial f(1.5, {1.0, 2.0, 3.0});
  CHECK(f.degree() == 2);
  CHECK(f(1.5) == doctest::Approx(1.0));

  // f' coefficients: c_j + (j+1) c_{j+1}
  const ExpPolynomial df = f.derivative();
  REQUIRE(df.coeffs().size() == 3);
  CHECK(df.coeffs()[0] == doctest::Approx(1.0 + 2.0));
  CHECK(df.coeffs()[1] == doctest::Approx(2.0 + 6.0));
  CHECK(df.coeffs()[2] == doctest::Approx(3.0));

  // against central differences
  for (double k : {1.1, 1.5, 1.9}) {
    const double h = 1e-6;
    const double fd = (f(k + h) - f(k - h)) / (2.0 * h);
    CHECK(df(k) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("build_basis: first element closed form") {
  const Band b(1.0, 2.0);
  const auto basis = build_basis(b, 1);
  // Phi_1 = psi_1 / ||psi_1||, ||psi_1||^2 = sinh(1)
  const double c = 1.0 / std::sqrt(std::sinh(1.0));
  CHECK(basis.eval(1, b.k0()) == doctest::Approx(c).epsilon(1e-12));
  CHECK(basis.eval(1, b.k0()) == doctest::Approx(0.9224522).epsilon(1e-6));
  CHECK(basis.eval(1, 1.2) == doctest::Approx(c * std::exp(1.2 - 1.5)).epsilon(1e-12));
  // psi_1' = psi_1, so Phi_1' = Phi_1
  for (double k : {1.0, 1.3, 1.7, 2.0})
    CHECK(basis.eval_deriv(1, k) == doctest::Approx(basis.eval(1, k)).epsilon(1e-12));
}

TEST_CASE("build_basis: orthonormality within 1e-10 up to N=10") {
  const Band b(1.0, 2.0);
  const auto basis = build_basis(b, 10);
  double worst = 0.0;
  for (int m = 1; m <= 10; ++m)
    for (int n = 1; n <= 10; ++n) {
      const double ip = inner_product(basis.element(m), basis.element(n), b);
      worst = std::max(worst, std::abs(ip - (m == n ? 1.0 : 0.0)));
    }
  CHECK(worst <= 1e-10);
}

TEST_CASE("build_basis: degree structure and sign convention") {
  const Band b(1.0, 2.0);
  const auto basis = build_basis(b, 5);
  for (int n = 1; n <= 5; ++n) {
    CHECK(basis.element(n).degree() == n - 1);
    CHECK(basis.element(n).coeffs().back() > 0.0); // positive leading coeff
  }
}

TEST_CASE("build_basis: argument validation and conditioning guard") {
  const Band b(1.0, 2.0);
  CHECK_THROWS_AS(build_basis(b, 0), config_error);
  CHECK_THROWS_AS(build_basis(b, 16), config_error);
  CHECK_NOTHROW(build_basis(b, 15));
  // A nearly degenerate band drives the psi-Gram pivots below the guard.
  CHECK_THROWS_AS(build_basis(Band(1.0, 1.001), 15), numerical_error);
}

TEST_CASE("eval_basis: bounds, k0 value, derivative vs finite differences") {
  const Band b(1.0, 2.0);
  const auto basis = build_basis(b, 6);
  CHECK_THROWS_AS(basis.element(0), config_error);
  CHECK_THROWS_AS(basis.element(7), config_error);
  CHECK_THROWS_AS(basis.deriv_norm(7), config_error);

  // at k0 all powers vanish: Phi_n(k0) = c_0
  for (int n = 1; n <= 6; ++n)
    CHECK(basis.eval(n, b.k0()) ==
          doctest::Approx(basis.element(n).coeffs()[0]).epsilon(1e-13));

  std::mt19937 rng(42);
  std::uniform_real_distribution<double> U(1.05, 1.95);
  for (int trial = 0; trial < 20; ++trial) {
    const double k = U(rng);
    const int n = 1 + static_cast<int>(rng() % 6);
    const double h = 1e-5;
    const double fd = (basis.eval(n, k + h) - basis.eval(n, k - h)) / (2.0 * h);
    CHECK(basis.eval_deriv(n, k) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("inner_product: analytic and structural values") {
  const Band b(1.0, 2.0);
  const ExpPolynomial psi1(b.k0(), {1.0});
  CHECK(inner_product(psi1, psi1, b) ==
        doctest::Approx(std::sinh(1.0)).epsilon(1e-13));

  const auto basis = build_basis(b, 4);
  CHECK(inner_product(basis.element(2), basis.element(2), b) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(inner_product(basis.element(1), basis.element(2), b)) < 1e-12);

  // moment-based value vs direct quadrature
  const double exact = inner_product(basis.element(3), basis.element(4), b);
  const double q = quad_sym(
      [&](double t) {
        return basis.eval(3, b.k0() + t) * basis.eval(4, b.k0() + t);
      },
      b.half_width(), 28);
  CHECK(std::abs(exact - q) <= 1e-10);
}

TEST_CASE("derivative norms match the exact representation") {
  const Band b(1.0, 2.0);
  const auto basis = build_basis(b, 5);
  for (int n = 1; n <= 5; ++n) {
    const double direct = std::sqrt(inner_product(
        basis.element_deriv(n), basis.element_deriv(n), b));
    CHECK(basis.deriv_norm(n) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("Phi_n' - Phi_n lies in span of the lower elements") {
  const Band b(1.0, 2.0);
  const auto basis = build_basis(b, 8);
  for (int n = 1; n <= 8; ++n) {
    // project Phi_n' - Phi_n onto Phi_n..Phi_8: coefficients must vanish
    for (int m = n; m <= 8; ++m) {
      const double c =
          inner_product(basis.element(m), basis.element_deriv(n), b) -
          inner_product(basis.element(m), basis.element(n), b);
      CHECK(std::abs(c) <= 1e-8);
    }
  }
}
