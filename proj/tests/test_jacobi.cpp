#include <doctest.h>

#include <cmath>
#include <vector>

#include "nullstate/errors.hpp"
#include "nullstate/jacobi.hpp"
#include "oracles.hpp"

using namespace nullstate;

namespace {

double beta_fn(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

double norm_formula(int n, double a, double b) {
  const double lg = std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) - std::lgamma(n + a + b + 1.0) -
                    std::lgamma(n + 1.0);
  return std::pow(2.0, a + b + 1.0) / (2.0 * n + a + b + 1.0) * std::exp(lg);
}

const std::vector<std::pair<double, double>> kParams = {{0.5, 0.5}, {1.0 / 3.0, 1.0 / 3.0}, {2.0, 0.25},
                                                        {0.0127, 14.0}, {3.0, 1.5}};

}  // namespace

TEST_CASE("low-degree closed forms") {
  const JacobiBasis b(0.7, 1.3);
  for (const double y : {-1.0, -0.3, 0.0, 0.6, 1.0}) {
    CHECK(b.value(0, y) == 1.0);
    CHECK(b.value(1, y) == doctest::Approx(1.7 + 4.0 * (y - 1.0) / 2.0).epsilon(1e-14));
  }
  const JacobiBasis legendre(0.0, 0.0);
  CHECK(legendre.value(2, 0.5) == doctest::Approx(-0.125).epsilon(1e-14));
  CHECK(legendre.value(3, 0.5) == doctest::Approx(-0.4375).epsilon(1e-14));
}

TEST_CASE("recurrence matches the binomial sum") {
  for (const auto& [a, b] : kParams) {
    const JacobiBasis basis(a, b);
    for (int n = 0; n <= 8; ++n) {
      for (int k = 0; k <= 20; ++k) {
        const double y = -1.0 + 0.1 * k;
        const double ref = oracle::jacobi(n, a, b, y);
        CHECK(std::abs(basis.value(n, y) - ref) <= 1e-10 * std::max(1.0, basis.endpoint_max(n)));
        CHECK(std::abs(jacobi_poly_explicit_sum(n, basis, y) - ref) <= 1e-10 * std::max(1.0, basis.endpoint_max(n)));
      }
    }
  }
}

TEST_CASE("values sweep agrees with single evaluations") {
  const JacobiBasis basis(2.0, 0.25);
  const auto all = basis.values(15, 0.37);
  REQUIRE(all.size() == 16);
  for (int n = 0; n <= 15; ++n) CHECK(all[static_cast<std::size_t>(n)] == doctest::Approx(basis.value(n, 0.37)).epsilon(1e-14));
}

TEST_CASE("endpoint value and symmetry") {
  const JacobiBasis basis(1.5, 0.5);
  for (int n = 0; n <= 12; ++n) {
    CHECK(basis.value(n, 1.0) == doctest::Approx(oracle::binom(n + 1.5, n)).epsilon(1e-12));
    CHECK(basis.value_at_one(n) == doctest::Approx(oracle::binom(n + 1.5, n)).epsilon(1e-12));
    const double s = (n % 2 == 0) ? 1.0 : -1.0;
    CHECK(basis.value(n, -0.4) == doctest::Approx(s * basis.swapped().value(n, 0.4)).epsilon(1e-12));
  }
}

TEST_CASE("derivative against a difference quotient") {
  const JacobiBasis basis(0.4, 2.2);
  for (int n = 1; n <= 10; ++n) {
    const double y = 0.23;
    const double h = 1e-5;
    const double fd = (basis.value(n, y + h) - basis.value(n, y - h)) / (2.0 * h);
    CHECK(basis.derivative(n, y) == doctest::Approx(fd).epsilon(1e-7));
    const double fd2 = (basis.derivative(n, y + h) - basis.derivative(n, y - h)) / (2.0 * h);
    CHECK(basis.derivative(n, y, 2) == doctest::Approx(fd2).epsilon(1e-6));
  }
  CHECK(basis.derivative(0, 0.3) == 0.0);
}

TEST_CASE("Jacobi operator eigen-relation") {
  std::vector<double> grid;
  for (int k = 0; k <= 40; ++k) grid.push_back(-1.0 + k / 20.0);
  for (const auto& [a, b] : kParams) {
    const JacobiBasis basis(a, b);
    for (int n = 0; n <= 20; ++n) {
      CHECK(jacobi_operator_residual(n, basis, grid) <= 1e-9 * std::max(1.0, basis.endpoint_max(n)));
    }
  }
}

TEST_CASE("norms match the Gamma formula") {
  for (const auto& [a, b] : kParams) {
    const JacobiBasis basis(a, b);
    for (int n = 0; n <= 20; ++n) {
      CHECK(basis.norm_sq(n) == doctest::Approx(norm_formula(n, a, b)).epsilon(1e-12));
      CHECK(basis.shifted_norm_sq(n) == doctest::Approx(std::pow(2.0, -a - b - 1.0) * norm_formula(n, a, b)).epsilon(1e-12));
    }
    CHECK(basis.norm_sq(0) == doctest::Approx(std::pow(2.0, a + b + 1.0) * beta_fn(a + 1.0, b + 1.0)).epsilon(1e-12));
  }
  CHECK(beta_function(2.0, 3.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("Gauss-Jacobi rule integrates moments exactly") {
  for (const auto& [a, b] : kParams) {
    const JacobiBasis basis(a, b);
    const int m = 12;
    const QuadratureRule unit = gauss_jacobi_unit_rule(m, basis);
    REQUIRE(unit.nodes.size() == static_cast<std::size_t>(m));
    for (int k = 0; k <= 2 * m - 1; ++k) {
      const double got = unit.integrate([k](double s) { return std::pow(s, k); });
      CHECK(got == doctest::Approx(beta_fn(b + k + 1.0, a + 1.0)).epsilon(1e-11));
    }
    for (const double x : unit.nodes) {
      CHECK(x > 0.0);
      CHECK(x < 1.0);
    }
    const QuadratureRule sym = gauss_jacobi_rule(m, basis);
    CHECK(sym.integrate([](double) { return 1.0; }) == doctest::Approx(norm_formula(0, a, b)).epsilon(1e-12));
  }
}

TEST_CASE("orthogonality through quadrature") {
  const JacobiBasis basis(1.0 / 3.0, 1.0 / 3.0);
  const QuadratureRule rule = gauss_jacobi_rule(40, basis);
  for (int n = 0; n <= 20; ++n) {
    for (int m = 0; m < n; ++m) {
      const double ip = rule.integrate([&](double y) { return basis.value(n, y) * basis.value(m, y); });
      CHECK(std::abs(ip) <= 1e-10 * std::sqrt(basis.norm_sq(n) * basis.norm_sq(m)));
    }
  }
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS(JacobiBasis(-1.0, 0.0));
  CHECK_THROWS(JacobiBasis(0.0, -2.0));
  CHECK_THROWS(JacobiBasis(0.0, 0.0).value(-1, 0.0));
  CHECK_THROWS(gauss_jacobi_rule(0, JacobiBasis(0.0, 0.0)));
}
