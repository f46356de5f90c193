#include <doctest.h>

#include <cmath>
#include <vector>

#include "nullstate/errors.hpp"
#include "nullstate/exponents.hpp"
#include "oracles.hpp"

using namespace nullstate;

namespace {
const std::vector<double> kKappas = {0.5, 2.0, 10.0 / 3.0, 4.0, 16.0 / 3.0, 6.0, 20.0 / 3.0, 7.9};
}

TEST_CASE("leg weights at sample points") {
  CHECK(leg_weight(1, Kappa(4.0)) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(leg_weight(2, Kappa(8.0 / 3.0)) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(leg_weight(1, Kappa(6.0)) == 0.0);
  CHECK(leg_weight(2, Kappa(6.0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK_FALSE(std::signbit(leg_weight(0, Kappa(6.0))));
  CHECK_THROWS_AS(leg_weight(-1, Kappa(6.0)), DomainError);
}

TEST_CASE("kappa outside (0, 8) is rejected") {
  CHECK_THROWS_AS(Kappa(0.0), DomainError);
  CHECK_THROWS_AS(Kappa(8.0), DomainError);
  CHECK_THROWS_AS(Kappa(-1.0), DomainError);
  CHECK_THROWS_AS(Kappa(std::nan("")), DomainError);
  CHECK_NOTHROW(Kappa(7.999));
}

TEST_CASE("kpz at kappa = 6 for the one-leg weight") {
  const KpzPair e = kpz(0.0, Kappa(6.0));
  CHECK(e.delta_plus == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(std::abs(e.delta_minus) < 1e-15);
  CHECK(e.gap == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("kpz agrees with the quadratic roots") {
  for (const double kv : kKappas) {
    const Kappa k(kv);
    for (int s = 1; s <= 10; ++s) {
      const double d = oracle::theta(s, kv);
      const auto [lo, hi] = oracle::kpz_roots(d, kv);
      const KpzPair e = kpz(d, k);
      CHECK(std::abs(e.delta_minus - lo) <= 1e-12 * std::max(1.0, std::abs(lo)));
      CHECK(std::abs(e.delta_plus - hi) <= 1e-12 * std::max(1.0, std::abs(hi)));
      CHECK(std::abs(e.delta_plus - 2.0 * s / kv) <= 1e-12 * std::max(1.0, 2.0 * s / kv));
    }
  }
}

TEST_CASE("leg identity residuals vanish") {
  for (const double kv : kKappas) {
    for (int s = 1; s <= 10; ++s) {
      const auto r = kpz_leg_identity_residual(s, Kappa(kv));
      CHECK(std::abs(r.plus) <= 1e-12 * (1.0 + 2.0 * s / kv));
      CHECK(std::abs(r.minus) <= 1e-12 * (1.0 + 2.0 * s / kv));
      CHECK(std::abs(r.closed_plus) <= 1e-12 * (1.0 + 2.0 * s / kv));
      CHECK(std::abs(r.closed_minus) <= 1e-12 * (1.0 + 2.0 * s / kv));
    }
  }
}

TEST_CASE("gap of the one-leg weight and -2 theta_1 = Delta^-") {
  for (const double kv : kKappas) {
    const Kappa k(kv);
    const double t1 = oracle::theta(1, kv);
    const KpzPair e = kpz(t1, k);
    CHECK(e.gap == doctest::Approx((8.0 - kv) / kv).epsilon(1e-13));
    CHECK(std::abs(e.delta_minus + 2.0 * t1) <= 1e-12);
    CHECK(std::abs(e.delta_minus - (1.0 - 6.0 / kv)) <= 1e-12);
  }
}

TEST_CASE("negative discriminant is a domain error") {
  const Kappa k(6.0);
  const double edge = min_admissible_weight(k);
  CHECK(edge == doctest::Approx(-4.0 / 96.0));
  CHECK_NOTHROW(kpz(edge, k));
  CHECK(kpz(edge, k).gap == doctest::Approx(0.0).epsilon(1e-7));
  CHECK_THROWS_AS(kpz(edge - 1e-3, k), DomainError);
}

TEST_CASE("jacobi parameters require positive gaps") {
  const Kappa k(6.0);
  const auto p = jacobi_params(oracle::theta(2, 6.0), k);
  CHECK(p.alpha == doctest::Approx(kpz(oracle::theta(2, 6.0), k).gap));
  CHECK(p.beta == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS(jacobi_params(min_admissible_weight(k), k));
}

TEST_CASE("eigenvalues: lambda_0 and the spectral gap formula") {
  for (const double kv : kKappas) {
    const Kappa k(kv);
    const double t1 = oracle::theta(1, kv);
    for (int s = 1; s <= 5; ++s) {
      const double h = oracle::theta(s, kv);
      const double dph = oracle::kpz_roots(h, kv).second;
      const double dp1 = oracle::kpz_roots(t1, kv).second;
      const double l0 = eigenvalue(0, h, k).lambda;
      CHECK(std::abs(l0 - (2.0 * dph + dp1)) <= 1e-12 * std::max(1.0, std::abs(l0)));
      const double a = dph - oracle::kpz_roots(h, kv).first;
      const double b = dp1 - oracle::kpz_roots(t1, kv).first;
      for (int n = 1; n <= 10; ++n) {
        const double want = 0.25 * kv * n * (n + a + b + 1.0);
        CHECK(eigenvalue(n, h, k).lambda - l0 == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(eigenvalue(-1, 0.0, Kappa(6.0)), DomainError);
}
