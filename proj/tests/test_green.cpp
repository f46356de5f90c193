#include <doctest.h>

#include <cmath>
#include <vector>

#include "nullstate/errors.hpp"
#include "nullstate/green.hpp"
#include "oracles.hpp"

using namespace nullstate;

namespace {

double j_formula(double delta, double eta, double kappa, double gap) {
  if (delta >= eta) return 0.0;
  return -4.0 / kappa / gap * eta * std::expm1(gap * std::log(delta / eta));
}

}  // namespace

TEST_CASE("one-interval Green function closed form") {
  for (const double kv : {0.5, 2.0, 6.0, 7.9}) {
    const Kappa k(kv);
    const double t1 = oracle::theta(1, kv);
    const OneIntervalGreen j(t1, k);
    const double gap = (8.0 - kv) / kv;
    CHECK(j.gap() == doctest::Approx(gap).epsilon(1e-13));
    for (const double d : {1e-6, 0.01, 0.3, 0.9, 0.999}) {
      CHECK(j(d, 1.0) == doctest::Approx(j_formula(d, 1.0, kv, j.gap())).epsilon(1e-12));
      CHECK(j(2.0 * d, 2.0) == doctest::Approx(2.0 * j(d, 1.0)).epsilon(1e-12));
    }
    CHECK(j(1.0, 1.0) == 0.0);
    CHECK(j(1.5, 1.0) == 0.0);
    const double h = 1e-6;
    CHECK(j.d_delta(0.4, 1.0) == doctest::Approx((j(0.4 + h, 1.0) - j(0.4 - h, 1.0)) / (2.0 * h)).epsilon(1e-7));
    CHECK(j.d2_delta(0.4, 1.0) ==
          doctest::Approx((j.d_delta(0.4 + h, 1.0) - j.d_delta(0.4 - h, 1.0)) / (2.0 * h)).epsilon(1e-6));
    CHECK(j.d_delta(1.0 - 1e-12, 1.0) == doctest::Approx(-4.0 / kv).epsilon(1e-9));
  }
}

TEST_CASE("J is annihilated by the Euler operator") {
  const OneIntervalGreen j(0.0, Kappa(6.0));
  std::vector<double> grid;
  for (int k = 0; k < 30; ++k) grid.push_back(std::pow(10.0, -6.0 + 6.0 * k / 30.0) * 0.999);
  CHECK(j_annihilation_residual(j, 1.0, grid) <= 1e-9);
}

TEST_CASE("one-interval representation of a power") {
  const double kv = 10.0 / 3.0;
  const OneIntervalGreen j(oracle::theta(1, kv), Kappa(kv));
  const double a1 = j.first_order_coefficient();
  const auto u = [](double x) { return x * x * x; };
  const auto du = [](double x) { return 3.0 * x * x; };
  const auto src = [&](double x) { return (0.25 * kv * 6.0 + 3.0 * a1) * x; };
  for (const double d : {0.05, 0.5}) CHECK(one_interval_representation_residual(j, u, du, src, d, 1.0) <= 1e-8);
  const auto bad_src = [&](double x) { return 1.1 * src(x); };
  CHECK(one_interval_representation_residual(j, u, du, bad_src, 0.05, 1.0) > 1e-3);
}

TEST_CASE("two-interval Green function") {
  const Kappa k(6.0);
  const double h = oracle::theta(2, 6.0);
  const TwoIntervalGreen g(h, k);
  CHECK(g.alpha() == doctest::Approx(oracle::kpz_roots(h, 6.0).second - oracle::kpz_roots(h, 6.0).first));
  CHECK(g.beta() == doctest::Approx(1.0 / 3.0));
  CHECK(g.lambda0() == doctest::Approx(2.0 * g.delta_plus_h() + g.delta_plus_theta1()));

  SUBCASE("causal") {
    CHECK(g(0.3, 1.0, 0.5, 1.0) == 0.0);
    CHECK(g(0.3, 1.0, 0.5, 0.5) == 0.0);
    CHECK(g(0.3, 1.0, 0.5, 1.5) != 0.0);
  }
  SUBCASE("factored and series forms agree") {
    for (const double q : {1.1, 2.0, 8.0}) {
      const double a = g(0.4, 1.0, 0.7, q);
      CHECK(std::abs(a - g.series(0.4, 1.0, 0.7, q)) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
  }
  SUBCASE("scale invariance in (epsilon, eta)") {
    const double a = g(0.4, 1.0, 0.7, 3.0);
    CHECK(g(0.4, 2.0, 0.7, 6.0) == doctest::Approx(2.0 * a).epsilon(1e-10));
  }
  SUBCASE("adjoint residual in the homogeneous region") {
    for (const double s : {0.2, 0.5, 0.8}) {
      const auto r = adjoint_residual(g, 0.5, 1.0, s, 2.0);
      CHECK(r.reliable);
      CHECK(r.relative <= 1e-4);
    }
  }
  SUBCASE("endpoint decay exponents") {
    const auto e = sigma_endpoint_exponents(g, 0.4, 1.0, 2.0);
    CHECK(e.left == doctest::Approx(g.delta_plus_theta1() + 4.0 / 6.0).epsilon(1e-2));
    CHECK(e.right == doctest::Approx(g.delta_plus_h() + 4.0 / 6.0).epsilon(1e-2));
  }
}

TEST_CASE("reproducing check rejects inadmissible test functions") {
  const TwoIntervalGreen g(oracle::theta(2, 6.0), Kappa(6.0));
  const std::vector<double> etas = {1.5};
  CHECK_THROWS_AS(reproducing_limit_check(g, 0.5, 1.0, [](double) { return 1.0; }, etas), PreconditionError);
}
