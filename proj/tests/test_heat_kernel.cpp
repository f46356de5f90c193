#include <doctest.h>

#include <cmath>
#include <sstream>

#include "nullstate/errors.hpp"
#include "nullstate/heat_kernel.hpp"
#include "oracles.hpp"

using namespace nullstate;

namespace {

double beta_fn(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

double series_oracle(double rho, double sigma, double t, double a, double b, int terms) {
  double s = 0.0;
  for (int n = 0; n < terms; ++n) {
    const double lg = std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) - std::lgamma(n + a + b + 1.0) -
                      std::lgamma(n + 1.0);
    const double hn = std::exp(lg) / (2.0 * n + a + b + 1.0);
    s += std::exp(-t * n * (n + a + b + 1.0)) * oracle::jacobi(n, a, b, 2.0 * rho - 1.0) *
         oracle::jacobi(n, a, b, 2.0 * sigma - 1.0) / hn;
  }
  return s;
}

}  // namespace

TEST_CASE("kernel equals the directly summed series at moderate t") {
  const KernelParams p{0.75, 1.0 / 3.0};
  const HeatKernel k(p);
  for (const double t : {0.05, 0.3, 1.0}) {
    for (const double rho : {0.1, 0.5, 0.8}) {
      for (const double sigma : {0.2, 0.5, 0.95}) {
        const double ref = series_oracle(rho, sigma, t, p.alpha, p.beta, 60);
        CHECK(k.evaluate(rho, sigma, t).value == doctest::Approx(ref).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("large-time limit is the normalized weight") {
  const KernelParams p{2.0, 0.5};
  const HeatKernel k(p);
  CHECK(k.stationary_value() == doctest::Approx(1.0 / beta_fn(1.5, 3.0)).epsilon(1e-13));
  CHECK(k.evaluate(0.3, 0.6, 40.0).value == doctest::Approx(k.stationary_value()).epsilon(1e-12));
}

TEST_CASE("mass, symmetry and semigroup") {
  const KernelParams p{1.0 / 3.0, 1.0 / 3.0};
  const HeatKernel k(p);
  const QuadratureRule rule = gauss_jacobi_unit_rule(400, k.basis());
  for (const double t : {1e-2, 0.1, 1.0, 10.0}) {
    for (const double rho : {0.05, 0.5, 0.9}) {
      CHECK(reproducing_integral(rho, t, [](double) { return 1.0; }, k, rule) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  for (const double t : {1e-2, 0.5}) {
    const double a = k.evaluate(0.4, 0.55, t).value;
    const double b = k.evaluate(0.55, 0.4, t).value;
    CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
  }
  const double t1 = 0.05;
  const double t2 = 0.08;
  const double lhs = rule.integrate([&](double s) { return k.evaluate(0.3, s, t1).value * k.evaluate(s, 0.6, t2).value; });
  CHECK(lhs == doctest::Approx(k.evaluate(0.3, 0.6, t1 + t2).value).epsilon(1e-9));
}

TEST_CASE("modes decay at their eigenvalue rate") {
  const KernelParams p{0.5, 1.5};
  const HeatKernel k(p);
  const QuadratureRule rule = gauss_jacobi_unit_rule(200, k.basis());
  const double t = 0.1;
  for (int n = 0; n <= 5; ++n) {
    const auto pn = [&](double s) { return oracle::jacobi(n, p.alpha, p.beta, 2.0 * s - 1.0); };
    const double got = reproducing_integral(0.4, t, pn, k, rule);
    const double want = std::exp(-t * n * (n + p.alpha + p.beta + 1.0)) * pn(0.4);
    CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("reproducing limit improves as t shrinks") {
  const KernelParams p{1.0 / 3.0, 1.0 / 3.0};
  const HeatKernel k(p);
  const QuadratureRule rule = gauss_jacobi_unit_rule(800, k.basis());
  const auto f = [](double s) { return s * (1.0 - s); };
  double prev = INFINITY;
  for (const double t : {1e-1, 1e-2, 1e-3}) {
    const double err = std::abs(reproducing_integral(0.5, t, f, k, rule) - 0.25);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 2e-2);
}

TEST_CASE("truncation reports its tail and fails past the cap") {
  const HeatKernel k({1.0, 1.0});
  const auto [terms, tail] = k.truncation(0.01);
  CHECK(terms > 1);
  CHECK(tail <= 1e-10);
  const HeatKernel capped({1.0, 1.0}, TruncationPolicy{5, 1e-12});
  CHECK_THROWS_AS(capped.evaluate(0.5, 0.5, 1e-4), TruncationError);
  CHECK_THROWS_AS(k.evaluate(0.5, 0.5, 0.0), DomainError);
}

TEST_CASE("kernel time and bound scan") {
  CHECK(kernel_time(std::exp(2.0), Kappa(6.0)) == doctest::Approx(3.0));
  const HeatKernel k({0.5, 0.5});
  BoundScanOptions opt;
  opt.n_theta = 7;
  opt.n_phi = 7;
  opt.n_t = 4;
  const auto r = bound_ratio_scan(k, opt);
  CHECK(r.two_sided());
  CHECK(r.lower_min > 0.0);
  CHECK(std::isfinite(r.upper_max));
  std::ostringstream csv;
  write_bound_scan_csv(csv, r);
  CHECK(csv.str().rfind("theta,phi,t,K,envelope,ratio,lower_envelope,lower_ratio,resolved", 0) == 0);
}
