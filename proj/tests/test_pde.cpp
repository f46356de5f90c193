#include <doctest.h>

#include <cmath>
#include <vector>

#include "nullstate/errors.hpp"
#include "nullstate/pde.hpp"
#include "oracles.hpp"

using namespace nullstate;

TEST_CASE("point configurations") {
  CHECK_THROWS_AS(PointConfig({1.0}), PreconditionError);
  CHECK_THROWS(PointConfig({0.0, 0.0}));
  CHECK_THROWS(PointConfig({1.0, 0.0}));
  const PointConfig c({0.0, 1.0, 1.5});
  CHECK(c.min_gap() == 0.5);
  CHECK(default_config(3).min_gap() > 0.0);
}

TEST_CASE("weight assignment") {
  const Kappa k(6.0);
  const auto u = WeightAssignment::uniform().weights(3, k);
  for (const double w : u) CHECK(w == oracle::theta(1, 6.0));
  const auto a = WeightAssignment::anomalous(1, 0.7).weights(3, k);
  CHECK(a[1] == 0.7);
  CHECK(a[0] == oracle::theta(1, 6.0));
}

TEST_CASE("finite differences of a power product") {
  const CandidateFunction f = builtin_power_product({{0, 1, 1.7}, {1, 2, -0.4}}, 3);
  const std::vector<double> x = {0.1, 1.2, 2.0};
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(fd_first(f, x, k, 1e-3) == doctest::Approx(f.d1(x, k)).epsilon(1e-9));
    CHECK(fd_second(f, x, k, 1e-3) == doctest::Approx(f.d2(x, k)).epsilon(1e-7));
  }
}

TEST_CASE("constant field: null-state residual is the weight sum") {
  const double kv = 10.0 / 3.0;
  const Kappa k(kv);
  const CandidateFunction one = builtin_power_product({}, 3, "one");
  const PointConfig c({0.0, 1.0, 3.0});
  const double t1 = oracle::theta(1, kv);
  const auto r = null_state_residual(one, c, WeightAssignment::uniform(), k, 0);
  CHECK(r.residual == doctest::Approx(-t1 / 1.0 - t1 / 9.0).epsilon(1e-10));
  const auto w = ward_residuals(one, c, WeightAssignment::uniform(), k);
  CHECK(std::abs(w[0].residual) <= 1e-12);
  CHECK(w[1].residual == doctest::Approx(3.0 * t1).epsilon(1e-10));
  CHECK(w[2].residual == doctest::Approx(2.0 * t1 * 4.0).epsilon(1e-10));
}

TEST_CASE("translation residual of x1 + x2") {
  const CandidateFunction f{"sum", 2, [](std::span<const double> x) { return x[0] + x[1]; }, std::nullopt, {}, {}};
  const std::vector<double> w = {0.0, 0.0};
  const auto r = ward_residuals(f, PointConfig({0.0, 1.0}), w);
  CHECK(r[0].residual == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("two-point power solves the Ward identities with equal weights") {
  const double h = 0.8;
  const CandidateFunction f = builtin_power_product({{0, 1, -2.0 * h}}, 2);
  const PointConfig c({-0.4, 1.3});
  const std::vector<double> eq = {h, h};
  for (const auto& r : ward_residuals(f, c, eq)) CHECK(r.relative <= 1e-8);
  const std::vector<double> uneq = {h, h + 0.5};
  const auto bad = ward_residuals(f, c, uneq);
  CHECK(bad[2].relative > 1e-3);
}

TEST_CASE("N1 builtin satisfies the full system") {
  for (const double kv : {0.5, 2.0, 16.0 / 3.0, 6.0, 7.9}) {
    const Kappa k(kv);
    const auto r = residual_sweep(builtin_n1(k), 2, WeightAssignment::uniform(), k, 20, 7);
    CHECK(r.max_relative.size() == 5);
    CHECK(r.worst <= 1e-6);
  }
}

TEST_CASE("a wrong exponent is caught by the sweep") {
  const Kappa k(6.0);
  const auto f = builtin_power_product({{0, 1, 0.3}}, 2);
  CHECK(residual_sweep(f, 2, WeightAssignment::uniform(), k, 10, 1).worst > 1e-2);
}

TEST_CASE("two-point solvability") {
  CHECK(two_point_ward_solvable(0.3, 0.3).solvable);
  for (const double kv : {2.0, 6.0}) {
    const Kappa k(kv);
    const double t1 = oracle::theta(1, kv);
    for (int n = 2; n <= 5; ++n) {
      const auto r = two_point_ward_solvable(t1, oracle::theta(2 * n - 1, kv));
      CHECK_FALSE(r.solvable);
      CHECK(r.witness == doctest::Approx(t1 - oracle::theta(2 * n - 1, kv)));
    }
  }
}

TEST_CASE("random configurations are reproducible and ordered") {
  const auto a = random_configs(4, 5, 99);
  const auto b = random_configs(4, 5, 99);
  REQUIRE(a.size() == 5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < 4; ++k) CHECK(a[i][k] == b[i][k]);
    CHECK(a[i].min_gap() >= 0.1);
  }
}

TEST_CASE("stencil preconditions") {
  StencilOptions s;
  s.absolute_step = 0.2;
  CHECK_THROWS_AS(s.step(PointConfig({0.0, 1.0})), PreconditionError);
  const Kappa k(6.0);
  CHECK_THROWS_AS(null_state_residual(builtin_n1(k), PointConfig({0.0, 1.0}), WeightAssignment::anomalous(0, 0.5), k, 0),
                  PreconditionError);
}
