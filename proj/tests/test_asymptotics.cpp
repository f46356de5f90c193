#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "nullstate/asymptotics.hpp"
#include "nullstate/errors.hpp"
#include "oracles.hpp"

using namespace nullstate;

namespace {
const std::vector<double> kKappas = {0.5, 2.0, 10.0 / 3.0, 4.0, 16.0 / 3.0, 6.0, 20.0 / 3.0, 7.9};
const CollapseSpec kSpec{1, WeightAssignment::uniform()};
}  // namespace

TEST_CASE("line fit recovers an exact line") {
  const std::vector<double> x = {0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y = {1.0, 3.5, 6.0, 8.5};
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.slope_stderr < 1e-12);
}

TEST_CASE("delta grid spans the requested decades") {
  const DeltaGrid g;
  const auto d = g.deltas(2.0);
  REQUIRE(d.size() == static_cast<std::size_t>(g.decades * g.per_decade + 1));
  CHECK(d.front() == doctest::Approx(0.2));
  CHECK(d.back() == doctest::Approx(0.2e-8));
}

TEST_CASE("collapsed coordinates") {
  const PointConfig c({0.0, 1.0, 2.0});
  double realized = 0.0;
  const auto y = collapsed(c, 1, 0.25, &realized);
  CHECK(y[1] == 0.25);
  CHECK(realized == doctest::Approx(0.25));
}

TEST_CASE("collapse exponent of the N1 builtin is -2 theta_1") {
  for (const double kv : kKappas) {
    const Kappa k(kv);
    const auto e = collapse_exponent(builtin_n1(k), default_config(2), kSpec);
    CHECK(std::abs(e.p_hat + 2.0 * oracle::theta(1, kv)) <= 1e-3);
  }
}

TEST_CASE("two-leg classification with margin 0.05") {
  for (const double kv : {2.0, 6.0}) {
    const Kappa k(kv);
    const double dm = oracle::kpz_roots(oracle::theta(1, kv), kv).first;
    const auto verdict = [&](double p) {
      return two_leg_test(builtin_power_product({{0, 1, p}}, 2), default_config(2), kSpec, k).verdict;
    };
    CHECK(verdict(dm + 0.05) == TwoLegVerdict::kTwoLeg);
    CHECK(verdict(dm - 0.05) == TwoLegVerdict::kNotTwoLeg);
    CHECK(verdict(dm) == TwoLegVerdict::kNotTwoLeg);
  }
  CHECK(to_string(TwoLegVerdict::kIndeterminate) == "indeterminate");
}

TEST_CASE("rescaled limit of the N1 builtin") {
  const Kappa k(6.0);
  const auto r = ell_limit(builtin_n1(k), default_config(2), kSpec, k);
  CHECK(r.converged);
  for (const double v : r.limits) CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("decomposition fit recovers both coefficients") {
  const Kappa k(10.0 / 3.0);
  const ManufacturedContext ctx{k, oracle::theta(2, 10.0 / 3.0)};
  const auto d = one_interval_decomposition_fit(manufactured("decomposition", ctx), default_config(2), kSpec, k);
  CHECK(d.a == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(d.b == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("pair scans on manufactured fields") {
  const double kv = 6.0;
  const Kappa k(kv);
  const double h = oracle::theta(2, kv);
  const ManufacturedContext ctx{k, h};
  SUBCASE("adjacent normalized ratio is constant") {
    const auto f = manufactured("normalized", ctx);
    const auto r = adjacent_pair_bound_scan(f, default_config(3), 2, k, h);
    CHECK(r.ratio_spread <= 1e-10);
    CHECK_FALSE(r.divergent);
    std::ostringstream os;
    write_pair_scan_csv(os, r.rows);
    CHECK(os.str().rfind("delta,epsilon,value,ratio", 0) == 0);
  }
  SUBCASE("far-pair: bounded vs violating") {
    const auto good = far_pair_bound_scan(manufactured("bounded", ctx), default_config(4), 1, 3, k, h);
    CHECK_FALSE(good.divergent);
    const auto bad = far_pair_bound_scan(manufactured("violating", ctx), default_config(4), 1, 3, k, h);
    CHECK(bad.divergent);
  }
  SUBCASE("weakened field diverges") {
    const auto r = adjacent_pair_bound_scan(manufactured("weakened", ctx), default_config(3), 2, k, h);
    CHECK(r.divergent);
  }
}

TEST_CASE("parse_candidate") {
  const ManufacturedContext ctx{Kappa(6.0), 1.0 / 3.0};
  const auto f = parse_candidate("power:1,2=0.5;2,3=-1", ctx);
  CHECK(f.arity == 3);
  const std::vector<double> x = {0.0, 4.0, 6.0};
  CHECK(f(x) == doctest::Approx(2.0 * 0.5).epsilon(1e-14));
  CHECK(parse_candidate("n1", ctx).name == "n1");
  CHECK_THROWS(parse_candidate("power:2,1=1", ctx));
  CHECK_THROWS(parse_candidate("manufactured:nope", ctx));
  CHECK_THROWS(parse_candidate("bogus", ctx));
}
