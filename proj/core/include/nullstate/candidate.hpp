#pragma once
// Scalar test fields on ordered point configurations x_1 < ... < x_M.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nullstate/exponents.hpp"

namespace nullstate {

/// Strictly increasing coordinates, M >= 2.
class PointConfig {
 public:
  explicit PointConfig(std::vector<double> coords);

  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t k) const { return coords_[k]; }
  std::span<const double> coords() const noexcept { return coords_; }
  double min_gap() const;

 private:
  std::vector<double> coords_;
};

/// Conformal weights of the points: theta_1 everywhere except at the
/// (0-based) index iota, which carries h. Without an anomalous index every
/// point carries theta_1.
struct WeightAssignment {
  std::optional<std::size_t> iota;
  double h = 0.0;

  static WeightAssignment uniform() { return {}; }
  static WeightAssignment anomalous(std::size_t iota, double h) { return {iota, h}; }

  double weight(std::size_t k, Kappa kappa) const;
  std::vector<double> weights(std::size_t m, Kappa kappa) const;
};

/// |F(x)| <= C prod_{i<j} (x_j - x_i)^{-p} style growth constants.
struct GrowthBound {
  double c;
  double p;
};

struct CandidateFunction {
  using Field = std::function<double(std::span<const double>)>;
  using Derivative = std::function<double(std::span<const double>, std::size_t)>;

  std::string name;
  std::size_t arity = 0;  ///< required M, or 0 when any M >= 2 works
  Field field;
  std::optional<GrowthBound> growth;
  Derivative d1;  ///< analytic first partial, may be empty
  Derivative d2;  ///< analytic second partial, may be empty

  double operator()(std::span<const double> x) const { return field(x); }
  bool has_analytic_derivatives() const { return d1 && d2; }
};

/// Exponent mu_{ij} attached to the factor (x_j - x_i), 0-based, i < j.
struct PairExponent {
  std::size_t i;
  std::size_t j;
  double mu;
};

/// F = prod (x_j - x_i)^{mu_ij} with analytic first and second partials.
CandidateFunction builtin_power_product(std::vector<PairExponent> exponents, std::size_t arity,
                                        std::string name = "power");

/// The two-point solution (x_2 - x_1)^{-2 theta_1}.
CandidateFunction builtin_n1(Kappa kappa);

/// Multiplies a candidate by a smooth positive prefactor g(x). Analytic
/// derivatives are dropped.
CandidateFunction with_prefactor(CandidateFunction base, CandidateFunction::Field g, std::string name);

/// Context for manufactured fields, which are built from the exponents at
/// weight h (anomalous) and theta_1.
struct ManufacturedContext {
  Kappa kappa;
  double h;
};

/// Names accepted by manufactured(): normalized, lambda0, weakened, bounded,
/// far-two-leg, violating, two-leg, identity, decomposition, prefactor.
std::vector<std::string> manufactured_shapes();
CandidateFunction manufactured(const std::string& shape, const ManufacturedContext& ctx);

/// Parses "n1", "power:<spec>" or "manufactured:<shape>". The power spec is
/// a ';'-separated list of "i,j=value" entries with 1-based indices i < j;
/// M is the largest index mentioned.
CandidateFunction parse_candidate(const std::string& text, const ManufacturedContext& ctx);

/// Default configuration for a candidate of the given arity.
PointConfig default_config(std::size_t m);

}  // namespace nullstate
