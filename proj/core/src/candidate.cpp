#include "nullstate/candidate.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "nullstate/errors.hpp"

namespace nullstate {

PointConfig::PointConfig(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw PreconditionError("a configuration needs at least two points");
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (!std::isfinite(coords_[k])) throw PreconditionError("configuration coordinates must be finite");
    if (k > 0 && !(coords_[k] > coords_[k - 1])) {
      throw PreconditionError("configuration must be strictly increasing");
    }
  }
}

double PointConfig::min_gap() const {
  double gap = coords_[1] - coords_[0];
  for (std::size_t k = 2; k < coords_.size(); ++k) gap = std::min(gap, coords_[k] - coords_[k - 1]);
  return gap;
}

double WeightAssignment::weight(std::size_t k, Kappa kappa) const {
  if (iota && *iota == k) return h;
  return leg_weight(1, kappa);
}

std::vector<double> WeightAssignment::weights(std::size_t m, Kappa kappa) const {
  if (iota && *iota >= m) throw PreconditionError("anomalous index outside the configuration");
  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k) out[k] = weight(k, kappa);
  return out;
}

namespace {

void require_arity(std::span<const double> x, std::size_t arity, const std::string& name) {
  if (arity != 0 && x.size() != arity) {
    throw PreconditionError(name + " expects " + std::to_string(arity) + " points, got " +
                            std::to_string(x.size()));
  }
}

}  // namespace

CandidateFunction builtin_power_product(std::vector<PairExponent> exponents, std::size_t arity,
                                        std::string name) {
  for (const auto& e : exponents) {
    if (!(e.i < e.j) || (arity != 0 && e.j >= arity)) {
      throw PreconditionError("power exponent indices must satisfy i < j < M");
    }
  }
  auto mus = std::make_shared<const std::vector<PairExponent>>(std::move(exponents));
  CandidateFunction f;
  f.name = name;
  f.arity = arity;
  f.field = [mus, arity, name](std::span<const double> x) {
    require_arity(x, arity, name);
    double log_abs = 0.0;
    for (const auto& e : *mus) log_abs += e.mu * std::log(x[e.j] - x[e.i]);
    return std::exp(log_abs);
  };
  // S_k = d_k log F and its derivative.
  auto log_derivs = [mus](std::span<const double> x, std::size_t k) {
    double s = 0.0;
    double ds = 0.0;
    for (const auto& e : *mus) {
      if (e.j == k) {
        const double d = x[e.j] - x[e.i];
        s += e.mu / d;
        ds -= e.mu / (d * d);
      } else if (e.i == k) {
        const double d = x[e.j] - x[e.i];
        s -= e.mu / d;
        ds -= e.mu / (d * d);
      }
    }
    return std::pair{s, ds};
  };
  auto field = f.field;
  f.d1 = [field, log_derivs](std::span<const double> x, std::size_t k) {
    return field(x) * log_derivs(x, k).first;
  };
  f.d2 = [field, log_derivs](std::span<const double> x, std::size_t k) {
    const auto [s, ds] = log_derivs(x, k);
    return field(x) * (s * s + ds);
  };
  return f;
}

CandidateFunction builtin_n1(Kappa kappa) {
  const double theta1 = leg_weight(1, kappa);
  CandidateFunction f = builtin_power_product({{0, 1, -2.0 * theta1}}, 2, "n1");
  if (theta1 > 0.0) f.growth = GrowthBound{1.0, 2.0 * theta1};
  return f;
}

CandidateFunction with_prefactor(CandidateFunction base, CandidateFunction::Field g, std::string name) {
  CandidateFunction f;
  f.name = std::move(name);
  f.arity = base.arity;
  auto inner = base.field;
  f.field = [inner, g](std::span<const double> x) { return g(x) * inner(x); };
  return f;
}

std::vector<std::string> manufactured_shapes() {
  return {"normalized", "lambda0",   "weakened", "bounded",       "far-two-leg",
          "violating",  "two-leg",   "identity", "decomposition", "prefactor"};
}

CandidateFunction manufactured(const std::string& shape, const ManufacturedContext& ctx) {
  const Kappa kappa = ctx.kappa;
  const KpzPair leg = kpz(leg_weight(1, kappa), kappa);
  const KpzPair anom = kpz(ctx.h, kappa);
  const double a = leg.delta_plus;
  const double b = anom.delta_plus;
  const std::string name = "manufactured:" + shape;

  if (shape == "normalized") return builtin_power_product({{0, 1, a}, {0, 2, b}, {1, 2, b}}, 3, name);
  if (shape == "lambda0") {
    const double lambda0 = eigenvalue(0, ctx.h, kappa).lambda;
    return builtin_power_product({{0, 1, a}, {0, 2, lambda0 - a - b}, {1, 2, b}}, 3, name);
  }
  if (shape == "weakened") {
    return builtin_power_product({{0, 1, a}, {0, 2, b - 0.25}, {1, 2, b}}, 3, name);
  }
  if (shape == "bounded") return builtin_power_product({{0, 1, a}, {2, 3, b}, {1, 3, 0.5}}, 4, name);
  if (shape == "far-two-leg") {
    return builtin_power_product({{0, 1, a}, {2, 3, b}, {0, 2, -0.3}, {1, 3, 0.2}}, 4, name);
  }
  if (shape == "violating") {
    return builtin_power_product({{0, 1, leg.delta_minus}, {2, 3, b}}, 4, name);
  }
  if (shape == "two-leg") return builtin_power_product({{0, 1, a}}, 2, name);
  if (shape == "identity") return builtin_power_product({{0, 1, leg.delta_minus}}, 2, name);
  if (shape == "decomposition") {
    CandidateFunction f;
    f.name = name;
    f.arity = 2;
    const double dm = leg.delta_minus;
    f.field = [a, dm, name](std::span<const double> x) {
      require_arity(x, 2, name);
      const double d = x[1] - x[0];
      return 2.0 * std::pow(d, dm) + 3.0 * std::pow(d, a);
    };
    return f;
  }
  if (shape == "prefactor") {
    return with_prefactor(builtin_power_product({{0, 1, leg.delta_minus}}, 2),
                          [](std::span<const double> x) { return x[0] * x[0] + 1.0; }, name);
  }
  throw PreconditionError("unknown manufactured shape '" + shape + "'");
}

namespace {

std::vector<PairExponent> parse_power_spec(const std::string& spec, std::size_t& arity) {
  std::vector<PairExponent> out;
  std::stringstream entries(spec);
  std::string entry;
  arity = 2;
  while (std::getline(entries, entry, ';')) {
    if (entry.empty()) continue;
    const auto comma = entry.find(',');
    const auto eq = entry.find('=');
    if (comma == std::string::npos || eq == std::string::npos || eq < comma) {
      throw PreconditionError("power entry '" + entry + "' is not of the form i,j=value");
    }
    std::size_t used = 0;
    try {
      const long i = std::stol(entry.substr(0, comma), &used);
      const long j = std::stol(entry.substr(comma + 1, eq - comma - 1));
      const double mu = std::stod(entry.substr(eq + 1));
      if (i < 1 || j <= i) throw PreconditionError("power entry needs 1 <= i < j");
      out.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), mu});
      arity = std::max(arity, static_cast<std::size_t>(j));
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const PreconditionError*>(&e)) throw;
      throw PreconditionError("power entry '" + entry + "' has a malformed number");
    }
  }
  return out;
}

}  // namespace

CandidateFunction parse_candidate(const std::string& text, const ManufacturedContext& ctx) {
  if (text == "n1") return builtin_n1(ctx.kappa);
  if (text.rfind("power:", 0) == 0) {
    std::size_t arity = 0;
    auto mus = parse_power_spec(text.substr(6), arity);
    return builtin_power_product(std::move(mus), arity, text);
  }
  if (text.rfind("manufactured:", 0) == 0) return manufactured(text.substr(13), ctx);
  throw PreconditionError("unknown candidate '" + text + "' (expected n1, power:<spec>, manufactured:<shape>)");
}

PointConfig default_config(std::size_t m) {
  std::vector<double> x(m);
  for (std::size_t k = 0; k < m; ++k) x[k] = static_cast<double>(k) + 0.25 * static_cast<double>(k * k);
  return PointConfig(std::move(x));
}

}  // namespace nullstate
