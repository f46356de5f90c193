#include "nullstate/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "nullstate/errors.hpp"
#include "nullstate/parallel.hpp"

namespace nullstate {

double StencilOptions::step(const PointConfig& config) const {
  const double gap = config.min_gap();
  const double h = absolute_step ? *absolute_step : relative_step * gap;
  if (!(h > 0.0)) throw PreconditionError("stencil step must be positive");
  if (gap < 10.0 * h) {
    throw PreconditionError("stencil would leave the ordered domain: min gap " + std::to_string(gap) +
                            " < 10 * step " + std::to_string(h));
  }
  return h;
}

namespace {

double shifted(const CandidateFunction& f, std::span<const double> x, std::size_t k, double dx) {
  std::vector<double> y(x.begin(), x.end());
  y[k] += dx;
  return f(y);
}

double central1(const CandidateFunction& f, std::span<const double> x, std::size_t k, double h) {
  return (shifted(f, x, k, h) - shifted(f, x, k, -h)) / (2.0 * h);
}

double central2(const CandidateFunction& f, std::span<const double> x, std::size_t k, double h, double f0) {
  return (shifted(f, x, k, h) - 2.0 * f0 + shifted(f, x, k, -h)) / (h * h);
}

ResidualReport make_report(std::span<const double> terms, double step) {
  double sum = 0.0;
  double scale = 0.0;
  for (const double t : terms) {
    sum += t;
    scale = std::max(scale, std::abs(t));
  }
  ResidualReport r{};
  r.residual = sum;
  r.scale = std::max(scale, std::numeric_limits<double>::min());
  r.relative = std::abs(sum) / r.scale;
  r.step = step;
  return r;
}

}  // namespace

double fd_first(const CandidateFunction& f, std::span<const double> x, std::size_t k, double step) {
  return (4.0 * central1(f, x, k, 0.5 * step) - central1(f, x, k, step)) / 3.0;
}

double fd_second(const CandidateFunction& f, std::span<const double> x, std::size_t k, double step) {
  const double f0 = f(x);
  return (4.0 * central2(f, x, k, 0.5 * step, f0) - central2(f, x, k, step, f0)) / 3.0;
}

ResidualReport null_state_residual(const CandidateFunction& f, const PointConfig& config,
                                   const WeightAssignment& weights, Kappa kappa, std::size_t j,
                                   const StencilOptions& stencil) {
  const std::size_t m = config.size();
  if (j >= m) throw PreconditionError("null-state index outside the configuration");
  const std::vector<double> w = weights.weights(m, kappa);
  if (weights.iota && *weights.iota == j && std::abs(weights.h - leg_weight(1, kappa)) > 1e-15) {
    throw PreconditionError("no null-state equation is centred on the anomalous point");
  }
  const double step = stencil.step(config);
  const auto x = config.coords();
  const double f0 = f(x);
  std::vector<double> terms;
  terms.reserve(2 * m);
  terms.push_back(0.25 * kappa.value() * fd_second(f, x, j, step));
  for (std::size_t k = 0; k < m; ++k) {
    if (k == j) continue;
    const double d = x[k] - x[j];
    terms.push_back(fd_first(f, x, k, step) / d);
    terms.push_back(-w[k] * f0 / (d * d));
  }
  return make_report(terms, step);
}

std::array<ResidualReport, 3> ward_residuals(const CandidateFunction& f, const PointConfig& config,
                                             std::span<const double> weights,
                                             const StencilOptions& stencil) {
  const std::size_t m = config.size();
  if (weights.size() != m) throw PreconditionError("one weight per point is required");
  const double step = stencil.step(config);
  const auto x = config.coords();
  const double f0 = f(x);
  std::vector<double> t0, t1, t2;
  for (std::size_t k = 0; k < m; ++k) {
    const double dk = fd_first(f, x, k, step);
    t0.push_back(dk);
    t1.push_back(x[k] * dk);
    t1.push_back(weights[k] * f0);
    t2.push_back(x[k] * x[k] * dk);
    t2.push_back(2.0 * weights[k] * x[k] * f0);
  }
  return {make_report(t0, step), make_report(t1, step), make_report(t2, step)};
}

std::array<ResidualReport, 3> ward_residuals(const CandidateFunction& f, const PointConfig& config,
                                             const WeightAssignment& weights, Kappa kappa,
                                             const StencilOptions& stencil) {
  const std::vector<double> w = weights.weights(config.size(), kappa);
  return ward_residuals(f, config, w, stencil);
}

WardSolvability two_point_ward_solvable(double h1, double h2) {
  const double witness = h1 - h2;
  return {std::abs(witness) <= 1e-12, witness};
}

std::vector<PointConfig> random_configs(std::size_t m, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> start(-3.0, 3.0);
  std::uniform_real_distribution<double> gap(0.1, 2.0);
  std::vector<PointConfig> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<double> x(m);
    x[0] = start(rng);
    for (std::size_t k = 1; k < m; ++k) x[k] = x[k - 1] + gap(rng);
    out.emplace_back(std::move(x));
  }
  return out;
}

SweepResult residual_sweep(const CandidateFunction& f, std::size_t m, const WeightAssignment& weights,
                           Kappa kappa, std::size_t configurations, std::uint64_t seed,
                           const StencilOptions& stencil) {
  const auto configs = random_configs(m, configurations, seed);
  const double theta1 = leg_weight(1, kappa);
  const bool skip_iota = weights.iota && std::abs(weights.h - theta1) > 1e-15;
  std::vector<std::vector<double>> per_config(configs.size(), std::vector<double>(m + 3, 0.0));
  parallel_for(configs.size(), [&](std::size_t c) {
    auto& row = per_config[c];
    for (std::size_t j = 0; j < m; ++j) {
      if (skip_iota && *weights.iota == j) continue;
      row[j] = null_state_residual(f, configs[c], weights, kappa, j, stencil).relative;
    }
    const auto ward = ward_residuals(f, configs[c], weights, kappa, stencil);
    for (std::size_t q = 0; q < 3; ++q) row[m + q] = ward[q].relative;
  });
  SweepResult out{seed, configs.size(), std::vector<double>(m + 3, 0.0), 0.0};
  for (const auto& row : per_config) {
    for (std::size_t e = 0; e < row.size(); ++e) out.max_relative[e] = std::max(out.max_relative[e], row[e]);
  }
  out.worst = *std::max_element(out.max_relative.begin(), out.max_relative.end());
  return out;
}

}  // namespace nullstate
