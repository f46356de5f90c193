#pragma once
// Finite-difference residuals of the null-state equations and the three
// conformal Ward identities on candidate fields.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nullstate/candidate.hpp"
#include "nullstate/green.hpp"

namespace nullstate {

/// Stencil control. The step is relative_step * min_gap unless an absolute
/// step is given; gaps must be at least 10 steps.
struct StencilOptions {
  double relative_step = 1e-3;
  std::optional<double> absolute_step;

  double step(const PointConfig& config) const;
};

/// Richardson-extrapolated central differences of F along coordinate k.
double fd_first(const CandidateFunction& f, std::span<const double> x, std::size_t k, double step);
double fd_second(const CandidateFunction& f, std::span<const double> x, std::size_t k, double step);

/// (kappa/4) d_j^2 F + sum_{k != j} [ d_k F / (x_k - x_j) - w_k F / (x_k - x_j)^2 ],
/// with w_k the weight of point k. j may equal iota only when h = theta_1.
ResidualReport null_state_residual(const CandidateFunction& f, const PointConfig& config,
                                   const WeightAssignment& weights, Kappa kappa, std::size_t j,
                                   const StencilOptions& stencil = {});

/// Translation, dilation and special-conformal Ward residuals for explicit
/// per-point weights.
std::array<ResidualReport, 3> ward_residuals(const CandidateFunction& f, const PointConfig& config,
                                             std::span<const double> weights,
                                             const StencilOptions& stencil = {});

std::array<ResidualReport, 3> ward_residuals(const CandidateFunction& f, const PointConfig& config,
                                             const WeightAssignment& weights, Kappa kappa,
                                             const StencilOptions& stencil = {});

struct WardSolvability {
  bool solvable;
  double witness;  ///< h1 - h2, the factor of the special-conformal residual
};

/// The only translation- and scale-covariant two-point ansatz is
/// (x_2 - x_1)^{-h1-h2}; its special-conformal residual is
/// -(h1 - h2)(x_2 - x_1) F, so the system is solvable iff h1 = h2.
WardSolvability two_point_ward_solvable(double h1, double h2);

/// Largest relative residual per equation over random configurations.
/// Entries 0..M-1 are the null-state equations (skipped at an anomalous
/// index with h != theta_1, reported as 0), then the three Ward identities.
struct SweepResult {
  std::uint64_t seed;
  std::size_t configurations;
  std::vector<double> max_relative;
  double worst;
};

SweepResult residual_sweep(const CandidateFunction& f, std::size_t m, const WeightAssignment& weights,
                           Kappa kappa, std::size_t configurations, std::uint64_t seed,
                           const StencilOptions& stencil = {});

/// Random strictly increasing configuration with gaps in [0.1, 2].
std::vector<PointConfig> random_configs(std::size_t m, std::size_t count, std::uint64_t seed);

}  // namespace nullstate
