#pragma once
// Interval-collapse analysis: power-law fits, two-leg classification,
// rescaled limits and scaling-law scans for candidate fields.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "nullstate/candidate.hpp"

namespace nullstate {

/// Collapse of x_i onto x_{i-1} (0-based i >= 1). The effective weight is
/// theta_1 unless the interval touches the anomalous point.
struct CollapseSpec {
  std::size_t i;
  WeightAssignment weights;

  double effective_weight(Kappa kappa) const;
  KpzPair exponents(Kappa kappa) const;
};

/// Logarithmic delta grid: from top * local_gap down over `decades`.
struct DeltaGrid {
  double top = 1e-1;
  int decades = 8;
  int per_decade = 4;

  std::vector<double> deltas(double local_gap) const;
};

/// x with x_i replaced by x_{i-1} + delta; returns the realized delta.
std::vector<double> collapsed(const PointConfig& config, std::size_t i, double delta, double* realized = nullptr);

struct ExponentEstimate {
  double p_hat;
  double std_error;
  double intercept;
  std::vector<double> deltas;
  std::vector<double> values;
  double rms_residual;
};

/// Ordinary least squares of log|F| against log delta.
ExponentEstimate collapse_exponent(const CandidateFunction& f, const PointConfig& config,
                                   const CollapseSpec& spec, const DeltaGrid& grid = {});

/// Plain OLS slope fit on (x, y) pairs, shared by the scans.
struct LineFit {
  double slope;
  double intercept;
  double slope_stderr;
  double rms_residual;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

enum class TwoLegVerdict { kTwoLeg, kNotTwoLeg, kIndeterminate };
std::string to_string(TwoLegVerdict v);

struct TwoLegResult {
  TwoLegVerdict verdict;
  ExponentEstimate estimate;
  double delta_minus;
  double margin;
};

/// Two-leg iff p_hat > Delta^-(d) + 3 stderr + 1e-3. Fits with stderr above
/// max_stderr are indeterminate.
TwoLegResult two_leg_test(const CandidateFunction& f, const PointConfig& config, const CollapseSpec& spec,
                          Kappa kappa, double max_stderr = 1e-2, const DeltaGrid& grid = {});

/// H = delta^{-Delta^-(d)} F or E = delta^{-Delta^+(d)} F around a candidate.
enum class Rescaling { kMinus, kPlus };
CandidateFunction rescaled(const CandidateFunction& f, std::size_t i, double exponent, std::string name);
CandidateFunction rescaled(const CandidateFunction& f, const CollapseSpec& spec, Kappa kappa, Rescaling which);

struct EllLimitOptions {
  std::size_t slice_points = 20;
  double slice_half_width = 0.25;  ///< fraction of the neighbouring gaps
  double delta_start = 1e-1;       ///< fraction of the local gap
  int levels = 16;                 ///< halvings of delta
};

struct EllLimitResult {
  std::vector<double> slice;         ///< x_{i-1} values
  std::vector<double> limits;        ///< extrapolated H on the slice
  std::vector<double> deltas;        ///< delta levels (relative to the base)
  std::vector<double> sup_error;     ///< max over the slice of |H(delta) - limit|
  std::vector<double> tail_ratios;   ///< H(delta_{k+1}) / H(delta_k) at the slice centre
  double rate;                       ///< estimated convergence exponent
  bool uniform;                      ///< sup_error non-increasing as delta decreases
  bool converged;
  bool divergent;
};

/// Richardson-extrapolated limit of H = delta^{-Delta^-(d)} F along a slice
/// that moves x_{i-1} with the other coordinates fixed.
EllLimitResult ell_limit(const CandidateFunction& f, const PointConfig& config, const CollapseSpec& spec,
                         Kappa kappa, const EllLimitOptions& options = {});

struct DecompositionFit {
  double a;
  double b;
  double rms_residual;
};

/// Least squares for F = A delta^{Delta^-} + B delta^{Delta^+} (rows divided
/// by delta^{Delta^-}). Requires gap(d) > 0.05. The default grid stays close
/// to the local gap so that delta^gap remains visible for large gaps.
inline constexpr DeltaGrid kDecompositionGrid{0.9, 4, 8};
DecompositionFit one_interval_decomposition_fit(const CandidateFunction& f, const PointConfig& config,
                                                const CollapseSpec& spec, Kappa kappa,
                                                const DeltaGrid& grid = kDecompositionGrid);

struct PairGrid {
  std::size_t n_delta = 12;
  std::size_t n_epsilon = 12;
  double decades = 6.0;
  double top = 0.5;  ///< largest size as a fraction of the available gap
};

struct PairScanRow {
  double delta;
  double epsilon;
  double value;  ///< |F|
  double ratio;
};

struct FarPairResult {
  std::vector<PairScanRow> rows;
  double sup_ratio;
  double inf_ratio;
  double delta_slope;    ///< d log ratio / d log delta
  double epsilon_slope;  ///< d log ratio / d log epsilon
  bool divergent;
};

/// sup |F| / (delta^{Delta^+(theta_1)} eps^{Delta^+(h)}) with x_j = x_{j-1} + delta
/// and x_iota = x_{iota-1} + eps. The intervals must not share a point.
/// Slopes are fitted on the small-delta, small-eps quarter of the grid and
/// a slope below -1e-3 flags divergence.
FarPairResult far_pair_bound_scan(const CandidateFunction& f, const PointConfig& config, std::size_t j,
                                  std::size_t iota, Kappa kappa, double h, const PairGrid& grid = {});

struct AdjacentPairResult {
  std::vector<PairScanRow> rows;
  double sup_ratio;
  double inf_ratio;
  double ratio_spread;  ///< (sup - inf) / sup
  double epsilon_slope;  ///< smallest per-rho slope over the small-eps half
  bool divergent;
  double p1;  ///< small-delta regime exponent
  double p2;  ///< delta near epsilon regime exponent
  double p0;  ///< max(p1 + Delta^+(h), p2 + Delta^+(theta_1))
  double epsilon_exponent;  ///< total power of eps at fixed rho = delta / eps
  double epsilon_exponent_excess;  ///< epsilon_exponent - Delta^+(theta_1) - Delta^+(h)
};

/// sup |F| / (delta^{Delta^+(theta_1)} eps^{Delta^+(h)} (eps - delta)^{Delta^+(h)}) with
/// x_{iota-1} = x_{iota-2} + delta, x_iota = x_{iota-2} + eps, 0 < delta < eps.
AdjacentPairResult adjacent_pair_bound_scan(const CandidateFunction& f, const PointConfig& config,
                                            std::size_t iota, Kappa kappa, double h,
                                            const PairGrid& grid = {});

/// delta,epsilon,value,ratio
void write_pair_scan_csv(std::ostream& os, const std::vector<PairScanRow>& rows);

}  // namespace nullstate
