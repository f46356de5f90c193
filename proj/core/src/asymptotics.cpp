#include "nullstate/asymptotics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "nullstate/errors.hpp"
#include "nullstate/parallel.hpp"

namespace nullstate {

double CollapseSpec::effective_weight(Kappa kappa) const {
  if (weights.iota && (*weights.iota == i || *weights.iota + 1 == i)) return weights.h;
  return leg_weight(1, kappa);
}

KpzPair CollapseSpec::exponents(Kappa kappa) const { return kpz(effective_weight(kappa), kappa); }

std::vector<double> DeltaGrid::deltas(double local_gap) const {
  if (!(top > 0.0 && top < 1.0) || decades < 1 || per_decade < 1) {
    throw PreconditionError("delta grid needs 0 < top < 1 and positive decade counts");
  }
  const int n = decades * per_decade + 1;
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = top * local_gap * std::pow(10.0, -static_cast<double>(k) / per_decade);
  }
  return out;
}

std::vector<double> collapsed(const PointConfig& config, std::size_t i, double delta, double* realized) {
  if (i == 0 || i >= config.size()) throw PreconditionError("collapse index must satisfy 1 <= i < M");
  std::vector<double> x(config.coords().begin(), config.coords().end());
  x[i] = x[i - 1] + delta;
  if (!(x[i] > x[i - 1]) || (i + 1 < x.size() && !(x[i] < x[i + 1]))) {
    throw PreconditionError("collapse step leaves the ordered domain");
  }
  if (realized) *realized = x[i] - x[i - 1];
  return x;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 3 || y.size() != n) throw PreconditionError("line fit needs at least three points");
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (!(sxx > 0.0)) throw NumericError("line fit abscissae are degenerate");
  LineFit fit{};
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = y[k] - fit.intercept - fit.slope * x[k];
    ssr += r * r;
  }
  fit.slope_stderr = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  fit.rms_residual = std::sqrt(ssr / static_cast<double>(n));
  return fit;
}

ExponentEstimate collapse_exponent(const CandidateFunction& f, const PointConfig& config,
                                   const CollapseSpec& spec, const DeltaGrid& grid) {
  const std::size_t i = spec.i;
  if (i == 0 || i >= config.size()) throw PreconditionError("collapse index must satisfy 1 <= i < M");
  const double local = config[i] - config[i - 1];
  ExponentEstimate est{};
  std::vector<double> lx, ly;
  for (const double d : grid.deltas(local)) {
    double realized = 0.0;
    const auto x = collapsed(config, i, d, &realized);
    const double v = f(x);
    est.deltas.push_back(realized);
    est.values.push_back(v);
    if (v == 0.0 || !std::isfinite(v)) continue;
    lx.push_back(std::log(realized));
    ly.push_back(std::log(std::abs(v)));
  }
  if (lx.size() < 5) throw NumericError("degenerate fit: candidate vanishes or is non-finite on the delta grid");
  const LineFit fit = fit_line(lx, ly);
  est.p_hat = fit.slope;
  est.std_error = fit.slope_stderr;
  est.intercept = fit.intercept;
  est.rms_residual = fit.rms_residual;
  return est;
}

std::string to_string(TwoLegVerdict v) {
  switch (v) {
    case TwoLegVerdict::kTwoLeg: return "two-leg";
    case TwoLegVerdict::kNotTwoLeg: return "not-two-leg";
    case TwoLegVerdict::kIndeterminate: return "indeterminate";
  }
  return "unknown";
}

TwoLegResult two_leg_test(const CandidateFunction& f, const PointConfig& config, const CollapseSpec& spec,
                          Kappa kappa, double max_stderr, const DeltaGrid& grid) {
  TwoLegResult r{};
  r.estimate = collapse_exponent(f, config, spec, grid);
  r.delta_minus = spec.exponents(kappa).delta_minus;
  r.margin = 3.0 * r.estimate.std_error + 1e-3;
  if (r.estimate.std_error > max_stderr) {
    r.verdict = TwoLegVerdict::kIndeterminate;
  } else {
    r.verdict = r.estimate.p_hat > r.delta_minus + r.margin ? TwoLegVerdict::kTwoLeg : TwoLegVerdict::kNotTwoLeg;
  }
  return r;
}

CandidateFunction rescaled(const CandidateFunction& f, std::size_t i, double exponent, std::string name) {
  CandidateFunction out;
  out.name = std::move(name);
  out.arity = f.arity;
  auto inner = f.field;
  out.field = [inner, i, exponent](std::span<const double> x) {
    return std::pow(x[i] - x[i - 1], -exponent) * inner(x);
  };
  return out;
}

CandidateFunction rescaled(const CandidateFunction& f, const CollapseSpec& spec, Kappa kappa, Rescaling which) {
  const KpzPair e = spec.exponents(kappa);
  if (which == Rescaling::kMinus) return rescaled(f, spec.i, e.delta_minus, "H[" + f.name + "]");
  return rescaled(f, spec.i, e.delta_plus, "E[" + f.name + "]");
}

EllLimitResult ell_limit(const CandidateFunction& f, const PointConfig& config, const CollapseSpec& spec,
                         Kappa kappa, const EllLimitOptions& options) {
  const std::size_t i = spec.i;
  const std::size_t m = config.size();
  if (i == 0 || i >= m) throw PreconditionError("collapse index must satisfy 1 <= i < M");
  if (options.slice_points < 2 || options.levels < 4) throw PreconditionError("ell limit needs a slice and >= 4 levels");
  const CandidateFunction h = rescaled(f, spec, kappa, Rescaling::kMinus);

  const double left_room = i >= 2 ? config[i - 1] - config[i - 2] : 1.0;
  const double right_room = i + 1 < m ? config[i + 1] - config[i] : 1.0;
  const double local = config[i] - config[i - 1];
  const double lo = config[i - 1] - options.slice_half_width * left_room;
  const double hi = config[i - 1] + options.slice_half_width * right_room;

  EllLimitResult out{};
  const std::size_t levels = static_cast<std::size_t>(options.levels);
  for (std::size_t k = 0; k < levels; ++k) out.deltas.push_back(options.delta_start * local * std::ldexp(1.0, -static_cast<int>(k)));

  std::vector<std::vector<double>> values(options.slice_points, std::vector<double>(levels));
  out.slice.resize(options.slice_points);
  for (std::size_t s = 0; s < options.slice_points; ++s) {
    out.slice[s] = lo + (hi - lo) * static_cast<double>(s) / static_cast<double>(options.slice_points - 1);
  }
  parallel_for(options.slice_points, [&](std::size_t s) {
    std::vector<double> base(config.coords().begin(), config.coords().end());
    const double shift = out.slice[s] - base[i - 1];
    base[i - 1] += shift;
    base[i] += shift;
    const PointConfig moved(base);
    for (std::size_t k = 0; k < levels; ++k) values[s][k] = h(collapsed(moved, i, out.deltas[k]));
  });

  out.converged = true;
  out.limits.resize(options.slice_points);
  double centre_rate = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t s = 0; s < options.slice_points; ++s) {
    const auto& v = values[s];
    double scale = 0.0;
    for (const double x : v) scale = std::max(scale, std::abs(x));
    const double d1 = v[levels - 2] - v[levels - 3];
    const double d2 = v[levels - 1] - v[levels - 2];
    double rate = std::numeric_limits<double>::infinity();
    double limit = v[levels - 1];
    if (!std::isfinite(scale)) {
      out.converged = false;
      limit = std::numeric_limits<double>::quiet_NaN();
    } else if (std::abs(d2) > 1e-13 * scale) {
      const double q = d1 != 0.0 ? d2 / d1 : 2.0;
      if (q > 0.0 && q < 1.0) {
        limit = v[levels - 1] + d2 * q / (1.0 - q);
        rate = -std::log2(q);
      } else {
        out.converged = false;
        rate = q > 0.0 ? -std::log2(q) : std::numeric_limits<double>::quiet_NaN();
      }
    }
    out.limits[s] = limit;
    if (s == options.slice_points / 2) centre_rate = rate;
  }
  out.rate = centre_rate;

  const auto& centre = values[options.slice_points / 2];
  for (std::size_t k = 0; k + 1 < levels; ++k) {
    out.tail_ratios.push_back(centre[k] != 0.0 ? centre[k + 1] / centre[k] : 0.0);
  }
  std::size_t growing = 0;
  for (std::size_t k = out.tail_ratios.size() - 4; k < out.tail_ratios.size(); ++k) {
    if (std::abs(out.tail_ratios[k]) > 1.01) ++growing;
  }
  out.divergent = growing == 4;
  if (out.divergent) out.converged = false;

  out.sup_error.assign(levels, 0.0);
  double limit_scale = 0.0;
  for (std::size_t s = 0; s < options.slice_points; ++s) {
    limit_scale = std::max(limit_scale, std::abs(out.limits[s]));
    for (std::size_t k = 0; k < levels; ++k) {
      out.sup_error[k] = std::max(out.sup_error[k], std::abs(values[s][k] - out.limits[s]));
    }
  }
  out.uniform = out.converged;
  for (std::size_t k = 0; k + 1 < levels && out.uniform; ++k) {
    if (out.sup_error[k + 1] > out.sup_error[k] * (1.0 + 1e-8) + 1e-13 * std::max(limit_scale, 1.0)) {
      out.uniform = false;
    }
  }
  return out;
}

DecompositionFit one_interval_decomposition_fit(const CandidateFunction& f, const PointConfig& config,
                                                const CollapseSpec& spec, Kappa kappa, const DeltaGrid& grid) {
  const KpzPair e = spec.exponents(kappa);
  if (!(e.gap > 0.05)) throw PreconditionError("exponents too close to separate on the grid (gap <= 0.05)");
  const std::size_t i = spec.i;
  if (i == 0 || i >= config.size()) throw PreconditionError("collapse index must satisfy 1 <= i < M");
  const auto deltas = grid.deltas(config[i] - config[i - 1]);
  Eigen::MatrixXd a(static_cast<Eigen::Index>(deltas.size()), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(deltas.size()));
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    double d = 0.0;
    const auto x = collapsed(config, i, deltas[k], &d);
    const auto r = static_cast<Eigen::Index>(k);
    a(r, 0) = 1.0;
    a(r, 1) = std::pow(d, e.gap);
    y(r) = f(x) * std::pow(d, -e.delta_minus);
  }
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(y);
  const double rms = std::sqrt((a * c - y).squaredNorm() / static_cast<double>(deltas.size()));
  return {c(0), c(1), rms};
}

namespace {

constexpr double kDivergenceSlope = -1e-3;

std::vector<double> log_spaced(double top, double decades, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = top * std::pow(10.0, -decades * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  return out;
}

}  // namespace

FarPairResult far_pair_bound_scan(const CandidateFunction& f, const PointConfig& config, std::size_t j,
                                  std::size_t iota, Kappa kappa, double h, const PairGrid& grid) {
  const std::size_t m = config.size();
  if (j == 0 || iota == 0 || j >= m || iota >= m) throw PreconditionError("interval indices must satisfy 1 <= index < M");
  if ((j > iota ? j - iota : iota - j) < 2) {
    throw PreconditionError("far-pair scan needs intervals that are neither adjacent nor identical");
  }
  if (grid.n_delta < 3 || grid.n_epsilon < 3) throw PreconditionError("pair grid needs at least 3 points per axis");
  const double a = kpz(leg_weight(1, kappa), kappa).delta_plus;
  const double b = kpz(h, kappa).delta_plus;
  const auto ds = log_spaced(grid.top * (config[j] - config[j - 1]), grid.decades, grid.n_delta);
  const auto es = log_spaced(grid.top * (config[iota] - config[iota - 1]), grid.decades, grid.n_epsilon);

  FarPairResult out{};
  out.rows.resize(ds.size() * es.size());
  parallel_for(out.rows.size(), [&](std::size_t idx) {
    const std::size_t p = idx / es.size();
    const std::size_t q = idx % es.size();
    std::vector<double> x(config.coords().begin(), config.coords().end());
    x[j] = x[j - 1] + ds[p];
    x[iota] = x[iota - 1] + es[q];
    const double d = x[j] - x[j - 1];
    const double e = x[iota] - x[iota - 1];
    const double v = std::abs(f(x));
    out.rows[idx] = {d, e, v, v / (std::pow(d, a) * std::pow(e, b))};
  });

  out.sup_ratio = 0.0;
  out.inf_ratio = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd design(static_cast<Eigen::Index>(out.rows.size()), 3);
  Eigen::VectorXd logs(static_cast<Eigen::Index>(out.rows.size()));
  Eigen::Index used = 0;
  for (std::size_t idx = 0; idx < out.rows.size(); ++idx) {
    const auto& r = out.rows[idx];
    out.sup_ratio = std::max(out.sup_ratio, r.ratio);
    out.inf_ratio = std::min(out.inf_ratio, r.ratio);
    const bool tail = idx / es.size() >= ds.size() / 2 && idx % es.size() >= es.size() / 2;
    if (tail && r.ratio > 0.0 && std::isfinite(r.ratio)) {
      design.row(used) << 1.0, std::log(r.delta), std::log(r.epsilon);
      logs(used) = std::log(r.ratio);
      ++used;
    }
  }
  if (used < 4) throw NumericError("far-pair scan: ratio vanishes on the grid");
  const Eigen::Vector3d c = design.topRows(used).colPivHouseholderQr().solve(logs.head(used));
  out.delta_slope = c(1);
  out.epsilon_slope = c(2);
  out.divergent = out.delta_slope < kDivergenceSlope || out.epsilon_slope < kDivergenceSlope ||
                  !std::isfinite(out.sup_ratio);
  return out;
}

AdjacentPairResult adjacent_pair_bound_scan(const CandidateFunction& f, const PointConfig& config,
                                            std::size_t iota, Kappa kappa, double h, const PairGrid& grid) {
  const std::size_t m = config.size();
  if (iota < 2 || iota >= m) throw PreconditionError("adjacent-pair scan needs 2 <= iota < M");
  if (grid.n_epsilon < 3) throw PreconditionError("pair grid needs at least 3 epsilon points");
  const double a = kpz(leg_weight(1, kappa), kappa).delta_plus;
  const double b = kpz(h, kappa).delta_plus;
  static const std::vector<double> rhos = {1e-4, 1e-3, 1e-2, 0.1, 0.25, 0.4, 0.5,
                                           0.6,  0.75, 0.9,  0.99, 0.999, 0.9999};
  const auto es = log_spaced(grid.top * (config[iota] - config[iota - 2]), grid.decades, grid.n_epsilon);

  AdjacentPairResult out{};
  out.rows.resize(rhos.size() * es.size());
  parallel_for(out.rows.size(), [&](std::size_t idx) {
    const std::size_t p = idx / es.size();
    const std::size_t q = idx % es.size();
    std::vector<double> x(config.coords().begin(), config.coords().end());
    x[iota - 1] = x[iota - 2] + rhos[p] * es[q];
    x[iota] = x[iota - 2] + es[q];
    const double d = x[iota - 1] - x[iota - 2];
    const double e = x[iota] - x[iota - 2];
    const double gap = x[iota] - x[iota - 1];
    const double v = std::abs(f(x));
    out.rows[idx] = {d, e, v, v / (std::pow(d, a) * std::pow(e, b) * std::pow(gap, b))};
  });

  out.sup_ratio = 0.0;
  out.inf_ratio = std::numeric_limits<double>::infinity();
  for (const auto& r : out.rows) {
    out.sup_ratio = std::max(out.sup_ratio, r.ratio);
    out.inf_ratio = std::min(out.inf_ratio, r.ratio);
  }
  out.ratio_spread = out.sup_ratio > 0.0 ? (out.sup_ratio - out.inf_ratio) / out.sup_ratio : 0.0;

  std::vector<double> log_e(es.size());
  std::vector<double> reg1(es.size(), 0.0), reg2(es.size(), 0.0);
  out.epsilon_slope = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < rhos.size(); ++p) {
    std::vector<double> lr(es.size()), lf(es.size());
    for (std::size_t q = 0; q < es.size(); ++q) {
      const auto& r = out.rows[p * es.size() + q];
      log_e[q] = std::log(r.epsilon);
      lr[q] = std::log(r.ratio);
      lf[q] = std::log(r.value);
      const double s1 = r.value / std::pow(r.delta, a);
      const double s2 = r.value / std::pow(r.epsilon - r.delta, b);
      if (rhos[p] < 0.5) reg1[q] = std::max(reg1[q], s1);
      if (rhos[p] > 0.5) reg2[q] = std::max(reg2[q], s2);
    }
    const std::size_t half = es.size() / 2;
    const std::vector<double> tail_e(log_e.begin() + static_cast<std::ptrdiff_t>(half), log_e.end());
    const std::vector<double> tail_r(lr.begin() + static_cast<std::ptrdiff_t>(half), lr.end());
    out.epsilon_slope = std::min(out.epsilon_slope, fit_line(tail_e, tail_r).slope);
    if (rhos[p] == 0.5) {
      out.epsilon_exponent = fit_line(log_e, lf).slope;
      out.epsilon_exponent_excess = out.epsilon_exponent - a - b;
    }
  }
  for (auto& v : reg1) v = std::log(v);
  for (auto& v : reg2) v = std::log(v);
  out.p1 = -fit_line(log_e, reg1).slope;
  out.p2 = -fit_line(log_e, reg2).slope;
  out.p0 = std::max(out.p1 + b, out.p2 + a);
  out.divergent = out.epsilon_slope < kDivergenceSlope || !std::isfinite(out.sup_ratio);
  return out;
}

void write_pair_scan_csv(std::ostream& os, const std::vector<PairScanRow>& rows) {
  os << "delta,epsilon,value,ratio\n" << std::setprecision(17);
  for (const auto& r : rows) os << r.delta << ',' << r.epsilon << ',' << r.value << ',' << r.ratio << '\n';
}

}  // namespace nullstate
