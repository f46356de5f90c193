#include "nullstate/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "nullstate/errors.hpp"
#include "nullstate/parallel.hpp"

namespace nullstate {

KernelParams kernel_params(double h, Kappa kappa) {
  const JacobiParams jp = jacobi_params(h, kappa);
  return {jp.alpha, jp.beta};
}

double kernel_time(double eta_over_epsilon, Kappa kappa) {
  if (!(eta_over_epsilon > 0.0)) throw DomainError("eta/epsilon must be positive");
  return 0.25 * kappa.value() * std::log(eta_over_epsilon);
}

HeatKernel::HeatKernel(KernelParams params, TruncationPolicy policy)
    : params_(params), policy_(policy), basis_(params.alpha, params.beta) {
  if (!(params.alpha > 0.0) || !(params.beta > 0.0)) {
    throw DomainError("heat kernel needs alpha, beta > 0");
  }
  if (policy.n_max < 1 || !(policy.tail_tol > 0.0)) {
    throw DomainError("truncation policy needs n_max >= 1 and tail_tol > 0");
  }
  const auto count = static_cast<std::size_t>(policy.n_max) + 2;
  shifted_norm_.resize(count);
  endpoint_sq_.resize(count);
  double at_one = 1.0;
  double at_minus_one = 1.0;
  for (std::size_t n = 0; n < count; ++n) {
    if (n > 0) {
      at_one *= (params.alpha + static_cast<double>(n)) / static_cast<double>(n);
      at_minus_one *= (params.beta + static_cast<double>(n)) / static_cast<double>(n);
    }
    shifted_norm_[n] = basis_.shifted_norm_sq(static_cast<int>(n));
    const double m = std::max(at_one, at_minus_one);
    endpoint_sq_[n] = m * m;
  }
}

double HeatKernel::term_bound(int n, double t) const {
  const double eig = n * (n + params_.alpha + params_.beta + 1.0);
  return std::exp(-t * eig) * endpoint_sq_[static_cast<std::size_t>(n)] /
         shifted_norm_[static_cast<std::size_t>(n)];
}

std::pair<int, double> HeatKernel::truncation(double t) const {
  if (!(t > 0.0)) {
    throw DomainError("heat kernel time must be positive, got " + std::to_string(t));
  }
  // Successive term bounds have non-increasing ratios once the Gaussian factor
  // dominates, so sum_{n>=N} b_n <= b_N / (1 - b_{N+1}/b_N).
  double current = term_bound(1, t);
  for (int n = 1; n <= policy_.n_max; ++n) {
    const double next = term_bound(n + 1, t);
    const double ratio = next / current;
    if (ratio < 0.5) {
      const double tail = current / (1.0 - ratio);
      if (tail <= policy_.tail_tol) return {n, tail};
    }
    current = next;
  }
  throw TruncationError("heat kernel series did not reach tail " + std::to_string(policy_.tail_tol) +
                            " within " + std::to_string(policy_.n_max) + " terms at t=" +
                            std::to_string(t),
                        t, current);
}

KernelValue HeatKernel::evaluate(double rho, double sigma, double t) const {
  const auto [terms, tail] = truncation(t);
  const std::vector<double> pr = basis_.values(terms - 1, 2.0 * rho - 1.0);
  const std::vector<double> ps = basis_.values(terms - 1, 2.0 * sigma - 1.0);
  const double ab1 = params_.alpha + params_.beta + 1.0;
  double sum = 0.0;
  double magnitude = 0.0;
  for (int n = 0; n < terms; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const double term = std::exp(-t * n * (n + ab1)) * pr[i] * ps[i] / shifted_norm_[i];
    sum += term;
    magnitude += std::abs(term);
  }
  const double rounding = 4.0 * (terms + 1) * std::numeric_limits<double>::epsilon() * magnitude;
  return {sum, tail, terms, rounding};
}

double HeatKernel::mode_coefficient(int n, double rho, double t) const {
  const double eig = n * (n + params_.alpha + params_.beta + 1.0);
  return std::exp(-t * eig) * basis_.value(n, 2.0 * rho - 1.0) / basis_.shifted_norm_sq(n);
}

double HeatKernel::stationary_value() const {
  return 1.0 / beta_function(params_.beta + 1.0, params_.alpha + 1.0);
}

KernelValue kernel_value(double rho, double sigma, double t, KernelParams params,
                         TruncationPolicy policy) {
  return HeatKernel(params, policy).evaluate(rho, sigma, t);
}

double reproducing_integral(double rho, double t, const std::function<double(double)>& f,
                            const HeatKernel& kernel, const QuadratureRule& unit_rule) {
  if (unit_rule.domain != QuadratureRule::Domain::kUnit) {
    throw PreconditionError("reproducing_integral needs a rule on [0,1]");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < unit_rule.nodes.size(); ++i) {
    const double s = unit_rule.nodes[i];
    acc += unit_rule.weights[i] * kernel.evaluate(rho, s, t).value * f(s);
  }
  return acc;
}

double lambda_envelope(double alpha, double beta, double theta, double phi, double t) {
  const double s = t + std::sin(0.5 * theta) * std::sin(0.5 * phi);
  const double c = t + std::cos(0.5 * theta) * std::cos(0.5 * phi);
  return std::pow(s, -alpha - 0.5) * std::pow(c, -beta - 0.5);
}

double gaussian_factor(double angle_difference, double c, double t) {
  const double ct = c * t;
  return std::exp(-angle_difference * angle_difference / ct) / std::sqrt(std::numbers::pi * ct);
}

BoundEnvelope bound_envelope(const KernelParams& params, double theta, double phi, double t, double c) {
  return {theta, phi, t, lambda_envelope(params.alpha, params.beta, theta, phi, t),
          gaussian_factor(theta - phi, c, t)};
}

bool BoundScanResult::two_sided() const {
  const auto finite_positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  return finite_positive(lower_min) && finite_positive(upper_max) && finite_positive(late_min) &&
         finite_positive(late_max) && kernel_min > 0.0;
}

BoundScanResult bound_ratio_scan(const HeatKernel& kernel, const BoundScanOptions& options) {
  if (!(options.T > 0.0) || !(options.t_min > 0.0) || options.t_min > options.T) {
    throw DomainError("bound scan needs 0 < t_min <= T");
  }
  if (options.n_theta < 2 || options.n_phi < 2 || options.n_t < 1) {
    throw DomainError("bound scan grid needs at least 2 angles and 1 time");
  }
  std::vector<double> times;
  for (int k = 0; k < options.n_t; ++k) {
    const double frac = options.n_t == 1 ? 1.0 : static_cast<double>(k) / (options.n_t - 1);
    times.push_back(options.t_min * std::pow(options.T / options.t_min, frac));
  }
  const std::size_t early = times.size();
  for (const double f : options.late_factors) times.push_back(options.T * f);

  // Surface the truncation failure at the smallest time before the scan.
  kernel.truncation(options.t_min);

  const auto nth = static_cast<std::size_t>(options.n_theta);
  const auto nph = static_cast<std::size_t>(options.n_phi);
  std::vector<BoundScanRow> rows(times.size() * nth * nph);
  const KernelParams& p = kernel.params();
  parallel_for(rows.size(), [&](std::size_t idx) {
    const std::size_t ti = idx / (nth * nph);
    const std::size_t a = (idx / nph) % nth;
    const std::size_t b = idx % nph;
    const double theta = std::numbers::pi * static_cast<double>(a) / static_cast<double>(nth - 1);
    const double phi = std::numbers::pi * static_cast<double>(b) / static_cast<double>(nph - 1);
    const double t = times[ti];
    const double rho = std::pow(std::cos(0.5 * phi), 2);
    const double sigma = std::pow(std::cos(0.5 * theta), 2);
    BoundScanRow row{};
    row.theta = theta;
    row.phi = phi;
    row.t = t;
    const KernelValue kv = kernel.evaluate(rho, sigma, t);
    row.kernel = kv.value;
    row.resolved = kv.value > 100.0 * kv.error_bound();
    row.late = ti >= early;
    if (row.late) {
      row.envelope = 1.0;
      row.lower_envelope = 1.0;
    } else {
      const double lam = lambda_envelope(p.alpha, p.beta, theta, phi, t);
      row.envelope = lam * gaussian_factor(theta - phi, options.c_upper, t);
      row.lower_envelope = lam * gaussian_factor(theta - phi, options.c_lower, t);
    }
    row.ratio = row.kernel / row.envelope;
    row.lower_ratio = row.kernel / row.lower_envelope;
    rows[idx] = row;
  });

  constexpr double inf = std::numeric_limits<double>::infinity();
  BoundScanResult out{inf, -inf, inf, -inf, inf, -inf, inf, 0, {}};
  for (const BoundScanRow& r : rows) {
    if (!r.resolved) {
      ++out.unresolved;
      continue;
    }
    out.kernel_min = std::min(out.kernel_min, r.kernel);
    if (r.late) {
      out.late_min = std::min(out.late_min, r.kernel);
      out.late_max = std::max(out.late_max, r.kernel);
    } else {
      out.lower_min = std::min(out.lower_min, r.lower_ratio);
      out.lower_max = std::max(out.lower_max, r.lower_ratio);
      out.upper_min = std::min(out.upper_min, r.ratio);
      out.upper_max = std::max(out.upper_max, r.ratio);
    }
  }
  out.rows = std::move(rows);
  return out;
}

void write_bound_scan_csv(std::ostream& out, const BoundScanResult& result) {
  const auto old = out.precision(17);
  out << "theta,phi,t,K,envelope,ratio,lower_envelope,lower_ratio,resolved\n";
  for (const BoundScanRow& r : result.rows) {
    out << r.theta << ',' << r.phi << ',' << r.t << ',' << r.kernel << ',' << r.envelope << ','
        << r.ratio << ',' << r.lower_envelope << ',' << r.lower_ratio << ','
        << (r.resolved ? 1 : 0) << '\n';
  }
  out.precision(old);
}

}  // namespace nullstate
