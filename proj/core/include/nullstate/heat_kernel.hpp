#pragma once

// Jacobi heat kernel
//   K(rho, sigma, t) = sum_n exp(-t n(n+alpha+beta+1))
//                      P_n(2 rho - 1) P_n(2 sigma - 1) / (2^{-alpha-beta-1} h_n),
// its reproducing property, and grid certification of the two-sided
// short-time Gaussian envelope.

#include <functional>
#include <iosfwd>
#include <vector>

#include "nullstate/exponents.hpp"
#include "nullstate/jacobi.hpp"

namespace nullstate {

struct KernelParams {
  double alpha;
  double beta;
};

/// (alpha, beta) = (gap(h), gap(theta_1)).
KernelParams kernel_params(double h, Kappa kappa);

/// Series truncation: stop once the rigorous bound on the neglected terms is
/// at most tail_tol, or fail at n_max.
struct TruncationPolicy {
  int n_max = 2000;
  double tail_tol = 1e-10;
};

struct KernelValue {
  double value;
  double tail_bound;  ///< bound on the neglected terms
  int terms;
  double rounding_bound = 0.0;  ///< floating-point error estimate of the summed terms

  double error_bound() const { return tail_bound + rounding_bound; }
};

/// Two-interval time variable t = (kappa/4) log(eta/epsilon).
double kernel_time(double eta_over_epsilon, Kappa kappa);

class HeatKernel {
 public:
  explicit HeatKernel(KernelParams params, TruncationPolicy policy = {});

  const JacobiBasis& basis() const noexcept { return basis_; }
  const KernelParams& params() const noexcept { return params_; }
  const TruncationPolicy& policy() const noexcept { return policy_; }

  /// Number of series terms needed at time t and the resulting tail bound.
  /// Throws TruncationError when n_max is not enough.
  std::pair<int, double> truncation(double t) const;

  KernelValue evaluate(double rho, double sigma, double t) const;

  /// Mode-n coefficient exp(-t n(n+a+b+1)) P_n(2 rho - 1) / (2^{-a-b-1} h_n).
  double mode_coefficient(int n, double rho, double t) const;

  /// The t -> infinity limit, 1 / B(beta+1, alpha+1).
  double stationary_value() const;

 private:
  double term_bound(int n, double t) const;

  KernelParams params_;
  TruncationPolicy policy_;
  JacobiBasis basis_;
  std::vector<double> shifted_norm_;
  std::vector<double> endpoint_sq_;
};

KernelValue kernel_value(double rho, double sigma, double t, KernelParams params,
                         TruncationPolicy policy = {});

/// int_0^1 K(rho, sigma, t) f(sigma) w(sigma) d sigma with a Gauss-Jacobi rule
/// on [0,1] built for the same (alpha, beta).
double reproducing_integral(double rho, double t, const std::function<double(double)>& f,
                            const HeatKernel& kernel, const QuadratureRule& unit_rule);

/// Lambda(theta, phi, t) = [t + sin(theta/2) sin(phi/2)]^{-alpha-1/2}
///                         [t + cos(theta/2) cos(phi/2)]^{-beta-1/2}.
double lambda_envelope(double alpha, double beta, double theta, double phi, double t);

/// exp(-(theta-phi)^2 / (c t)) / sqrt(pi c t).
double gaussian_factor(double angle_difference, double c, double t);

struct BoundEnvelope {
  double theta;
  double phi;
  double t;
  double lambda_value;
  double gaussian_factor;
};

BoundEnvelope bound_envelope(const KernelParams& params, double theta, double phi, double t, double c);

struct BoundScanOptions {
  double T = 1.0;
  double t_min = 1e-3;
  int n_theta = 21;
  int n_phi = 21;
  int n_t = 8;                 ///< log-spaced times in [t_min, T]
  double c_lower = 2.0;        ///< Gaussian width constant used for the lower envelope
  double c_upper = 8.0;        ///< and for the upper envelope
  std::vector<double> late_factors{1.5, 2.0, 4.0, 8.0};  ///< times T * factor for the t > T regime
};

struct BoundScanRow {
  double theta;
  double phi;
  double t;
  double kernel;
  double envelope;        ///< Lambda * gaussian(c_upper), or 1 for t > T
  double ratio;           ///< kernel / envelope
  double lower_envelope;  ///< Lambda * gaussian(c_lower), or 1 for t > T
  double lower_ratio;
  bool late;
  bool resolved;  ///< K exceeds 100x its truncation plus rounding error
};

struct BoundScanResult {
  double lower_min;  ///< min over t <= T of K / (Lambda g_{c_lower}), should be > 0
  double lower_max;
  double upper_min;
  double upper_max;  ///< max over t <= T of K / (Lambda g_{c_upper}), should be finite
  double late_min;   ///< min of K over t > T
  double late_max;
  double kernel_min;  ///< min of K over the resolved grid points
  std::size_t unresolved = 0;  ///< points where K is below its error bound
  std::vector<BoundScanRow> rows;

  /// Both regimes have finite positive extremes.
  bool two_sided() const;
};

/// Scan (theta, phi, t) with rho = cos^2(phi/2), sigma = cos^2(theta/2).
/// Far off the diagonal at small t the kernel drops below double resolution;
/// those points are marked unresolved and left out of the extremes. Rows
/// are computed in parallel; a TruncationError at the smallest t
/// propagates with that t attached.
BoundScanResult bound_ratio_scan(const HeatKernel& kernel, const BoundScanOptions& options);

/// CSV with header theta,phi,t,K,envelope,ratio,lower_envelope,lower_ratio,resolved.
void write_bound_scan_csv(std::ostream& out, const BoundScanResult& result);

}  // namespace nullstate
