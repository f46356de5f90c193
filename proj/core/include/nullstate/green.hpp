#pragma once

// One-interval causal Green function J(delta, eta) and the two-interval Green
// function G(rho, epsilon; sigma, eta) built on the Jacobi heat kernel.

#include <functional>
#include <span>
#include <vector>

#include "nullstate/exponents.hpp"
#include "nullstate/heat_kernel.hpp"

namespace nullstate {

class OneIntervalGreen {
 public:
  OneIntervalGreen(double weight, Kappa kappa);

  double weight() const noexcept { return weight_; }
  Kappa kappa() const noexcept { return kappa_; }
  const KpzPair& exponents() const noexcept { return exponents_; }
  double gap() const noexcept { return exponents_.gap; }

  /// J(delta, eta) = (4/kappa)/gap * eta * [1 - (delta/eta)^gap] for delta < eta, else 0.
  double operator()(double delta, double eta) const;

  /// Closed-form d/d delta and d^2/d delta^2 of J(., eta) on delta < eta.
  double d_delta(double delta, double eta) const;
  double d2_delta(double delta, double eta) const;

  /// Coefficients (a2, a1) of the H-transformed Euler operator
  /// L~[u] = a2 u'' + a1 u' / delta, which annihilates 1 and delta^gap.
  double second_order_coefficient() const { return 0.25 * kappa_.value(); }
  double first_order_coefficient() const { return 0.5 * kappa_.value() * exponents_.delta_minus + 1.0; }

 private:
  double weight_;
  Kappa kappa_;
  KpzPair exponents_;
};

double j_kernel(double delta, double eta, const OneIntervalGreen& g);

/// max over the grid of |L~[J(., eta)]| / scale, with the scale taken as the
/// largest of the two operator terms. Exact derivatives of the closed form.
double j_annihilation_residual(const OneIntervalGreen& g, double eta, std::span<const double> delta_grid);

/// Representation check for u solving L~[u] = source on (0, b]:
///   u(delta) = u(b) - (kappa/4) J(delta, b) u'(b) + int_delta^b J(delta, eta) source(eta) d eta.
/// Returns the mismatch relative to the largest of |u(delta)| and the three
/// right-hand terms; the integral uses graded composite Gauss-Legendre.
double one_interval_representation_residual(const OneIntervalGreen& g,
                                            const std::function<double(double)>& u,
                                            const std::function<double(double)>& du,
                                            const std::function<double(double)>& source,
                                            double delta, double b);

/// Representation check for the delta^{-D+}-rescaled field E solving
///   (kappa/4) E'' + (kappa D+/2 + 1) E' / delta = source
/// with E' bounded at 0:
///   E(delta) = E(b) - (4/kappa) int_delta^b (1/s) int_0^s (x/s)^gap x source(x) dx ds.
/// Returns the relative mismatch as above.
double one_interval_plus_representation_residual(const OneIntervalGreen& g,
                                                 const std::function<double(double)>& e,
                                                 const std::function<double(double)>& source,
                                                 double delta, double b);

/// sigma-part of a separable solution: f(sigma) P_n(2 sigma - 1) with
/// f(sigma) = sigma^{D+(theta_1)+4/kappa} (1-sigma)^{D+(h)+4/kappa}.
struct SigmaEigenfunction {
  int n;
  double lambda;
  double left_exponent;
  double right_exponent;
  JacobiBasis basis;

  double operator()(double sigma) const;
};

struct ResidualReport {
  double residual;
  double scale;
  double relative;
  double step;
  bool reliable = true;
};

class TwoIntervalGreen {
 public:
  TwoIntervalGreen(double h, Kappa kappa, TruncationPolicy policy = {});

  double h() const noexcept { return h_; }
  Kappa kappa() const noexcept { return kappa_; }
  double alpha() const noexcept { return kernel_.params().alpha; }
  double beta() const noexcept { return kernel_.params().beta; }
  double delta_plus_theta1() const noexcept { return dp_theta1_; }
  double delta_plus_h() const noexcept { return dp_h_; }
  double lambda0() const noexcept { return lambda0_; }
  const HeatKernel& kernel() const noexcept { return kernel_; }

  /// Factored evaluation through the heat kernel at t = (kappa/4) log(eta/epsilon).
  /// Zero for eta <= epsilon.
  double operator()(double rho, double epsilon, double sigma, double eta) const;

  /// Direct eigen-series evaluation with (epsilon/eta)^{lambda_n} per term.
  double series(double rho, double epsilon, double sigma, double eta) const;

  SigmaEigenfunction eigenfunction(int n) const;

  /// Q*[u] at sigma from values u(sigma), u'(sigma), u''(sigma).
  double q_star(double sigma, double u, double du, double ddu) const;

 private:
  double h_;
  Kappa kappa_;
  double dp_theta1_;
  double dp_h_;
  double lambda0_;
  HeatKernel kernel_;
};

double g_kernel(double rho, double epsilon, double sigma, double eta, const TwoIntervalGreen& g);

/// Finite-difference P*[G] = (1/eta^2)[Q* - eta d_eta / (sigma(1-sigma))] G at one
/// point of the homogeneous region eta > epsilon. Central differences with one
/// Richardson refinement; sigma step min(1e-3, dist/10) where dist is the
/// distance to the nearer endpoint.
ResidualReport adjoint_residual(const TwoIntervalGreen& g, double rho, double epsilon, double sigma,
                                double eta);

/// Same operator applied to an arbitrary field G(sigma, eta).
ResidualReport adjoint_residual(const TwoIntervalGreen& g,
                                const std::function<double(double, double)>& field, double sigma,
                                double eta, double eta_floor);

/// Log-log slopes of |G| as sigma -> 0 and sigma -> 1, fitted over
/// sigma (or 1 - sigma) in [1e-8, 1e-4]. Expected D+(theta_1) + 4/kappa
/// and D+(h) + 4/kappa.
struct EndpointExponents {
  double left;
  double right;
};
EndpointExponents sigma_endpoint_exponents(const TwoIntervalGreen& g, double rho, double epsilon, double eta);

struct ReproducingSample {
  double eta;
  double t;
  double value;
  double error;  ///< |value - f(rho)|
};

struct ReproducingRecord {
  double target;  ///< f(rho)
  std::vector<ReproducingSample> samples;
};

/// -int_0^1 G(rho, epsilon; sigma, eta) f(sigma) / (eta sigma (1-sigma)) d sigma for each
/// eta in the sequence (all > epsilon). f must make f sigma^{-D+(theta_1)} (1-sigma)^{-D+(h)}
/// bounded at both endpoints; otherwise PreconditionError.
ReproducingRecord reproducing_limit_check(const TwoIntervalGreen& g, double rho, double epsilon,
                                          const std::function<double(double)>& f,
                                          std::span<const double> eta_sequence, int quadrature_points = 400);

}  // namespace nullstate
