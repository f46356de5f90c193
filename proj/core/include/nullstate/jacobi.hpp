#pragma once

// Jacobi polynomials P_n^{(alpha,beta)} on [-1,1], their shifted form on
// [0,1], norms, the Jacobi differential operator and Gauss-Jacobi rules.

#include <functional>
#include <span>
#include <vector>

namespace nullstate {

/// Parameter pair (alpha, beta), both > -1. Immutable.
class JacobiBasis {
 public:
  JacobiBasis(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  /// Basis with alpha and beta exchanged.
  JacobiBasis swapped() const { return {beta_, alpha_}; }

  /// P_n(y) by the three-term recurrence.
  double value(int n, double y) const;

  /// P_0(y) ... P_{n_max}(y) in one recurrence sweep.
  std::vector<double> values(int n_max, double y) const;

  /// k-th derivative of P_n at y, via the parameter-shift identity
  /// d/dy P_n^{(a,b)} = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)}.
  double derivative(int n, double y, int order = 1) const;

  /// h_n = ||P_n||^2 against (1-y)^alpha (1+y)^beta on [-1,1].
  double norm_sq(int n) const;

  /// ||P_n(2 sigma - 1)||^2 against sigma^beta (1-sigma)^alpha on [0,1],
  /// i.e. 2^{-alpha-beta-1} h_n.
  double shifted_norm_sq(int n) const;

  /// P_n(1) = binom(n+alpha, n).
  double value_at_one(int n) const;

  /// max(|P_n(1)|, |P_n(-1)|), the sup of |P_n| on [-1,1] when
  /// alpha, beta >= -1/2.
  double endpoint_max(int n) const;

  /// rho(y) = (1-y)^alpha (1+y)^beta.
  double weight(double y) const;

  /// w(sigma) = sigma^beta (1-sigma)^alpha.
  double shifted_weight(double sigma) const;

 private:
  double alpha_;
  double beta_;
};

double jacobi_poly(int n, const JacobiBasis& basis, double y);

/// The explicit Gamma-function sum for P_n. Alternating; only meant as an
/// independent cross-check of the recurrence for small n.
double jacobi_poly_explicit_sum(int n, const JacobiBasis& basis, double y);

double jacobi_norm_sq(int n, const JacobiBasis& basis);

/// max over the grid of |J[P_n](y) + n(n+alpha+beta+1) P_n(y)| where
/// J = (1-y^2) d^2/dy^2 + [beta - alpha - (alpha+beta+2) y] d/dy.
double jacobi_operator_residual(int n, const JacobiBasis& basis, std::span<const double> grid);

/// Euler Beta function B(a, b).
double beta_function(double a, double b);

struct QuadratureRule {
  enum class Domain { kSymmetric, kUnit };

  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
  Domain domain = Domain::kSymmetric;

  double integrate(const std::function<double(double)>& f) const;
};

/// m-point Gauss-Jacobi rule on [-1,1] against (1-y)^alpha (1+y)^beta, exact
/// for polynomials of degree <= 2m-1. Nodes come from the symmetric
/// tridiagonal Jacobi matrix and are then Newton-polished.
QuadratureRule gauss_jacobi_rule(int m, const JacobiBasis& basis);

/// Same rule mapped to [0,1] against sigma^beta (1-sigma)^alpha.
QuadratureRule gauss_jacobi_unit_rule(int m, const JacobiBasis& basis);

}  // namespace nullstate
