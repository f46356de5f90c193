#include "nullstate/jacobi.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nullstate/errors.hpp"

namespace nullstate {

JacobiBasis::JacobiBasis(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw DomainError("Jacobi parameters must exceed -1 (alpha=" + std::to_string(alpha) +
                      ", beta=" + std::to_string(beta) + ")");
  }
}

namespace {

double recurrence_value(int n, double a, double b, double y) {
  if (n < 0) throw DomainError("polynomial degree must be non-negative");
  if (n == 0) return 1.0;
  double p_prev = 1.0;
  double p = (a + 1.0) + 0.5 * (a + b + 2.0) * (y - 1.0);
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * y + a * a - b * b);
    const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
    const double next = (c2 * p - c3 * p_prev) / c1;
    p_prev = p;
    p = next;
  }
  return p;
}

}  // namespace

double JacobiBasis::value(int n, double y) const { return recurrence_value(n, alpha_, beta_, y); }

std::vector<double> JacobiBasis::values(int n_max, double y) const {
  if (n_max < 0) throw DomainError("polynomial degree must be non-negative");
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  const double a = alpha_;
  const double b = beta_;
  out[0] = 1.0;
  if (n_max == 0) return out;
  out[1] = (a + 1.0) + 0.5 * (a + b + 2.0) * (y - 1.0);
  for (int k = 2; k <= n_max; ++k) {
    const double s = 2.0 * k + a + b;
    const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * y + a * a - b * b);
    const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
    out[k] = (c2 * out[k - 1] - c3 * out[k - 2]) / c1;
  }
  return out;
}

double JacobiBasis::derivative(int n, double y, int order) const {
  if (order < 0) throw DomainError("derivative order must be non-negative");
  if (order == 0) return value(n, y);
  if (order > n) return 0.0;
  double factor = 1.0;
  for (int i = 1; i <= order; ++i) factor *= 0.5 * (alpha_ + beta_ + n + i);
  return factor * recurrence_value(n - order, alpha_ + order, beta_ + order, y);
}

double JacobiBasis::norm_sq(int n) const {
  if (n < 0) throw DomainError("polynomial degree must be non-negative");
  const double a = alpha_;
  const double b = beta_;
  const double log2pow = (a + b + 1.0) * std::numbers::ln2;
  if (n == 0) {
    return std::exp(log2pow + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
  }
  const double log_h = log2pow + std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) -
                       std::log(2.0 * n + a + b + 1.0) - std::lgamma(n + 1.0) -
                       std::lgamma(n + a + b + 1.0);
  return std::exp(log_h);
}

double JacobiBasis::shifted_norm_sq(int n) const {
  return std::exp2(-alpha_ - beta_ - 1.0) * norm_sq(n);
}

double JacobiBasis::value_at_one(int n) const {
  double v = 1.0;
  for (int i = 1; i <= n; ++i) v *= (alpha_ + i) / i;
  return v;
}

double JacobiBasis::endpoint_max(int n) const {
  return std::max(std::abs(value_at_one(n)), std::abs(swapped().value_at_one(n)));
}

double JacobiBasis::weight(double y) const {
  return std::pow(1.0 - y, alpha_) * std::pow(1.0 + y, beta_);
}

double JacobiBasis::shifted_weight(double sigma) const {
  return std::pow(sigma, beta_) * std::pow(1.0 - sigma, alpha_);
}

double jacobi_poly(int n, const JacobiBasis& basis, double y) { return basis.value(n, y); }

double jacobi_poly_explicit_sum(int n, const JacobiBasis& basis, double y) {
  if (n < 0) throw DomainError("polynomial degree must be non-negative");
  if (n == 0) return 1.0;
  const double a = basis.alpha();
  const double b = basis.beta();
  const double z = 0.5 * (y - 1.0);
  double sum = 0.0;
  double binom = 1.0;
  for (int m = 0; m <= n; ++m) {
    // Gamma(a+b+n+m+1)/Gamma(a+b+n+1) and Gamma(a+n+1)/Gamma(a+m+1) as products.
    double rising = 1.0;
    for (int i = 1; i <= m; ++i) rising *= a + b + n + i;
    double upper = 1.0;
    for (int i = m + 1; i <= n; ++i) upper *= a + i;
    sum += binom * rising * upper * std::pow(z, m);
    binom = binom * (n - m) / (m + 1);
  }
  double factorial = 1.0;
  for (int i = 2; i <= n; ++i) factorial *= i;
  return sum / factorial;
}

double jacobi_norm_sq(int n, const JacobiBasis& basis) { return basis.norm_sq(n); }

double jacobi_operator_residual(int n, const JacobiBasis& basis, std::span<const double> grid) {
  const double a = basis.alpha();
  const double b = basis.beta();
  const double eig = n * (n + a + b + 1.0);
  double worst = 0.0;
  for (const double y : grid) {
    const double p = basis.value(n, y);
    const double dp = basis.derivative(n, y, 1);
    const double ddp = basis.derivative(n, y, 2);
    const double lhs = (1.0 - y * y) * ddp + (b - a - (a + b + 2.0) * y) * dp;
    worst = std::max(worst, std::abs(lhs + eig * p));
  }
  return worst;
}

double beta_function(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
  return acc;
}

QuadratureRule gauss_jacobi_rule(int m, const JacobiBasis& basis) {
  if (m < 1) throw DomainError("quadrature order must be positive");
  const double a = basis.alpha();
  const double b = basis.beta();

  // Monic three-term recurrence coefficients.
  Eigen::VectorXd diag(m);
  Eigen::VectorXd off(std::max(m - 1, 0));
  for (int k = 0; k < m; ++k) {
    const double s = 2.0 * k + a + b;
    diag(k) = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < m; ++k) {
    const double s = 2.0 * k + a + b;
    double v;
    if (k == 1) {
      v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    } else {
      v = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    }
    off(k - 1) = std::sqrt(v);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Gauss-Jacobi tridiagonal eigen-solve failed for m=" + std::to_string(m) +
                       ", alpha=" + std::to_string(a) + ", beta=" + std::to_string(b));
  }

  // Christoffel-number prefactor
  // 2^{a+b+1} Gamma(m+a+1) Gamma(m+b+1) / (Gamma(m+a+b+1) m!).
  const double log_pref = (a + b + 1.0) * std::numbers::ln2 + std::lgamma(m + a + 1.0) +
                          std::lgamma(m + b + 1.0) - std::lgamma(m + a + b + 1.0) -
                          std::lgamma(m + 1.0);
  const double pref = std::exp(log_pref);

  QuadratureRule rule;
  rule.order = m;
  rule.domain = QuadratureRule::Domain::kSymmetric;
  rule.nodes.resize(static_cast<std::size_t>(m));
  rule.weights.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    double x = solver.eigenvalues()(i);
    for (int it = 0; it < 8; ++it) {
      const double p = basis.value(m, x);
      const double dp = basis.derivative(m, x, 1);
      const double step = p / dp;
      const double next = std::clamp(x - step, -1.0, 1.0);
      if (!std::isfinite(next)) {
        throw NumericError("Newton polish diverged at Gauss-Jacobi node " + std::to_string(i));
      }
      x = next;
      if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(x))) break;
    }
    const double dp = basis.derivative(m, x, 1);
    rule.nodes[i] = x;
    rule.weights[i] = pref / ((1.0 - x * x) * dp * dp);
    if (!(rule.weights[i] > 0.0) || !std::isfinite(rule.weights[i])) {
      throw NumericError("non-positive Gauss-Jacobi weight at node " + std::to_string(i));
    }
  }
  return rule;
}

QuadratureRule gauss_jacobi_unit_rule(int m, const JacobiBasis& basis) {
  QuadratureRule rule = gauss_jacobi_rule(m, basis);
  const double scale = std::exp2(-basis.alpha() - basis.beta() - 1.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    rule.nodes[i] = 0.5 * (1.0 + rule.nodes[i]);
    rule.weights[i] *= scale;
  }
  rule.domain = QuadratureRule::Domain::kUnit;
  return rule;
}

}  // namespace nullstate
