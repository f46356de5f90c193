#include "nullstate/exponents.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nullstate/errors.hpp"

namespace nullstate {

Kappa::Kappa(double value) : value_(value) {
  if (!(value > 0.0 && value < 8.0)) {
    throw DomainError("kappa must lie in (0, 8), got " + std::to_string(value));
  }
}

double min_admissible_weight(Kappa kappa) {
  const double k = kappa.value();
  return -(k - 4.0) * (k - 4.0) / (16.0 * k);
}

double leg_weight(int s, Kappa kappa) {
  if (s < 0) {
    throw DomainError("leg count s must be non-negative, got " + std::to_string(s));
  }
  const double k = kappa.value();
  if (s == 0) return 0.0;
  return s * (2.0 * s + 4.0 - k) / (2.0 * k);
}

KpzPair kpz(double weight, Kappa kappa) {
  const double k = kappa.value();
  const double a = (k - 4.0) * (k - 4.0);
  const double b = 16.0 * k * weight;
  double disc = a + b;
  if (disc < 0.0) {
    // Rounding at the double-root boundary d = -(k-4)^2/16k.
    const double slack = 64.0 * std::numeric_limits<double>::epsilon() * (a + std::abs(b));
    if (disc < -slack) {
      throw DomainError("KPZ discriminant is negative for weight " + std::to_string(weight) +
                        " at kappa " + std::to_string(k));
    }
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  KpzPair out{};
  out.delta_minus = (k - 4.0 - root) / (2.0 * k);
  out.delta_plus = (k - 4.0 + root) / (2.0 * k);
  out.gap = root / k;
  return out;
}

LegIdentityResidual kpz_leg_identity_residual(int s, Kappa kappa) {
  if (s < 1) {
    throw DomainError("leg identity needs s >= 1, got " + std::to_string(s));
  }
  const double k = kappa.value();
  const double t1 = leg_weight(1, kappa);
  const double ts = leg_weight(s, kappa);
  const KpzPair p = kpz(ts, kappa);
  LegIdentityResidual r{};
  r.plus = p.delta_plus - (-t1 - ts + leg_weight(s + 1, kappa));
  r.minus = p.delta_minus - (-t1 - ts + leg_weight(s - 1, kappa));
  r.closed_plus = p.delta_plus - 2.0 * s / k;
  r.closed_minus = p.delta_minus - (1.0 - (2.0 * s + 4.0) / k);
  return r;
}

JacobiParams jacobi_params(double h, Kappa kappa) {
  const JacobiParams out{kpz(h, kappa).gap, kpz(leg_weight(1, kappa), kappa).gap};
  if (!(out.alpha > 0.0) || !(out.beta > 0.0)) {
    throw InvariantError("Jacobi parameters must be positive (alpha=" + std::to_string(out.alpha) +
                         ", beta=" + std::to_string(out.beta) + ")");
  }
  return out;
}

Eigenvalue eigenvalue(std::int64_t n, double h, Kappa kappa) {
  if (n < 0) {
    throw DomainError("eigenvalue index must be non-negative");
  }
  const double k = kappa.value();
  const double dh = kpz(h, kappa).delta_plus;
  const double d1 = kpz(leg_weight(1, kappa), kappa).delta_plus;
  const double nn = static_cast<double>(n);
  const double four_lambda = k * nn * nn + (8.0 - k + 2.0 * k * (dh + d1)) * nn +
                             4.0 * (dh + d1) + 2.0 * k * dh * d1;
  return {n, 0.25 * four_lambda};
}

}  // namespace nullstate
