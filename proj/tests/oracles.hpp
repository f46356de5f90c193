#pragma once
// Reference computations written directly from the defining formulas,
// sharing no code with the library.

#include <cmath>
#include <functional>
#include <utility>

namespace oracle {

inline double theta(int s, double kappa) { return s * (2.0 * s + 4.0 - kappa) / (2.0 * kappa); }

/// Roots of kappa D^2 - (kappa - 4) D - 4 d = 0, ordered (minus, plus).
inline std::pair<double, double> kpz_roots(double d, double kappa) {
  const double b = -(kappa - 4.0);
  const double c = -4.0 * d;
  const double disc = b * b - 4.0 * kappa * c;
  const double r = std::sqrt(disc);
  return {(-b - r) / (2.0 * kappa), (-b + r) / (2.0 * kappa)};
}

inline double binom(double top, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= (top - i) / (i + 1);
  return out;
}

/// P_n^{(a,b)}(y) = sum_k C(n+a, n-k) C(n+b, k) ((y-1)/2)^k ((y+1)/2)^{n-k}.
inline double jacobi(int n, double a, double b, double y) {
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    s += binom(n + a, n - k) * binom(n + b, k) * std::pow((y - 1.0) / 2.0, k) * std::pow((y + 1.0) / 2.0, n - k);
  }
  return s;
}

/// Composite Simpson on [lo, hi] with an even panel count.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int panels) {
  const double h = (hi - lo) / panels;
  double s = f(lo) + f(hi);
  for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * f(lo + k * h);
  return s * h / 3.0;
}

}  // namespace oracle
