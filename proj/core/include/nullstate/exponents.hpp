#pragma once

// Closed-form conformal weights, the +/- KPZ exponent pair, the Jacobi
// parameters derived from it and the separation eigenvalues of the
// two-interval operator.

#include <cstdint>

namespace nullstate {

/// SLE parameter, validated to lie in the open interval (0, 8).
class Kappa {
 public:
  explicit Kappa(double value);

  double value() const noexcept { return value_; }
  operator double() const noexcept { return value_; }

 private:
  double value_;
};

/// Lower edge of the admissible weights, -(kappa-4)^2 / (16 kappa). The KPZ
/// square root is real for d >= min_admissible_weight(kappa).
double min_admissible_weight(Kappa kappa);

/// Boundary s-leg weight theta_s = s(2s+4-kappa)/(2 kappa).
double leg_weight(int s, Kappa kappa);

/// The two indicial exponents of a fusion with a one-leg operator.
struct KpzPair {
  double delta_minus;
  double delta_plus;
  double gap;  ///< delta_plus - delta_minus
};

/// +/- KPZ map. At the discriminant boundary the double root is returned.
KpzPair kpz(double weight, Kappa kappa);

/// Residuals of the leg-weight KPZ identities for a given s >= 1.
struct LegIdentityResidual {
  double plus;          ///< Delta+(theta_s) - (-theta_1 - theta_s + theta_{s+1})
  double minus;         ///< Delta-(theta_s) - (-theta_1 - theta_s + theta_{s-1})
  double closed_plus;   ///< Delta+(theta_s) - 2s/kappa
  double closed_minus;  ///< Delta-(theta_s) - (1 - (2s+4)/kappa)
};

LegIdentityResidual kpz_leg_identity_residual(int s, Kappa kappa);

/// alpha = gap(h), beta = gap(theta_1). Both must be strictly positive.
struct JacobiParams {
  double alpha;
  double beta;
};

JacobiParams jacobi_params(double h, Kappa kappa);

struct Eigenvalue {
  std::int64_t n;
  double lambda;
};

/// lambda_n from
///   4 lambda_n = kappa n^2 + [8 - kappa + 2 kappa (D+(h) + D+(theta_1))] n
///                + 4 (D+(h) + D+(theta_1)) + 2 kappa D+(h) D+(theta_1).
Eigenvalue eigenvalue(std::int64_t n, double h, Kappa kappa);

}  // namespace nullstate
