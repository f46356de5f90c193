#include "nullstate/green.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>

#include "nullstate/errors.hpp"

namespace nullstate {

OneIntervalGreen::OneIntervalGreen(double weight, Kappa kappa)
    : weight_(weight), kappa_(kappa), exponents_(kpz(weight, kappa)) {
  if (!(exponents_.gap > 0.0)) {
    throw InvariantError("one-interval Green function needs a positive exponent gap");
  }
}

double OneIntervalGreen::operator()(double delta, double eta) const {
  if (!(delta > 0.0) || !(eta > 0.0)) throw DomainError("J needs delta, eta > 0");
  if (delta >= eta) return 0.0;
  const double g = exponents_.gap;
  const double r = delta / eta;
  const double log_r = r < 0.5 ? std::log(r) : std::log1p((delta - eta) / eta);
  return -(4.0 / kappa_.value()) / g * eta * std::expm1(g * log_r);
}

double OneIntervalGreen::d_delta(double delta, double eta) const {
  if (delta >= eta) return 0.0;
  const double g = exponents_.gap;
  return -(4.0 / kappa_.value()) * std::pow(delta / eta, g - 1.0);
}

double OneIntervalGreen::d2_delta(double delta, double eta) const {
  if (delta >= eta) return 0.0;
  const double g = exponents_.gap;
  return -(4.0 / kappa_.value()) * (g - 1.0) / eta * std::pow(delta / eta, g - 2.0);
}

double j_kernel(double delta, double eta, const OneIntervalGreen& g) { return g(delta, eta); }

double j_annihilation_residual(const OneIntervalGreen& g, double eta, std::span<const double> delta_grid) {
  const double a2 = g.second_order_coefficient();
  const double a1 = g.first_order_coefficient();
  double worst = 0.0;
  for (const double d : delta_grid) {
    if (!(d > 0.0) || !(d < eta)) {
      throw PreconditionError("annihilation grid must lie strictly inside (0, eta)");
    }
    const double t2 = a2 * g.d2_delta(d, eta);
    const double t1 = a1 * g.d_delta(d, eta) / d;
    const double scale = std::max(std::abs(t2), std::abs(t1));
    if (scale > 0.0) worst = std::max(worst, std::abs(t2 + t1) / scale);
  }
  return worst;
}

namespace {

// Composite Gauss-Legendre on [lo, hi] with geometrically graded panels,
// refined toward lo.
double integrate_legendre(const std::function<double(double)>& f, double lo, double hi, int panels = 24) {
  static const QuadratureRule rule = gauss_jacobi_rule(20, JacobiBasis(0.0, 0.0));
  const double ratio = std::pow(hi / lo, 1.0 / panels);
  double acc = 0.0;
  double a = lo;
  for (int p = 0; p < panels; ++p) {
    const double b = p + 1 == panels ? hi : a * ratio;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double part = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) part += rule.weights[i] * f(mid + half * rule.nodes[i]);
    acc += half * part;
    a = b;
  }
  return acc;
}

// |lhs - sum(terms)| relative to the largest single piece.
double relative_mismatch(double lhs, std::initializer_list<double> terms) {
  double sum = 0.0;
  double scale = std::abs(lhs);
  for (const double t : terms) {
    sum += t;
    scale = std::max(scale, std::abs(t));
  }
  return scale > 0.0 ? std::abs(lhs - sum) / scale : 0.0;
}

}  // namespace

double one_interval_representation_residual(const OneIntervalGreen& g,
                                            const std::function<double(double)>& u,
                                            const std::function<double(double)>& du,
                                            const std::function<double(double)>& source,
                                            double delta, double b) {
  if (!(delta > 0.0) || !(delta < b)) throw PreconditionError("need 0 < delta < b");
  const double integral =
      integrate_legendre([&](double eta) { return g(delta, eta) * source(eta); }, delta, b);
  return relative_mismatch(u(delta), {u(b), -0.25 * g.kappa().value() * g(delta, b) * du(b), integral});
}

double one_interval_plus_representation_residual(const OneIntervalGreen& g,
                                                 const std::function<double(double)>& e,
                                                 const std::function<double(double)>& source,
                                                 double delta, double b) {
  if (!(delta > 0.0) || !(delta < b)) throw PreconditionError("need 0 < delta < b");
  const double gap = g.gap();
  // int_0^s x^{gap+1} source(x) dx = s^{gap+2} int_0^1 y^{gap+1} source(s y) dy
  const QuadratureRule inner = gauss_jacobi_unit_rule(40, JacobiBasis(0.0, gap + 1.0));
  const auto derivative = [&](double s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < inner.nodes.size(); ++i) acc += inner.weights[i] * source(s * inner.nodes[i]);
    // (1/s) s^{-gap} s^{gap+2} acc
    return s * acc;
  };
  const double integral = integrate_legendre(derivative, delta, b);
  return relative_mismatch(e(delta), {e(b), -(4.0 / g.kappa().value()) * integral});
}

double SigmaEigenfunction::operator()(double sigma) const {
  return std::pow(sigma, left_exponent) * std::pow(1.0 - sigma, right_exponent) *
         basis.value(n, 2.0 * sigma - 1.0);
}

TwoIntervalGreen::TwoIntervalGreen(double h, Kappa kappa, TruncationPolicy policy)
    : h_(h),
      kappa_(kappa),
      dp_theta1_(kpz(leg_weight(1, kappa), kappa).delta_plus),
      dp_h_(kpz(h, kappa).delta_plus),
      lambda0_(eigenvalue(0, h, kappa).lambda),
      kernel_(kernel_params(h, kappa), policy) {}

namespace {

void check_open_unit(double v, const char* name) {
  if (!(v > 0.0) || !(v < 1.0)) {
    throw DomainError(std::string(name) + " must lie in (0, 1), got " + std::to_string(v));
  }
}

}  // namespace

double TwoIntervalGreen::operator()(double rho, double epsilon, double sigma, double eta) const {
  check_open_unit(rho, "rho");
  check_open_unit(sigma, "sigma");
  if (!(epsilon > 0.0) || !(eta > 0.0)) throw DomainError("G needs epsilon, eta > 0");
  if (eta <= epsilon) return 0.0;
  const double prefactor = std::pow(sigma, beta() + 1.0 - dp_theta1_) *
                           std::pow(1.0 - sigma, alpha() + 1.0 - dp_h_) * std::pow(rho, dp_theta1_) *
                           std::pow(1.0 - rho, dp_h_);
  const double t = kernel_time(eta / epsilon, kappa_);
  return -prefactor * eta * std::pow(epsilon / eta, lambda0_) * kernel_.evaluate(rho, sigma, t).value;
}

double TwoIntervalGreen::series(double rho, double epsilon, double sigma, double eta) const {
  check_open_unit(rho, "rho");
  check_open_unit(sigma, "sigma");
  if (!(epsilon > 0.0) || !(eta > 0.0)) throw DomainError("G needs epsilon, eta > 0");
  if (eta <= epsilon) return 0.0;
  const double ratio = epsilon / eta;
  const int terms = kernel_.truncation(kernel_time(eta / epsilon, kappa_)).first;
  const JacobiBasis& basis = kernel_.basis();
  double sum = 0.0;
  for (int n = 0; n < terms; ++n) {
    const double lam = eigenvalue(n, h_, kappa_).lambda;
    sum += std::pow(ratio, lam) * basis.value(n, 2.0 * rho - 1.0) * basis.value(n, 2.0 * sigma - 1.0) /
           basis.shifted_norm_sq(n);
  }
  const double prefactor = std::pow(sigma, beta() + 1.0) * std::pow(1.0 - sigma, alpha() + 1.0) *
                           std::pow(rho / sigma, dp_theta1_) *
                           std::pow((1.0 - rho) / (1.0 - sigma), dp_h_);
  return -prefactor * eta * sum;
}

SigmaEigenfunction TwoIntervalGreen::eigenfunction(int n) const {
  const double four_over_k = 4.0 / kappa_.value();
  return {n, eigenvalue(n, h_, kappa_).lambda, dp_theta1_ + four_over_k, dp_h_ + four_over_k,
          kernel_.basis()};
}

double TwoIntervalGreen::q_star(double sigma, double u, double du, double ddu) const {
  const double theta1 = leg_weight(1, kappa_);
  const double om = 1.0 - sigma;
  return 0.25 * kappa_.value() * ddu - (1.0 - 2.0 * sigma) / (sigma * om) * du +
         ((1.0 - theta1) / (sigma * sigma) + (1.0 - h_) / (om * om) + 1.0 / sigma + 1.0 / om) * u;
}

double g_kernel(double rho, double epsilon, double sigma, double eta, const TwoIntervalGreen& g) {
  return g(rho, epsilon, sigma, eta);
}

ResidualReport adjoint_residual(const TwoIntervalGreen& g,
                                const std::function<double(double, double)>& field, double sigma,
                                double eta, double eta_floor) {
  check_open_unit(sigma, "sigma");
  if (!(eta > eta_floor)) throw PreconditionError("adjoint residual needs eta strictly above the source");
  const double dist = std::min(sigma, 1.0 - sigma);
  const double hs = std::min(1e-3, dist / 10.0);
  const double he = std::min(1e-3 * eta, (eta - eta_floor) / 10.0);

  const double u = field(sigma, eta);
  const auto d1 = [&](double step) {
    return (field(sigma + step, eta) - field(sigma - step, eta)) / (2.0 * step);
  };
  const auto d2 = [&](double step) {
    return (field(sigma + step, eta) - 2.0 * u + field(sigma - step, eta)) / (step * step);
  };
  const auto de = [&](double step) {
    return (field(sigma, eta + step) - field(sigma, eta - step)) / (2.0 * step);
  };
  const double du = (4.0 * d1(0.5 * hs) - d1(hs)) / 3.0;
  const double ddu = (4.0 * d2(0.5 * hs) - d2(hs)) / 3.0;
  const double deta = (4.0 * de(0.5 * he) - de(he)) / 3.0;

  const double theta1 = leg_weight(1, g.kappa());
  const double om = 1.0 - sigma;
  const double terms[] = {
      0.25 * g.kappa().value() * ddu,
      -(1.0 - 2.0 * sigma) / (sigma * om) * du,
      (1.0 - theta1) / (sigma * sigma) * u,
      (1.0 - g.h()) / (om * om) * u,
      (1.0 / sigma + 1.0 / om) * u,
      -eta * deta / (sigma * om),
  };
  double sum = 0.0;
  double scale = 0.0;
  for (const double t : terms) {
    sum += t;
    scale = std::max(scale, std::abs(t));
  }
  const double inv_eta2 = 1.0 / (eta * eta);
  ResidualReport out{};
  out.residual = sum * inv_eta2;
  out.scale = std::max(scale * inv_eta2, std::numeric_limits<double>::min());
  out.relative = std::abs(out.residual) / out.scale;
  out.step = hs;
  out.reliable = hs >= 1e-5;
  return out;
}

ResidualReport adjoint_residual(const TwoIntervalGreen& g, double rho, double epsilon, double sigma,
                                double eta) {
  if (!(eta > epsilon)) throw PreconditionError("adjoint residual needs eta > epsilon");
  return adjoint_residual(
      g, [&](double s, double e) { return g(rho, epsilon, s, e); }, sigma, eta, epsilon);
}

EndpointExponents sigma_endpoint_exponents(const TwoIntervalGreen& g, double rho, double epsilon, double eta) {
  const auto slope = [&](bool left) {
    constexpr int n = 17;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int k = 0; k < n; ++k) {
      const double d = std::pow(10.0, -4.0 - 4.0 * k / (n - 1));
      const double s = left ? d : 1.0 - d;
      const double x = std::log(left ? s : 1.0 - s);
      const double y = std::log(std::abs(g(rho, epsilon, s, eta)));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  return {slope(true), slope(false)};
}

ReproducingRecord reproducing_limit_check(const TwoIntervalGreen& g, double rho, double epsilon,
                                          const std::function<double(double)>& f,
                                          std::span<const double> eta_sequence, int quadrature_points) {
  check_open_unit(rho, "rho");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const double a = g.delta_plus_theta1();
  const double b = g.delta_plus_h();

  // f sigma^{-a} (1-sigma)^{-b} must stay bounded at both ends.
  const auto reduced_left = [&](double s) { return f(s) * std::pow(s, -a); };
  const auto reduced_right = [&](double s) { return f(1.0 - s) * std::pow(s, -b); };
  for (const auto& reduced : {std::function<double(double)>(reduced_left),
                              std::function<double(double)>(reduced_right)}) {
    const double near = std::abs(reduced(1e-12));
    const double far = std::abs(reduced(1e-6));
    if (!std::isfinite(near) || near > 10.0 * std::max(far, 1.0)) {
      throw PreconditionError(
          "test function is inadmissible: f sigma^{-D+(theta1)} (1-sigma)^{-D+(h)} diverges at an endpoint");
    }
  }

  const QuadratureRule rule = gauss_jacobi_unit_rule(quadrature_points, g.kernel().basis());
  ReproducingRecord record{f(rho), {}};
  for (const double eta : eta_sequence) {
    if (!(eta > epsilon)) throw PreconditionError("eta sequence must stay above epsilon");
    const double t = kernel_time(eta / epsilon, g.kappa());
    const double decay = std::pow(epsilon / eta, g.lambda0());
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double s = rule.nodes[i];
      const double k = g.kernel().evaluate(rho, s, t).value;
      acc += rule.weights[i] * std::pow(rho / s, a) * std::pow((1.0 - rho) / (1.0 - s), b) * k * f(s);
    }
    const double value = decay * acc;
    record.samples.push_back({eta, t, value, std::abs(value - record.target)});
  }
  return record;
}

}  // namespace nullstate
