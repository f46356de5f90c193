#include "nullstate_cli/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "nullstate/asymptotics.hpp"
#include "nullstate/errors.hpp"
#include "nullstate/green.hpp"
#include "nullstate/heat_kernel.hpp"
#include "nullstate/jacobi.hpp"
#include "nullstate/pde.hpp"

namespace nullstate::cli {

namespace {

// Runs body; any exception becomes a failed check under `name`.
void guarded(Report& report, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const TruncationError& e) {
    std::ostringstream os;
    os << e.what() << " [t=" << e.t() << ", tail=" << e.achieved_tail() << ']';
    report.fail(name, os.str());
  } catch (const std::exception& e) {
    report.fail(name, e.what());
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (n - 1);
  return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1));
  }
  return out;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (!(v[k] < v[k - 1])) return false;
  }
  return true;
}

KernelParams suite_kernel_params(const SuiteParams& p) {
  if (p.alpha.has_value() != p.beta.has_value()) throw UsageError("--alpha and --beta must be given together");
  if (p.alpha) return {*p.alpha, *p.beta};
  return kernel_params(p.h(), p.k());
}

}  // namespace

const std::vector<double>& kappa_grid() {
  static const std::vector<double> grid = {0.5, 2.0, 10.0 / 3.0, 4.0, 16.0 / 3.0, 6.0, 20.0 / 3.0, 7.9};
  return grid;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"exponents", "jacobi", "kernel", "green", "pde", "asymptotics"};
  return names;
}

void run_suite(const std::string& name, const SuiteParams& params, Report& report) {
  if (name == "all") {
    for (const auto& n : suite_names()) run_suite(n, params, report);
    return;
  }
  if (name == "exponents") return run_exponents_suite(params, report);
  if (name == "jacobi") return run_jacobi_suite(params, report);
  if (name == "kernel") return run_kernel_suite(params, report);
  if (name == "green") return run_green_suite(params, report);
  if (name == "pde") return run_pde_suite(params, report);
  if (name == "asymptotics") return run_asymptotics_suite(params, report);
  throw UsageError("unknown suite '" + name + "'");
}

void run_exponents_suite(const SuiteParams& p, Report& report) {
  const Kappa kappa = p.k();
  const double kv = kappa.value();
  const double theta1 = leg_weight(1, kappa) + p.inject("theta1");

  guarded(report, "exponents.leg_identities", [&] {
    double worst = 0.0;
    for (int s = 1; s <= 10; ++s) {
      const auto r = kpz_leg_identity_residual(s, kappa);
      const double dp = kpz(leg_weight(s, kappa), kappa).delta_plus + p.inject("delta_plus");
      worst = std::max({worst, std::abs(r.plus), std::abs(r.minus), std::abs(r.closed_minus),
                        std::abs(dp - 2.0 * s / kv)});
    }
    report.check_le("exponents.leg_identities", worst, 1e-12, "s = 1..10");
  });

  guarded(report, "exponents.vieta", [&] {
    double worst = 0.0;
    std::vector<double> weights = {theta1};
    for (int s = 2; s <= 5; ++s) weights.push_back(leg_weight(s, kappa));
    weights.push_back(p.h());
    for (const double d : weights) {
      const KpzPair e = kpz(d, kappa);
      worst = std::max({worst, std::abs(e.delta_plus * e.delta_minus + 4.0 * d / kv),
                        std::abs(e.delta_plus + e.delta_minus - (kv - 4.0) / kv)});
    }
    report.check_le("exponents.vieta", worst, 1e-12, "theta_1..theta_5 and h");
  });

  guarded(report, "exponents.lambda0", [&] {
    double worst = 0.0;
    const double dp1 = kpz(theta1, kappa).delta_plus;
    std::vector<double> hs;
    for (int s = 1; s <= 5; ++s) hs.push_back(leg_weight(s, kappa));
    hs.push_back(p.h());
    for (const double h : hs) {
      const double lambda0 = eigenvalue(0, h, kappa).lambda + p.inject("lambda0");
      worst = std::max(worst, std::abs(lambda0 - (2.0 * kpz(h, kappa).delta_plus + dp1)));
    }
    report.check_le("exponents.lambda0", worst, 1e-12, "lambda_0 = 2 D+(h) + D+(theta_1)");
  });

  guarded(report, "exponents.spectral_gap", [&] {
    const double h = p.h();
    const auto jp = jacobi_params(h, kappa);
    const double l0 = eigenvalue(0, h, kappa).lambda;
    double worst = 0.0;
    bool increasing = true;
    double prev = l0;
    for (int n = 1; n <= 50; ++n) {
      const double ln = eigenvalue(n, h, kappa).lambda;
      increasing = increasing && ln > prev;
      prev = ln;
      const double expected = 0.25 * kv * n * (n + jp.alpha + jp.beta + 1.0);
      worst = std::max(worst, std::abs(ln - l0 - expected) / expected);
    }
    report.check_le("exponents.spectral_gap", worst, 1e-12, "lambda_n - lambda_0 = (kappa/4) n(n+alpha+beta+1)");
    report.check_true("exponents.eigenvalues_increasing", increasing);
  });

  guarded(report, "exponents.minus_two_theta1", [&] {
    double worst = 0.0;
    for (const double kk : kappa_grid()) {
      const Kappa k(kk);
      worst = std::max(worst, std::abs(-2.0 * leg_weight(1, k) - kpz(leg_weight(1, k), k).delta_minus));
    }
    report.check_le("exponents.minus_two_theta1", worst, 1e-12, "-2 theta_1 = D-(theta_1) on the kappa grid");
  });
}

void run_jacobi_suite(const SuiteParams& p, Report& report) {
  const KernelParams kp = suite_kernel_params(p);
  const JacobiBasis basis(kp.alpha, kp.beta);
  report.set_param("jacobi.alpha", kp.alpha);
  report.set_param("jacobi.beta", kp.beta);

  guarded(report, "jacobi.ode_residual", [&] {
    const auto grid = linspace(-1.0, 1.0, 41);
    double worst = 0.0;
    for (int n = 0; n <= 20; ++n) {
      double pmax = 0.0;
      for (const double y : grid) pmax = std::max(pmax, std::abs(basis.value(n, y)));
      worst = std::max(worst, jacobi_operator_residual(n, basis, grid) / pmax);
    }
    report.check_le("jacobi.ode_residual", worst, 1e-9, "max_n<=20 residual / max|P_n|");
  });

  guarded(report, "jacobi.orthogonality", [&] {
    const QuadratureRule rule = gauss_jacobi_rule(40, basis);
    double worst_off = 0.0;
    double worst_norm = 0.0;
    for (int n = 0; n <= 20; ++n) {
      for (int m = 0; m <= n; ++m) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          acc += rule.weights[i] * basis.value(n, rule.nodes[i]) * basis.value(m, rule.nodes[i]);
        }
        const double scale = std::sqrt(basis.norm_sq(n) * basis.norm_sq(m));
        if (n == m) {
          worst_norm = std::max(worst_norm, std::abs(acc - basis.norm_sq(n)) / basis.norm_sq(n));
        } else {
          worst_off = std::max(worst_off, std::abs(acc) / scale);
        }
      }
    }
    report.check_le("jacobi.orthogonality", worst_off, 1e-10, "n != m <= 20, 40-point rule");
    report.check_le("jacobi.norms", worst_norm, 1e-10, "quadrature vs closed-form h_n");
  });

  guarded(report, "jacobi.recurrence_vs_sum", [&] {
    double worst = 0.0;
    for (int n = 0; n <= 8; ++n) {
      for (const double y : linspace(-1.0, 1.0, 21)) {
        const double a = basis.value(n, y);
        const double b = jacobi_poly_explicit_sum(n, basis, y);
        worst = std::max(worst, std::abs(a - b) / std::max(1.0, basis.endpoint_max(n)));
      }
    }
    report.check_le("jacobi.recurrence_vs_sum", worst, 1e-10, "n <= 8");
  });

  guarded(report, "jacobi.quadrature_mass", [&] {
    const QuadratureRule rule = gauss_jacobi_unit_rule(30, basis);
    double mass = 0.0;
    for (const double w : rule.weights) mass += w;
    const double exact = beta_function(kp.beta + 1.0, kp.alpha + 1.0);
    report.check_le("jacobi.quadrature_mass", std::abs(mass - exact) / exact, 1e-12, "int_0^1 w = B(beta+1, alpha+1)");
  });
}

void run_kernel_suite(const SuiteParams& p, Report& report) {
  const KernelParams kp = suite_kernel_params(p);
  report.set_param("kernel.alpha", kp.alpha);
  report.set_param("kernel.beta", kp.beta);
  report.set_param("kernel.t_min", p.t_min);
  const TruncationPolicy policy{};
  report.set_default("kernel.n_max", policy.n_max);
  report.set_default("kernel.tail_tol", policy.tail_tol);
  const HeatKernel kernel(kp, policy);
  const QuadratureRule rule = gauss_jacobi_unit_rule(800, kernel.basis());

  guarded(report, "kernel.mass", [&] {
    double worst = 0.0;
    std::size_t unresolved = 0;
    for (const double t : {p.t_min, 1e-2, 0.1, 1.0, 10.0}) {
      for (const double rho : {0.05, 0.5, 0.95}) {
        double mass = 0.0;
        double rounding = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          const KernelValue v = kernel.evaluate(rho, rule.nodes[i], t);
          mass += rule.weights[i] * v.value;
          rounding += rule.weights[i] * v.rounding_bound;
        }
        if (rounding > 1e-10) {
          ++unresolved;
          continue;
        }
        worst = std::max(worst, std::abs(mass - 1.0));
      }
    }
    report.check_le("kernel.mass", worst, 1e-9,
                    "t in {t_min, 1e-2, 0.1, 1, 10}; cases with rounding bound > 1e-10 skipped: " +
                        std::to_string(unresolved));
  });

  guarded(report, "kernel.symmetry", [&] {
    double worst = 0.0;
    std::size_t unresolved = 0;
    for (const double t : {1e-2, 0.1, 1.0}) {
      for (const double r : linspace(0.05, 0.95, 7)) {
        for (const double s : linspace(0.05, 0.95, 7)) {
          const KernelValue a = kernel.evaluate(r, s, t);
          const KernelValue b = kernel.evaluate(s, r, t);
          const double scale = std::max(1.0, std::abs(a.value));
          if (a.error_bound() > 1e-10 * scale || b.error_bound() > 1e-10 * scale) {
            ++unresolved;
            continue;
          }
          worst = std::max(worst, std::abs(a.value - b.value) / std::max(1.0, std::abs(a.value)));
        }
      }
    }
    report.check_le("kernel.symmetry", worst, 1e-8,
                    "points with error bound > 1e-10 relative skipped: " + std::to_string(unresolved));
  });

  guarded(report, "kernel.semigroup", [&] {
    double worst = 0.0;
    const double t1 = 0.05;
    const double t2 = 0.1;
    for (const double r : {0.2, 0.5, 0.8}) {
      for (const double s : {0.1, 0.4, 0.7}) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          acc += rule.weights[i] * kernel.evaluate(r, rule.nodes[i], t1).value *
                 kernel.evaluate(rule.nodes[i], s, t2).value;
        }
        const double direct = kernel.evaluate(r, s, t1 + t2).value;
        worst = std::max(worst, std::abs(acc - direct) / std::max(1.0, std::abs(direct)));
      }
    }
    report.check_le("kernel.semigroup", worst, 1e-8, "K(t1) * K(t2) = K(t1 + t2)");
  });

  guarded(report, "kernel.positivity", [&] {
    const auto thetas = linspace(0.0, M_PI, 21);
    const auto times = logspace(0.2, 10.0, 8);
    double kmin = INFINITY;
    std::size_t unresolved = 0;
    for (const double t : times) {
      for (const double th : thetas) {
        for (const double ph : thetas) {
          const double rho = std::pow(std::cos(0.5 * ph), 2);
          const double sigma = std::pow(std::cos(0.5 * th), 2);
          const KernelValue v = kernel.evaluate(rho, sigma, t);
          kmin = std::min(kmin, v.value);
          if (!(v.value > 100.0 * v.error_bound())) ++unresolved;
        }
      }
    }
    report.check_true("kernel.positivity", kmin > 0.0 && unresolved == 0,
                      "21x21x8 grid, t in [0.2, 10]: min K = " + fmt(kmin) + ", unresolved " +
                          std::to_string(unresolved));
  });

  guarded(report, "kernel.mode_decay", [&] {
    const double t = 0.1;
    const double ab1 = kp.alpha + p.inject("alpha") + kp.beta + 1.0;
    double worst = 0.0;
    for (int n = 0; n <= 6; ++n) {
      for (const double rho : {0.1, 0.5, 0.9}) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          acc += rule.weights[i] * kernel.evaluate(rho, rule.nodes[i], t).value *
                 kernel.basis().value(n, 2.0 * rule.nodes[i] - 1.0);
        }
        const double expected = std::exp(-t * n * (n + ab1)) * kernel.basis().value(n, 2.0 * rho - 1.0);
        worst = std::max(worst, std::abs(acc - expected) / std::max(1.0, kernel.basis().endpoint_max(n)));
      }
    }
    report.check_le("kernel.mode_decay", worst, 1e-9, "int K P_n w = exp(-t n(n+a+b+1)) P_n, n <= 6");
  });

  guarded(report, "kernel.reproducing", [&] {
    std::vector<double> errs;
    for (const double t : {1e-1, 1e-2, 1e-3}) {
      const double v = reproducing_integral(0.5, t, [](double s) { return s * (1.0 - s); }, kernel, rule);
      errs.push_back(std::abs(v - 0.25));
    }
    report.check_true("kernel.reproducing_monotone", strictly_decreasing(errs),
                      "errors " + fmt(errs[0]) + ", " + fmt(errs[1]) + ", " + fmt(errs[2]));
    report.check_le("kernel.reproducing_small_t", errs[2], 2e-2, "rho = 1/2, f = sigma(1-sigma), t = 1e-3");
  });

  guarded(report, "kernel.bounds", [&] {
    BoundScanOptions opt;
    opt.t_min = p.t_min;
    report.set_default("kernel.bounds.T", opt.T);
    report.set_default("kernel.bounds.c_lower", opt.c_lower);
    report.set_default("kernel.bounds.c_upper", opt.c_upper);
    const BoundScanResult r = bound_ratio_scan(kernel, opt);
    report.check_true("kernel.bounds_two_sided", r.two_sided(),
                      "lower min " + fmt(r.lower_min) + ", upper max " + fmt(r.upper_max) + ", late [" +
                          fmt(r.late_min) + ", " + fmt(r.late_max) + "], unresolved " +
                          std::to_string(r.unresolved));
  });
}

void run_green_suite(const SuiteParams& p, Report& report) {
  const Kappa kappa = p.k();
  const double kv = kappa.value();
  const double h = p.h();
  const OneIntervalGreen j(leg_weight(1, kappa), kappa);

  guarded(report, "green.j_diagonal", [&] {
    double worst = 0.0;
    for (const double eta : {0.5, 1.0, 3.0}) worst = std::max(worst, std::abs(j(eta, eta)));
    report.check_le("green.j_diagonal", worst, 0.0, "J(eta, eta) = 0 exactly");
  });

  guarded(report, "green.coincidence_slope", [&] {
    const double step = std::ldexp(1.0, -20);
    const double fd = (3.0 * j(1.0, 1.0) - 4.0 * j(1.0 - step, 1.0) + j(1.0 - 2.0 * step, 1.0)) / (2.0 * step);
    report.check_near("green.coincidence_slope", fd, -4.0 / kv, 1e-8, "dJ/d delta at delta = eta");
  });

  guarded(report, "green.annihilation", [&] {
    const auto grid = logspace(1e-6, 0.999, 40);
    report.check_le("green.annihilation", j_annihilation_residual(j, 1.0, grid), 1e-9);
  });

  guarded(report, "green.one_interval_representation", [&] {
    const double q = 3.0;
    const double a1 = j.first_order_coefficient();
    const double ap = 0.5 * kv * j.exponents().delta_plus + 1.0;
    const auto u = [&](double x) { return std::pow(x, q); };
    const auto du = [&](double x) { return q * std::pow(x, q - 1.0); };
    const auto src = [&](double x) { return (0.25 * kv * q * (q - 1.0) + a1 * q) * std::pow(x, q - 2.0); };
    const auto src_plus = [&](double x) { return (0.25 * kv * q * (q - 1.0) + ap * q) * std::pow(x, q - 2.0); };
    double worst = 0.0;
    for (const double d : {0.01, 0.2, 0.6}) {
      worst = std::max(worst, one_interval_representation_residual(j, u, du, src, d, 1.0));
      worst = std::max(worst, one_interval_plus_representation_residual(j, u, src_plus, d, 1.0));
    }
    report.check_le("green.one_interval_representation", worst, 1e-8, "u = delta^3, both rescalings");
  });

  const TwoIntervalGreen g(h, kappa);

  guarded(report, "green.causality", [&] {
    double worst = 0.0;
    for (const double eta : {0.25, 0.9, 1.0}) {
      for (const double s : {0.2, 0.6}) worst = std::max(worst, std::abs(g(0.4, 1.0, s, eta)));
    }
    report.check_le("green.causality", worst, 0.0, "G = 0 for eta <= epsilon");
  });

  guarded(report, "green.forms_agree", [&] {
    double worst = 0.0;
    for (const double rho : {0.1, 0.5, 0.9}) {
      for (const double s : {0.05, 0.3, 0.7, 0.95}) {
        for (const double q : {1.05, 1.5, 2.0, 4.0, 10.0}) {
          const double a = g(rho, 1.0, s, q);
          const double b = g.series(rho, 1.0, s, q);
          worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
        }
      }
    }
    report.check_le("green.forms_agree", worst, 1e-10, "factored kernel form vs direct eigen-series");
  });

  guarded(report, "green.adjoint_residual", [&] {
    double worst = 0.0;
    std::size_t unreliable = 0;
    for (const double rho : {0.2, 0.5, 0.8}) {
      for (const double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (const double eta : {1.5, 2.0, 4.0}) {
          const auto r = adjoint_residual(g, rho, 1.0, s, eta);
          if (!r.reliable) {
            ++unreliable;
            continue;
          }
          worst = std::max(worst, r.relative);
        }
      }
    }
    report.check_le("green.adjoint_residual", worst, 1e-4,
                    "eta > epsilon, relative to largest term; unreliable points " + std::to_string(unreliable));
  });

  guarded(report, "green.eigenfunctions", [&] {
    double worst = 0.0;
    for (int n = 0; n <= 5; ++n) {
      const SigmaEigenfunction e = g.eigenfunction(n);
      for (const double s : linspace(0.05, 0.95, 19)) {
        const double y = 2.0 * s - 1.0;
        const double pn = e.basis.value(n, y);
        const double dpn = 2.0 * e.basis.derivative(n, y, 1);
        const double ddpn = 4.0 * e.basis.derivative(n, y, 2);
        const double l = e.left_exponent;
        const double r = e.right_exponent;
        const double w = std::pow(s, l) * std::pow(1.0 - s, r);
        const double lw = l / s - r / (1.0 - s);
        const double dlw = -l / (s * s) - r / ((1.0 - s) * (1.0 - s));
        const double u = w * pn;
        const double du = w * (lw * pn + dpn);
        const double ddu = w * ((lw * lw + dlw) * pn + 2.0 * lw * dpn + ddpn);
        const double q = g.q_star(s, u, du, ddu);
        const double extra = (e.lambda - 1.0) / (s * (1.0 - s)) * u;
        const double scale = std::max({std::abs(0.25 * kv * ddu), std::abs(extra), std::abs(u / (s * s)),
                                       std::abs(du / (s * (1.0 - s)))});
        worst = std::max(worst, std::abs(q + extra) / scale);
      }
    }
    report.check_le("green.eigenfunctions", worst, 1e-9, "[Q* + (lambda_n - 1)/(sigma(1-sigma))] Sigma_n = 0, n <= 5");
  });

  guarded(report, "green.endpoint_exponents", [&] {
    const auto e = sigma_endpoint_exponents(g, 0.4, 1.0, 2.0);
    report.check_near("green.endpoint_left", e.left, g.delta_plus_theta1() + 4.0 / kv, 1e-2,
                      "sigma -> 0 decay exponent");
    report.check_near("green.endpoint_right", e.right, g.delta_plus_h() + 4.0 / kv, 1e-2,
                      "sigma -> 1 decay exponent");
  });

  guarded(report, "green.reproducing_limit", [&] {
    const double a = g.delta_plus_theta1();
    const double b = g.delta_plus_h();
    const auto f = [&](double s) { return std::pow(s, a + 1.0) * std::pow(1.0 - s, b + 1.0); };
    std::vector<double> etas;
    for (const double t : {1e-1, 1e-2, 1e-3}) etas.push_back(std::exp(4.0 * t / kv));
    const auto rec = reproducing_limit_check(g, 0.5, 1.0, f, etas, 400);
    std::vector<double> errs;
    for (const auto& smp : rec.samples) errs.push_back(smp.error);
    report.check_true("green.reproducing_monotone", strictly_decreasing(errs),
                      "errors " + fmt(errs[0]) + ", " + fmt(errs[1]) + ", " + fmt(errs[2]));
    const auto& last = rec.samples.back();
    const double decay = std::pow(1.0 / last.eta, g.lambda0());
    report.check_le("green.reproducing_small_t", std::abs(last.value / decay - rec.target) / std::abs(rec.target),
                    2e-2, "kernel part at t = 1e-3, decay factor (eps/eta)^lambda0 = " + fmt(decay) + " removed");
  });
}

void run_pde_suite(const SuiteParams& p, Report& report) {
  const Kappa kappa = p.k();
  const double kv = kappa.value();
  const double theta1 = leg_weight(1, kappa);
  const double h = p.h();
  report.set_seed(p.seed);
  report.set_param("pde.candidate", p.candidate);
  report.set_default("pde.sweep", p.sweep);
  report.set_default("pde.relative_step", StencilOptions{}.relative_step);

  guarded(report, "pde.sweep", [&] {
    CandidateFunction f;
    if (p.candidate == "n1") {
      f = builtin_power_product({{0, 1, -2.0 * (theta1 + p.inject("theta1"))}}, 2, "n1");
    } else {
      f = parse_candidate(p.candidate, {kappa, h});
    }
    const std::size_t m = f.arity == 0 ? 2 : f.arity;
    const SweepResult r = residual_sweep(f, m, WeightAssignment::uniform(), kappa, p.sweep, p.seed);
    report.check_le("pde.sweep." + f.name, r.worst, 1e-6,
                    std::to_string(m + 3) + " equations over " + std::to_string(r.configurations) +
                        " random configurations");
  });

  guarded(report, "pde.constant_not_solution", [&] {
    const CandidateFunction one = builtin_power_product({}, 2, "one");
    const PointConfig c({0.3, 1.7});
    const auto r = null_state_residual(one, c, WeightAssignment::uniform(), kappa, 0);
    const double expected = -theta1 / (1.4 * 1.4);
    report.check_le("pde.constant_not_solution", std::abs(r.residual - expected), 1e-12,
                    "residual of F = 1 is -theta_1/(x2-x1)^2");
  });

  guarded(report, "pde.anomalous_power", [&] {
    const CandidateFunction f = builtin_power_product({{0, 1, -2.0 * h}}, 2, "pair");
    const PointConfig c({-0.4, 0.9});
    const auto r = null_state_residual(f, c, WeightAssignment::anomalous(1, h), kappa, 0);
    const double d = 1.3;
    const double expected = std::pow(d, -2.0 * h) / (d * d) * (0.5 * kv * h * (2.0 * h + 1.0) - 3.0 * h);
    report.check_le("pde.anomalous_power", std::abs(r.residual - expected) / r.scale, 1e-7,
                    "(x2-x1)^{-2h}: F/D^2 [kappa h(2h+1)/2 - 3h]");
  });

  guarded(report, "pde.translation_identity", [&] {
    CandidateFunction f;
    f.name = "sum";
    f.arity = 2;
    f.field = [](std::span<const double> x) { return x[0] + x[1]; };
    const auto w = ward_residuals(f, PointConfig({0.5, 2.0}), WeightAssignment::uniform(), kappa);
    report.check_near("pde.translation_identity", w[0].residual, 2.0, 1e-9, "F = x1 + x2");
  });

  guarded(report, "pde.special_conformal_witness", [&] {
    const double h1 = theta1;
    const double h2 = h;
    const CandidateFunction f = builtin_power_product({{0, 1, -h1 - h2}}, 2, "two-point");
    const PointConfig c({0.2, 1.1});
    const std::vector<double> w = {h1, h2};
    const auto r = ward_residuals(f, c, w);
    const double expected = -(h1 - h2) * 0.9 * std::pow(0.9, -h1 - h2);
    report.check_le("pde.special_conformal_witness", std::abs(r[2].residual - expected) / r[2].scale, 1e-7,
                    "third identity residual = -(h1-h2)(x2-x1) F");
  });

  guarded(report, "pde.two_point_solvability", [&] {
    bool ok = two_point_ward_solvable(theta1, theta1).solvable && two_point_ward_solvable(5.0, 5.0).solvable;
    std::string detail = "diagonal solvable";
    for (int n = 2; n <= 5; ++n) {
      const double hn = leg_weight(2 * n - 1, kappa);
      const auto a = two_point_ward_solvable(theta1, hn);
      const auto b = two_point_ward_solvable(hn, theta1);
      ok = ok && !a.solvable && !b.solvable && a.witness == -b.witness && a.witness != 0.0;
    }
    detail += "; (theta_1, theta_{2N-1}) unsolvable for N = 2..5";
    report.check_true("pde.two_point_solvability", ok, detail);
  });

  guarded(report, "pde.stencil_validation", [&] {
    const CandidateFunction f = builtin_power_product({{0, 1, 0.7}, {1, 2, -1.3}, {0, 2, 0.4}}, 3, "stencil");
    const PointConfig c({0.0, 0.8, 2.1});
    const double step = StencilOptions{}.step(c);
    double worst = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      const double a1 = f.d1(c.coords(), k);
      const double a2 = f.d2(c.coords(), k);
      worst = std::max(worst, std::abs(fd_first(f, c.coords(), k, step) - a1) / std::abs(a1));
      worst = std::max(worst, std::abs(fd_second(f, c.coords(), k, step) - a2) / std::abs(a2));
    }
    report.check_le("pde.stencil_validation", worst, 1e-8, "finite differences vs analytic partials");
  });

  guarded(report, "pde.translation_invariance", [&] {
    const CandidateFunction f = builtin_n1(kappa);
    const PointConfig a({0.1, 0.9});
    const PointConfig b({3.8, 4.6});
    const auto ra = null_state_residual(f, a, WeightAssignment::uniform(), kappa, 0);
    const auto rb = null_state_residual(f, b, WeightAssignment::uniform(), kappa, 0);
    report.check_le("pde.translation_invariance", std::abs(ra.residual / ra.scale - rb.residual / rb.scale), 1e-6);
  });
}

void run_asymptotics_suite(const SuiteParams& p, Report& report) {
  const Kappa kappa = p.k();
  const double theta1 = leg_weight(1, kappa);
  const double h = p.h();
  const ManufacturedContext ctx{kappa, h};
  const KpzPair leg = kpz(theta1, kappa);
  const KpzPair anom = kpz(h, kappa);
  const CollapseSpec spec{1, WeightAssignment::uniform()};
  const PointConfig two = default_config(2);

  guarded(report, "asymptotics.n1_exponent", [&] {
    const auto e = collapse_exponent(builtin_n1(kappa), two, spec);
    report.check_near("asymptotics.n1_exponent", e.p_hat, -2.0 * theta1, 1e-3, "fitted collapse exponent");
  });

  guarded(report, "asymptotics.pure_powers", [&] {
    double worst = 0.0;
    for (const double q : linspace(-3.0, 3.0, 13)) {
      const auto e = collapse_exponent(builtin_power_product({{0, 1, q}}, 2), two, spec);
      worst = std::max(worst, std::abs(e.p_hat - q) - 3.0 * e.std_error);
    }
    report.check_le("asymptotics.pure_powers", worst, 1e-12, "|p_hat - p| - 3 stderr, p in [-3, 3]");
  });

  guarded(report, "asymptotics.two_leg_classification", [&] {
    bool ok = true;
    std::string bad;
    for (const double gamma : {0.05, 0.1, 0.5, -0.05, -0.1, -0.5, 0.0}) {
      const auto f = builtin_power_product({{0, 1, leg.delta_minus + gamma}}, 2);
      const auto r = two_leg_test(f, two, spec, kappa);
      const auto want = gamma >= 0.05 ? TwoLegVerdict::kTwoLeg : TwoLegVerdict::kNotTwoLeg;
      if (r.verdict != want) {
        ok = false;
        bad += " gamma=" + fmt(gamma);
      }
    }
    const auto named = [&](const CandidateFunction& f, TwoLegVerdict want) {
      if (two_leg_test(f, two, spec, kappa).verdict != want) {
        ok = false;
        bad += " " + f.name;
      }
    };
    named(manufactured("two-leg", ctx), TwoLegVerdict::kTwoLeg);
    named(manufactured("identity", ctx), TwoLegVerdict::kNotTwoLeg);
    named(builtin_n1(kappa), TwoLegVerdict::kNotTwoLeg);
    report.check_true("asymptotics.two_leg_classification", ok,
                      ok ? "gamma = +-0.05, +-0.1, +-0.5, 0 and named fields" : "misclassified:" + bad);
  });

  guarded(report, "asymptotics.ell_limits", [&] {
    const auto n1 = ell_limit(builtin_n1(kappa), two, spec, kappa);
    double e1 = 0.0;
    for (const double v : n1.limits) e1 = std::max(e1, std::abs(v - 1.0));
    report.check_le("asymptotics.ell_n1", e1, 1e-8, "limit of delta^{-D-} F is 1");
    report.check_true("asymptotics.ell_n1_uniform", n1.converged && n1.uniform);

    const auto pre = ell_limit(manufactured("prefactor", ctx), two, spec, kappa);
    double e2 = 0.0;
    for (std::size_t k = 0; k < pre.slice.size(); ++k) {
      e2 = std::max(e2, std::abs(pre.limits[k] - (pre.slice[k] * pre.slice[k] + 1.0)));
    }
    report.check_le("asymptotics.ell_prefactor", e2, 1e-4, "slice equals x1^2 + 1");

    const auto tl = ell_limit(manufactured("two-leg", ctx), two, spec, kappa);
    double e3 = 0.0;
    for (const double v : tl.limits) e3 = std::max(e3, std::abs(v));
    report.check_le("asymptotics.ell_two_leg", e3, 1e-8, "limit vanishes");

    const auto est = collapse_exponent(builtin_n1(kappa), two, spec);
    const bool at_minus = std::abs(est.p_hat - leg.delta_minus) <= 3.0 * est.std_error + 1e-3;
    report.check_true("asymptotics.ell_consistency", !at_minus || (n1.converged && e1 < 0.5),
                      "p_hat at D- implies a finite nonzero limit");
  });

  guarded(report, "asymptotics.decomposition", [&] {
    if (!(leg.gap > 0.05)) {
      report.note("decomposition fit skipped: gap(theta_1) = " + fmt(leg.gap) + " <= 0.05");
      return;
    }
    const auto d = one_interval_decomposition_fit(manufactured("decomposition", ctx), two, spec, kappa);
    report.check_le("asymptotics.decomposition", std::max(std::abs(d.a - 2.0), std::abs(d.b - 3.0)), 1e-6,
                    "(A, B) = (2, 3)");
    const auto n1 = one_interval_decomposition_fit(builtin_n1(kappa), two, spec, kappa);
    report.check_le("asymptotics.decomposition_n1", std::max(std::abs(n1.a - 1.0), std::abs(n1.b)), 1e-6,
                    "(A, B) = (1, 0)");
    const auto tl = one_interval_decomposition_fit(manufactured("two-leg", ctx), two, spec, kappa);
    report.check_true("asymptotics.decomposition_two_leg", std::abs(tl.a) <= 1e-6 && std::abs(tl.b) > 1e-3,
                      "(A, B) = (" + fmt(tl.a) + ", " + fmt(tl.b) + ")");
  });

  const std::size_t iota_adj = 2;
  guarded(report, "asymptotics.adjacent_pair", [&] {
    const auto norm = adjacent_pair_bound_scan(manufactured("normalized", ctx), default_config(3), iota_adj, kappa, h);
    report.check_le("asymptotics.adjacent_normalized", norm.ratio_spread, 1e-10, "normalized ratio constant");
    report.check_near("asymptotics.adjacent_p0", norm.p0, -anom.delta_plus, 1e-6, "p0 = -D+(h)");
    const auto l0 = adjacent_pair_bound_scan(manufactured("lambda0", ctx), default_config(3), iota_adj, kappa, h);
    report.check_near("asymptotics.adjacent_lambda0", l0.epsilon_exponent_excess, anom.delta_plus, 1e-6,
                      "eps exponent - D+(theta_1) - D+(h) = D+(h)");
    const auto weak = adjacent_pair_bound_scan(manufactured("weakened", ctx), default_config(3), iota_adj, kappa, h);
    report.check_true("asymptotics.adjacent_weakened_divergent", weak.divergent,
                      "eps slope " + fmt(weak.epsilon_slope));
  });

  guarded(report, "asymptotics.far_pair", [&] {
    const PointConfig four = default_config(4);
    const auto bounded = far_pair_bound_scan(manufactured("bounded", ctx), four, 1, 3, kappa, h);
    report.check_true("asymptotics.far_bounded", !bounded.divergent,
                      "sup ratio " + fmt(bounded.sup_ratio) + ", slopes " + fmt(bounded.delta_slope) + ", " +
                          fmt(bounded.epsilon_slope));
    const auto tl = far_pair_bound_scan(manufactured("far-two-leg", ctx), four, 1, 3, kappa, h);
    report.check_true("asymptotics.far_two_leg", !tl.divergent, "sup ratio " + fmt(tl.sup_ratio));
    const auto bad = far_pair_bound_scan(manufactured("violating", ctx), four, 1, 3, kappa, h);
    report.check_true("asymptotics.far_violating_divergent", bad.divergent,
                      "delta slope " + fmt(bad.delta_slope) + " (expected " + fmt(-leg.gap) + ")");
  });
}

}  // namespace nullstate::cli
