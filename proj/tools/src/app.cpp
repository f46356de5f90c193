#include "nullstate_cli/app.hpp"

#include <CLI11.hpp>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "nullstate/errors.hpp"
#include "nullstate/exponents.hpp"
#include "nullstate/parallel.hpp"
#include "nullstate_cli/report.hpp"
#include "nullstate_cli/scans.hpp"
#include "nullstate_cli/suites.hpp"

namespace nullstate::cli {

namespace {

constexpr const char* kCandidateHelp =
    "candidate field: n1 | power:<i,j=mu;...> (1-based, M = largest index) | manufactured:<shape> "
    "with shape in {normalized, lambda0, weakened, bounded, far-two-leg, violating, two-leg, identity, "
    "decomposition, prefactor}";

int emit(Report& report, const std::string& format, std::ostream& out) {
  report.finish();
  if (format == "json") {
    out << report.to_json().dump(2) << '\n';
  } else {
    report.print_text(out);
  }
  return report.all_pass() ? kExitPass : kExitFail;
}

int run_exponents(const std::vector<double>& kappas, int smax, const std::string& format, std::ostream& out) {
  std::vector<Kappa> ks;
  for (const double k : kappas) ks.emplace_back(k);
  if (smax < 0) throw UsageError("--smax must be non-negative");

  Report report("exponents");
  report.set_param("kappa", kappas);
  report.set_param("smax", smax);
  nlohmann::json rows = nlohmann::json::array();
  for (const Kappa k : ks) {
    const double dp1 = kpz(leg_weight(1, k), k).delta_plus;
    double worst = 0.0;
    for (int s = 0; s <= smax; ++s) {
      const double theta = leg_weight(s, k);
      const KpzPair e = kpz(theta, k);
      nlohmann::json row = {{"kappa", k.value()},  {"s", s},
                            {"theta", theta},      {"delta_minus", e.delta_minus},
                            {"delta_plus", e.delta_plus}, {"gap", e.gap}};
      if (e.gap > 0.0) {
        const double lambda0 = eigenvalue(0, theta, k).lambda;
        row["lambda0"] = lambda0;
        worst = std::max(worst, std::abs(lambda0 - 2.0 * e.delta_plus - dp1));
      }
      if (s >= 1) {
        const auto r = kpz_leg_identity_residual(s, k);
        row["residual_plus"] = r.plus;
        row["residual_minus"] = r.minus;
        worst = std::max({worst, std::abs(r.plus), std::abs(r.minus), std::abs(r.closed_plus),
                          std::abs(r.closed_minus)});
      }
      rows.push_back(row);
    }
    std::ostringstream name;
    name << "exponents.identities.kappa=" << k.value();
    report.check_le(name.str(), worst, 1e-12);
  }
  report.set_extra("rows", rows);
  report.finish();

  if (format == "json") {
    out << report.to_json().dump(2) << '\n';
  } else if (format == "csv") {
    out << "kappa,s,theta,delta_minus,delta_plus,gap,lambda0,residual_plus,residual_minus\n" << std::setprecision(17);
    for (const auto& r : rows) {
      out << r["kappa"].get<double>() << ',' << r["s"].get<int>() << ',' << r["theta"].get<double>() << ','
          << r["delta_minus"].get<double>() << ',' << r["delta_plus"].get<double>() << ',' << r["gap"].get<double>()
          << ',' << (r.contains("lambda0") ? r["lambda0"].dump() : "") << ','
          << (r.contains("residual_plus") ? r["residual_plus"].dump() : "") << ','
          << (r.contains("residual_minus") ? r["residual_minus"].dump() : "") << '\n';
    }
  } else {
    out << std::setw(8) << "kappa" << std::setw(4) << "s" << std::setw(14) << "theta_s" << std::setw(14) << "D-"
        << std::setw(14) << "D+" << std::setw(14) << "gap" << std::setw(14) << "lambda0" << '\n';
    out << std::setprecision(8);
    for (const auto& r : rows) {
      out << std::setw(8) << r["kappa"].get<double>() << std::setw(4) << r["s"].get<int>() << std::setw(14)
          << r["theta"].get<double>() << std::setw(14) << r["delta_minus"].get<double>() << std::setw(14)
          << r["delta_plus"].get<double>() << std::setw(14) << r["gap"].get<double>() << std::setw(14)
          << (r.contains("lambda0") ? r["lambda0"].get<double>() : NAN) << '\n';
    }
    for (const auto& c : report.checks()) {
      out << (c.pass ? "PASS " : "FAIL ") << c.name << "  max residual " << c.value << '\n';
    }
  }
  return report.all_pass() ? kExitPass : kExitFail;
}

}  // namespace

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks for the null-state PDE system, Jacobi heat kernels and Green functions"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  app.footer("Environment: NULLSTATE_THREADS overrides the worker count. Exit codes: 0 pass, 1 check failure, 2 usage error.");

  std::string format = "text";
  const auto add_format = [&](CLI::App* sub, std::vector<std::string> choices) {
    sub->add_option("--format", format, "output format")->check(CLI::IsMember(choices))->capture_default_str();
  };

  auto* exp = app.add_subcommand("exponents", "table of theta_s, D+-, gap, lambda_0 and identity residuals");
  std::vector<double> kappas;
  int smax = 5;
  exp->add_option("--kappa", kappas, "one or more kappa values in (0, 8)")->required();
  exp->add_option("--smax", smax, "largest s")->capture_default_str();
  add_format(exp, {"text", "json", "csv"});

  SuiteParams sp;
  std::string suite;
  std::vector<std::string> injections;
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  ver->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suites));
  ver->add_option("--kappa", sp.kappa, "kappa in (0, 8)")->capture_default_str();
  ver->add_option("--h", sp.h_text, "anomalous weight: number or thetaN")->capture_default_str();
  ver->add_option("--alpha", sp.alpha, "Jacobi alpha (overrides the value derived from h)");
  ver->add_option("--beta", sp.beta, "Jacobi beta (overrides the value derived from kappa)");
  ver->add_option("--t-min", sp.t_min, "smallest kernel time")->capture_default_str();
  ver->add_option("--candidate", sp.candidate, kCandidateHelp)->capture_default_str();
  ver->add_option("--seed", sp.seed, "seed for random configurations")->capture_default_str();
  ver->add_option("--sweep", sp.sweep, "number of random configurations")->capture_default_str();
  ver->add_option("--inject", injections, "perturb a named constant: name=offset (lambda0, theta1, delta_plus, alpha)");
  add_format(ver, {"text", "json"});

  ScanParams cp;
  std::string scan;
  auto* scn = app.add_subcommand("scan", "grid scan with CSV output");
  scn->add_option("name", scan, "scan name")->required()->check(CLI::IsMember(scan_names()));
  scn->add_option("--kappa", cp.kappa, "kappa in (0, 8)")->capture_default_str();
  scn->add_option("--h", cp.h_text, "anomalous weight: number or thetaN")->capture_default_str();
  scn->add_option("--T", cp.T, "kernel-bounds: short/long time split")->capture_default_str();
  scn->add_option("--t-min", cp.t_min, "kernel-bounds: smallest time")->capture_default_str();
  scn->add_option("--candidate", cp.candidate, kCandidateHelp);
  scn->add_option("--output,-o", cp.output, "CSV output path");
  scn->add_option("--j", cp.j, "far-pair: 1-based right end of the theta_1 interval (default 2)");
  scn->add_option("--iota", cp.iota, "1-based anomalous point (default 4 far-pair, 3 adjacent-pair)");
  add_format(scn, {"text", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*exp) return run_exponents(kappas, smax, format, out);

    if (*ver) {
      for (const auto& s : injections) sp.inject.add(s);
      (void)sp.h();
      Report report("verify " + suite);
      report.set_param("kappa", sp.kappa);
      report.set_param("h", sp.h_text);
      report.set_param("h_value", sp.h());
      report.set_param("threads", thread_count());
      if (!sp.inject.empty()) report.set_param("inject", sp.inject.offsets());
      run_suite(suite, sp, report);
      return emit(report, format, out);
    }

    if (*scn) {
      (void)cp.h();
      if (!(cp.T > 0.0)) throw UsageError("--T must be positive");
      Report report("scan " + scan);
      report.set_param("kappa", cp.kappa);
      report.set_param("h", cp.h_text);
      report.set_param("threads", thread_count());
      run_scan(scan, cp, report);
      return emit(report, format, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace nullstate::cli
