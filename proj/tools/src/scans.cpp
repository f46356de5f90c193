#include "nullstate_cli/scans.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>

#include "nullstate/asymptotics.hpp"
#include "nullstate/green.hpp"
#include "nullstate/heat_kernel.hpp"
#include "nullstate/parallel.hpp"

namespace nullstate::cli {

namespace {

void write_csv(const ScanParams& p, Report& report, const std::function<void(std::ostream&)>& body) {
  if (p.output.empty()) return;
  std::ofstream os(p.output);
  if (!os) throw std::runtime_error("cannot open '" + p.output + "' for writing");
  body(os);
  os.close();
  if (!os) throw std::runtime_error("failed writing '" + p.output + "'");
  report.set_param("output", p.output);
}

std::size_t zero_based(std::optional<std::size_t> one_based, std::size_t fallback) {
  const std::size_t v = one_based.value_or(fallback);
  if (v < 1) throw UsageError("point indices are 1-based");
  return v - 1;
}

CandidateFunction scan_candidate(const ScanParams& p, const std::string& fallback) {
  const std::string name = p.candidate.empty() ? fallback : p.candidate;
  return parse_candidate(name, {p.k(), p.h()});
}

void kernel_bounds(const ScanParams& p, Report& report) {
  const HeatKernel kernel(kernel_params(p.h(), p.k()));
  BoundScanOptions opt;
  opt.T = p.T;
  opt.t_min = p.t_min;
  report.set_param("T", opt.T);
  report.set_param("t_min", opt.t_min);
  report.set_default("n_theta", opt.n_theta);
  report.set_default("n_phi", opt.n_phi);
  report.set_default("n_t", opt.n_t);
  report.set_default("c_lower", opt.c_lower);
  report.set_default("c_upper", opt.c_upper);
  const BoundScanResult r = bound_ratio_scan(kernel, opt);
  write_csv(p, report, [&](std::ostream& os) { write_bound_scan_csv(os, r); });
  report.set_extra("summary", {{"lower_min", number(r.lower_min)},
                               {"lower_max", number(r.lower_max)},
                               {"upper_min", number(r.upper_min)},
                               {"upper_max", number(r.upper_max)},
                               {"late_min", number(r.late_min)},
                               {"late_max", number(r.late_max)},
                               {"unresolved", r.unresolved}});
  report.check_true("kernel_bounds.two_sided", r.two_sided(),
                    "K / (Lambda g_c) bounded above and below on resolved points");
}

void green_adjoint(const ScanParams& p, Report& report) {
  const TwoIntervalGreen g(p.h(), p.k());
  struct Row {
    double rho, sigma, eta;
    ResidualReport r;
  };
  std::vector<Row> rows;
  for (const double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (int k = 1; k <= 10; ++k) {
      for (const double eta : {1.25, 1.5, 2.0, 3.0, 5.0}) rows.push_back({rho, 0.05 + 0.9 * (k - 1) / 9.0, eta, {}});
    }
  }
  parallel_for(rows.size(), [&](std::size_t i) { rows[i].r = adjoint_residual(g, rows[i].rho, 1.0, rows[i].sigma, rows[i].eta); });
  double worst = 0.0;
  for (const auto& row : rows) {
    if (row.r.reliable) worst = std::max(worst, row.r.relative);
  }
  write_csv(p, report, [&](std::ostream& os) {
    os << "rho,epsilon,sigma,eta,residual,scale,relative,reliable\n" << std::setprecision(17);
    for (const auto& row : rows) {
      os << row.rho << ",1," << row.sigma << ',' << row.eta << ',' << row.r.residual << ',' << row.r.scale << ','
         << row.r.relative << ',' << (row.r.reliable ? 1 : 0) << '\n';
    }
  });
  report.check_le("green_adjoint.max_relative", worst, 1e-4, std::to_string(rows.size()) + " points");
}

void far_pair(const ScanParams& p, Report& report) {
  const CandidateFunction f = scan_candidate(p, "manufactured:bounded");
  const std::size_t m = f.arity == 0 ? 4 : f.arity;
  const std::size_t j = zero_based(p.j, 2);
  const std::size_t iota = zero_based(p.iota, 4);
  report.set_param("candidate", f.name);
  report.set_param("j", j + 1);
  report.set_param("iota", iota + 1);
  const PairGrid grid;
  report.set_default("n_delta", grid.n_delta);
  report.set_default("n_epsilon", grid.n_epsilon);
  report.set_default("decades", grid.decades);
  const FarPairResult r = far_pair_bound_scan(f, default_config(m), j, iota, p.k(), p.h(), grid);
  write_csv(p, report, [&](std::ostream& os) { write_pair_scan_csv(os, r.rows); });
  report.set_extra("summary", {{"sup_ratio", number(r.sup_ratio)},
                               {"inf_ratio", number(r.inf_ratio)},
                               {"delta_slope", number(r.delta_slope)},
                               {"epsilon_slope", number(r.epsilon_slope)},
                               {"divergent", r.divergent}});
  report.check_true("far_pair.bounded", !r.divergent,
                    r.divergent ? "divergence flagged: delta slope " + std::to_string(r.delta_slope) +
                                      ", eps slope " + std::to_string(r.epsilon_slope)
                                : "sup ratio " + std::to_string(r.sup_ratio));
}

void adjacent_pair(const ScanParams& p, Report& report) {
  const CandidateFunction f = scan_candidate(p, "manufactured:normalized");
  const std::size_t m = f.arity == 0 ? 3 : f.arity;
  const std::size_t iota = zero_based(p.iota, 3);
  report.set_param("candidate", f.name);
  report.set_param("iota", iota + 1);
  const AdjacentPairResult r = adjacent_pair_bound_scan(f, default_config(m), iota, p.k(), p.h());
  write_csv(p, report, [&](std::ostream& os) { write_pair_scan_csv(os, r.rows); });
  report.set_extra("summary", {{"sup_ratio", number(r.sup_ratio)},
                               {"inf_ratio", number(r.inf_ratio)},
                               {"ratio_spread", number(r.ratio_spread)},
                               {"epsilon_slope", number(r.epsilon_slope)},
                               {"p1", number(r.p1)},
                               {"p2", number(r.p2)},
                               {"p0", number(r.p0)},
                               {"epsilon_exponent", number(r.epsilon_exponent)},
                               {"divergent", r.divergent}});
  report.check_true("adjacent_pair.bounded", !r.divergent,
                    r.divergent ? "divergence flagged: eps slope " + std::to_string(r.epsilon_slope)
                                : "ratio in [" + std::to_string(r.inf_ratio) + ", " + std::to_string(r.sup_ratio) +
                                      "]");
}

}  // namespace

const std::vector<std::string>& scan_names() {
  static const std::vector<std::string> names = {"kernel-bounds", "green-adjoint", "far-pair", "adjacent-pair"};
  return names;
}

void run_scan(const std::string& name, const ScanParams& params, Report& report) {
  if (name == "kernel-bounds") return kernel_bounds(params, report);
  if (name == "green-adjoint") return green_adjoint(params, report);
  if (name == "far-pair") return far_pair(params, report);
  if (name == "adjacent-pair") return adjacent_pair(params, report);
  throw UsageError("unknown scan '" + name + "'");
}

}  // namespace nullstate::cli
