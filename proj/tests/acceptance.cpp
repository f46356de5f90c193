// One PASS/FAIL line per acceptance criterion; exit status 0 only if all pass.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "nullstate/exponents.hpp"
#include "nullstate/jacobi.hpp"
#include "nullstate_cli/report.hpp"
#include "nullstate_cli/suites.hpp"
#include "oracles.hpp"

using namespace nullstate;
using namespace nullstate::cli;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

using SuiteFn = void (*)(const SuiteParams&, Report&);

void suite_over_grid(Outcome& o, SuiteFn fn, const std::string& prefix = {}) {
  for (const double kv : kappa_grid()) {
    SuiteParams p;
    p.kappa = kv;
    Report r("acceptance");
    fn(p, r);
    for (const auto& c : r.checks()) {
      if (!prefix.empty() && c.name.rfind(prefix, 0) != 0) continue;
      std::ostringstream os;
      os << c.name << " at kappa=" << kv << " (value " << c.value << ", tol " << c.tolerance << ")";
      o.require(c.pass, os.str());
    }
  }
}

Outcome criterion1() {
  Outcome o;
  suite_over_grid(o, run_exponents_suite);
  for (const double kv : kappa_grid()) {
    const Kappa k(kv);
    for (int s = 1; s <= 10; ++s) {
      const auto [lo, hi] = oracle::kpz_roots(oracle::theta(s, kv), kv);
      const KpzPair e = kpz(leg_weight(s, k), k);
      o.require(std::abs(e.delta_minus - lo) <= 1e-12 && std::abs(e.delta_plus - hi) <= 1e-12,
                "kpz vs quadratic roots at s=" + std::to_string(s));
    }
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  suite_over_grid(o, run_jacobi_suite);
  for (const double kv : kappa_grid()) {
    const Kappa k(kv);
    const JacobiParams jp = jacobi_params(leg_weight(2, k), k);
    const JacobiBasis b(jp.alpha, jp.beta);
    double worst = 0.0;
    for (int n = 0; n <= 8; ++n) {
      for (int i = 0; i <= 40; ++i) {
        const double y = -1.0 + i / 20.0;
        worst = std::max(worst, std::abs(b.value(n, y) - oracle::jacobi(n, jp.alpha, jp.beta, y)) /
                                    std::max(1.0, b.endpoint_max(n)));
      }
    }
    o.require(worst <= 1e-10, "recurrence vs binomial sum at kappa=" + std::to_string(kv));
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  suite_over_grid(o, run_kernel_suite);
  return o;
}

Outcome criterion4() {
  Outcome o;
  suite_over_grid(o, run_green_suite);
  return o;
}

Outcome criterion5() {
  Outcome o;
  suite_over_grid(o, run_pde_suite, "pde.");
  return o;
}

Outcome criterion6() {
  Outcome o;
  suite_over_grid(o, run_asymptotics_suite);
  SuiteParams p;
  Report r("acceptance");
  run_exponents_suite(p, r);
  for (const auto& c : r.checks()) {
    if (c.name == "exponents.minus_two_theta1") o.require(c.pass, c.name);
  }
  return o;
}

struct ToolRun {
  int code;
  std::string out;
};

ToolRun run_tool(const std::string& args) {
  const std::string cmd = std::string(NULLSTATE_TOOL_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, "popen failed"};
  std::string out;
  std::array<char, 4096> buf{};
  while (const std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome criterion7() {
  Outcome o;
  for (const char* kv : {"6", "3.3333"}) {
    const ToolRun r = run_tool(std::string("verify all --kappa ") + kv);
    o.require(r.code == 0, std::string("verify all --kappa ") + kv + " exited " + std::to_string(r.code));
  }
  for (const char* inj : {"lambda0=1e-6", "theta1=1e-6", "delta_plus=1e-6", "alpha=1e-6"}) {
    const ToolRun r = run_tool(std::string("verify all --kappa 6 --inject ") + inj);
    o.require(r.code == 1, std::string("--inject ") + inj + " exited " + std::to_string(r.code));
    o.require(r.out.find("\nFAIL ") != std::string::npos, std::string("--inject ") + inj + " has no named failure");
  }
  const ToolRun r = run_tool("verify all --kappa 6 --inject lambda0=1e-6");
  o.require(r.out.find("FAIL exponents.lambda0") != std::string::npos, "lambda0 injection not reported by name");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 KPZ identities", criterion1},     {"2 Jacobi polynomials", criterion2},
      {"3 heat kernel", criterion3},        {"4 Green functions", criterion4},
      {"5 null-state and Ward residuals", criterion5}, {"6 collapse asymptotics", criterion6},
      {"7 end-to-end CLI", criterion7}};
  bool all = true;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << name << " [" << secs << " s]";
    if (!o.pass) std::cout << ": " << o.detail;
    std::cout << '\n';
  }
  std::cout << (all ? "all acceptance criteria passed" : "acceptance FAILED") << '\n';
  return all ? 0 : 1;
}
