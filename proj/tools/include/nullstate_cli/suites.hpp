#pragma once
// Verification suites behind `nullstate verify <suite>`.

#include <string>
#include <vector>

#include "nullstate_cli/options.hpp"
#include "nullstate_cli/report.hpp"

namespace nullstate::cli {

/// Suite names accepted by verify, without "all".
const std::vector<std::string>& suite_names();

/// Runs one suite (or "all") and appends its checks to the report.
void run_suite(const std::string& name, const SuiteParams& params, Report& report);

void run_exponents_suite(const SuiteParams& params, Report& report);
void run_jacobi_suite(const SuiteParams& params, Report& report);
void run_kernel_suite(const SuiteParams& params, Report& report);
void run_green_suite(const SuiteParams& params, Report& report);
void run_pde_suite(const SuiteParams& params, Report& report);
void run_asymptotics_suite(const SuiteParams& params, Report& report);

/// kappa values used for the kappa-wide identity checks.
const std::vector<double>& kappa_grid();

}  // namespace nullstate::cli
