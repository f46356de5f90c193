#pragma once
// Grid scans behind `nullstate scan <name>`; each writes an optional CSV.

#include <string>
#include <vector>

#include "nullstate_cli/options.hpp"
#include "nullstate_cli/report.hpp"

namespace nullstate::cli {

const std::vector<std::string>& scan_names();

void run_scan(const std::string& name, const ScanParams& params, Report& report);

}  // namespace nullstate::cli
