#include "nullstate_cli/report.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace nullstate::cli {

Report::Report(std::string command) : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

void Report::check_le(const std::string& name, double value, double tolerance, std::string detail) {
  checks_.push_back({name, value, tolerance, std::isfinite(value) && value <= tolerance, std::move(detail)});
}

void Report::check_near(const std::string& name, double value, double expected, double tolerance,
                        std::string detail) {
  check_le(name, std::abs(value - expected), tolerance, std::move(detail));
}

void Report::check_true(const std::string& name, bool ok, std::string detail) {
  checks_.push_back({name, ok ? 1.0 : 0.0, 1.0, ok, std::move(detail)});
}

void Report::fail(const std::string& name, std::string detail) {
  checks_.push_back({name, std::nan(""), 0.0, false, std::move(detail)});
}

bool Report::all_pass() const {
  for (const auto& c : checks_) {
    if (!c.pass) return false;
  }
  return true;
}

void Report::finish() {
  wall_time_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["command"] = command_;
  j["params"] = params_;
  j["defaults"] = defaults_;
  j["seed"] = seed_ ? nlohmann::json(*seed_) : nlohmann::json(nullptr);
  j["notes"] = notes_;
  auto& arr = j["checks"] = nlohmann::json::array();
  for (const auto& c : checks_) {
    arr.push_back({{"name", c.name},
                   {"value", number(c.value)},
                   {"tolerance", number(c.tolerance)},
                   {"pass", c.pass},
                   {"detail", c.detail}});
  }
  for (const auto& [k, v] : extra_.items()) j[k] = v;
  j["wall_time"] = wall_time_;
  j["all_pass"] = all_pass();
  return j;
}

void Report::print_text(std::ostream& os) const {
  os << command_ << '\n';
  if (seed_) os << "seed " << *seed_ << '\n';
  for (const auto& [k, v] : params_.items()) os << "  param " << k << " = " << v.dump() << '\n';
  for (const auto& [k, v] : defaults_.items()) os << "  default " << k << " = " << v.dump() << '\n';
  for (const auto& n : notes_) os << "  note: " << n << '\n';
  for (const auto& c : checks_) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << "  value=" << std::setprecision(6) << c.value
       << " tol=" << c.tolerance;
    if (!c.detail.empty()) os << "  (" << c.detail << ')';
    os << '\n';
  }
  os << (all_pass() ? "all checks passed" : "some checks FAILED") << " in " << std::fixed << std::setprecision(3)
     << wall_time_ << " s\n";
  os << std::defaultfloat;
}

}  // namespace nullstate::cli
