#pragma once
// Machine-readable run reports shared by every command.

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace nullstate::cli {

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool pass;
  std::string detail;
};

class Report {
 public:
  explicit Report(std::string command);

  void set_param(const std::string& key, nlohmann::json value) { params_[key] = std::move(value); }
  void set_default(const std::string& key, nlohmann::json value) { defaults_[key] = std::move(value); }
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void note(std::string text) { notes_.push_back(std::move(text)); }
  /// Extra top-level JSON payload such as table rows.
  void set_extra(const std::string& key, nlohmann::json value) { extra_[key] = std::move(value); }

  /// value <= tolerance
  void check_le(const std::string& name, double value, double tolerance, std::string detail = {});
  /// |value - expected| <= tolerance, recorded as the deviation
  void check_near(const std::string& name, double value, double expected, double tolerance, std::string detail = {});
  void check_true(const std::string& name, bool ok, std::string detail = {});
  void fail(const std::string& name, std::string detail);

  const std::vector<Check>& checks() const noexcept { return checks_; }
  bool all_pass() const;
  void finish();

  nlohmann::json to_json() const;
  void print_text(std::ostream& os) const;

 private:
  std::string command_;
  nlohmann::json params_ = nlohmann::json::object();
  nlohmann::json defaults_ = nlohmann::json::object();
  std::optional<std::uint64_t> seed_;
  std::vector<std::string> notes_;
  nlohmann::json extra_ = nlohmann::json::object();
  std::vector<Check> checks_;
  std::chrono::steady_clock::time_point start_;
  double wall_time_ = 0.0;
};

/// Non-finite doubles have no JSON form; they are written as strings.
nlohmann::json number(double v);

}  // namespace nullstate::cli
