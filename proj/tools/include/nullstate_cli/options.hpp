#pragma once
// Parameters shared by the verify and scan commands.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nullstate/exponents.hpp"

namespace nullstate::cli {

/// Raised for malformed flags; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Additive perturbations of named constants inside the verify suites,
/// used to confirm that a corrupted constant is caught.
class Injection {
 public:
  static const std::vector<std::string>& known();
  /// Parses "name=value".
  void add(const std::string& spec);
  double operator()(const std::string& name) const;
  bool empty() const { return offsets_.empty(); }
  const std::map<std::string, double>& offsets() const { return offsets_; }

 private:
  std::map<std::string, double> offsets_;
};

/// A number or "thetaN" (the N-leg weight at kappa).
double parse_weight(const std::string& text, Kappa kappa);

struct SuiteParams {
  double kappa = 6.0;
  std::string h_text = "theta2";
  std::optional<double> alpha;
  std::optional<double> beta;
  double t_min = 1e-3;
  std::string candidate = "n1";
  std::uint64_t seed = 20240601;
  std::size_t sweep = 100;
  Injection inject;

  Kappa k() const { return Kappa(kappa); }
  double h() const { return parse_weight(h_text, k()); }
};

struct ScanParams {
  double kappa = 6.0;
  std::string h_text = "theta2";
  double T = 1.0;
  double t_min = 1e-3;
  std::string candidate;
  std::string output;
  std::optional<std::size_t> j;
  std::optional<std::size_t> iota;

  Kappa k() const { return Kappa(kappa); }
  double h() const { return parse_weight(h_text, k()); }
};

}  // namespace nullstate::cli
