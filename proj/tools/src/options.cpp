#include "nullstate_cli/options.hpp"

#include <algorithm>

namespace nullstate::cli {

const std::vector<std::string>& Injection::known() {
  static const std::vector<std::string> names = {"lambda0", "theta1", "delta_plus", "alpha"};
  return names;
}

void Injection::add(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw UsageError("--inject expects name=value, got '" + spec + "'");
  const std::string name = spec.substr(0, eq);
  if (std::find(known().begin(), known().end(), name) == known().end()) {
    std::string list;
    for (const auto& n : known()) list += (list.empty() ? "" : ", ") + n;
    throw UsageError("unknown injection '" + name + "' (known: " + list + ")");
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(spec.substr(eq + 1), &used);
    if (used != spec.size() - eq - 1) throw std::invalid_argument("trailing characters");
    offsets_[name] = v;
  } catch (const std::logic_error&) {
    throw UsageError("--inject value for '" + name + "' is not a number");
  }
}

double Injection::operator()(const std::string& name) const {
  const auto it = offsets_.find(name);
  return it == offsets_.end() ? 0.0 : it->second;
}

double parse_weight(const std::string& text, Kappa kappa) {
  if (text.rfind("theta", 0) == 0) {
    try {
      std::size_t used = 0;
      const int s = std::stoi(text.substr(5), &used);
      if (used == text.size() - 5 && s >= 0) return leg_weight(s, kappa);
    } catch (const std::logic_error&) {
    }
    throw UsageError("weight '" + text + "' is not thetaN with N >= 0");
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw UsageError("weight '" + text + "' is neither a number nor thetaN");
}

}  // namespace nullstate::cli
