#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace lpres {

/// Per-check record.  `worst_margin` is signed: negative means a violation
/// of the inequality under test; `violations` counts margins below
/// -tolerance only.
struct InequalityReport {
  std::string check_name;
  std::int64_t samples = 0;
  std::int64_t violations = 0;
  double worst_margin = 0.0;
  std::optional<double> estimated_constant;
  std::map<std::string, std::string> details;

  bool passed() const { return violations == 0; }
};

/// Least-squares fit of log image distance against log argument distance.
struct HolderFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::int64_t n_pairs = 0;
  double scale_lo = 0.0;
  double scale_hi = 0.0;
};

/// Shortest round-trip decimal representation (std::to_chars); used for all
/// numeric report output so reruns are byte-identical.
std::string format_double(double value);

}  // namespace lpres
