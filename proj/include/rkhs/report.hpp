#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace rkhs {

/// Outcome of one numerical check. `passed` is always abs_error <= tolerance;
/// grid checks store the maximum deviation as `computed` against reference 0.
struct VerificationReport {
  std::string check_name;
  double computed = 0;
  double reference = 0;
  double abs_error = 0;
  double tolerance = 0;
  bool passed = false;
  std::map<std::string, double> metadata;
};

inline VerificationReport make_report(std::string name, double computed, double reference, double tolerance,
                                      std::map<std::string, double> metadata = {}) {
  VerificationReport r;
  r.check_name = std::move(name);
  r.computed = computed;
  r.reference = reference;
  r.abs_error = std::abs(computed - reference);
  r.tolerance = tolerance;
  // NaN never passes.
  r.passed = r.abs_error <= tolerance;
  r.metadata = std::move(metadata);
  return r;
}

/// Report for a max-deviation-over-grid check.
inline VerificationReport make_deviation_report(std::string name, double max_deviation, double tolerance,
                                                std::map<std::string, double> metadata = {}) {
  return make_report(std::move(name), max_deviation, 0.0, tolerance, std::move(metadata));
}

/// Replace the tolerance and recompute the verdict.
inline void retolerance(VerificationReport& r, double tolerance) {
  r.tolerance = tolerance;
  r.passed = r.abs_error <= tolerance;
}

/// One JSON object per line, fields as in VerificationReport.
std::string to_json_line(const VerificationReport& r);

/// Parse a line produced by to_json_line.
VerificationReport from_json_line(const std::string& line);

}  // namespace rkhs
