#ifndef HYPERCON_CORE_REPORT_HPP
#define HYPERCON_CORE_REPORT_HPP

#include <string>

#include "core/ftr.hpp"
#include "core/reduction.hpp"

namespace hypercon {

/// Everything `compute` reports: the input description, the configuration
/// echo, the result and wall-clock timings.
struct RunReport {
  std::string version;
  std::string input;  ///< path or "<memory>"
  int n = 0;
  int k = 0;
  int m = 0;
  FTRConfig config;
  Strategy strategy = Strategy::dominance;
  ConnectivityResult result;
  double parse_seconds = 0.0;
  double solve_seconds = 0.0;
};

/// Serializes with stable key order. Per-vertex "time_s" and the "timing"
/// object are the only fields that vary between identical runs.
std::string report_to_json(const RunReport& report, int indent = 2);

/// Inverse of report_to_json for the serialized fields. Minimizers of
/// non-argmin vertices are not serialized and come back empty.
RunReport report_from_json(const std::string& text);

}  // namespace hypercon

#endif  // HYPERCON_CORE_REPORT_HPP
