#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "wcfair/harness/results.hpp"

namespace wcfair::harness {

// Informational threshold on the largest gap; exceeding it is reported, not
// treated as a failure.
inline constexpr double kExpectedMaxGap = 8e-3;

struct GapRow {
  std::string objective;
  std::size_t k = 0;
  double lambda = 0.0;
  std::string method;
  double gap = 0.0;
  double bound = 0.0;
  bool within = true;  // -tol <= gap <= bound + tol
};

struct GapReport {
  std::vector<GapRow> rows;
  double max_gap = 0.0;
  std::size_t violations = 0;
  bool above_expected = false;
};

// Rows without a gap (baselines, failed or iteration-limited runs) are
// skipped.
GapReport gap_report(const ResultsTable& table, double tolerance = 1e-7);

void print_gap_report(const GapReport& report, std::ostream& out);

}  // namespace wcfair::harness
