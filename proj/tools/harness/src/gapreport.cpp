#include "wcfair/harness/gapreport.hpp"

#include <algorithm>
#include <cstdio>

namespace wcfair::harness {

GapReport gap_report(const ResultsTable& table, double tolerance) {
  GapReport report;
  for (const auto& row : table.rows) {
    const auto gap = row.number("gap");
    const auto bound = row.number("bound");
    if (!gap || !bound) continue;
    GapRow g;
    g.objective = row.at("objective");
    g.k = static_cast<std::size_t>(row.number("k").value_or(0));
    g.lambda = row.number("lambda").value_or(0);
    g.method = row.at("method");
    g.gap = *gap;
    g.bound = *bound;
    g.within = g.gap >= -tolerance && g.gap <= g.bound + tolerance;
    if (!g.within) ++report.violations;
    report.max_gap = report.rows.empty() ? g.gap : std::max(report.max_gap, g.gap);
    report.rows.push_back(std::move(g));
  }
  report.above_expected = report.max_gap > kExpectedMaxGap;
  return report;
}

void print_gap_report(const GapReport& report, std::ostream& out) {
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %4s %7s %-15s %13s %13s  %s\n",
                "objective", "k", "lambda", "method", "gap", "bound", "status");
  out << line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%-12s %4zu %7.3g %-15s %13.6e %13.6e  %s\n",
                  r.objective.c_str(), r.k, r.lambda, r.method.c_str(), r.gap,
                  r.bound, r.within ? "ok" : "VIOLATION");
    out << line;
  }
  std::snprintf(line, sizeof line,
                "rows %zu, max gap %.6e, bound violations %zu\n",
                report.rows.size(), report.max_gap, report.violations);
  out << line;
  if (report.above_expected) {
    std::snprintf(line, sizeof line,
                  "note: max gap exceeds the expected %.0e\n", kExpectedMaxGap);
    out << line;
  }
}

}  // namespace wcfair::harness
