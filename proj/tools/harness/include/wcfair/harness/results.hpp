#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wcfair/pipeline.hpp"

namespace wcfair::harness {

// Column order: method, objective, k, lambda, delta, p, seed, R, U, then
// disu_h, D_h, V_h for each color h, lp_objective, gap, bound, time_centers,
// time_lp, time_rounding, time_total, flags.
std::vector<std::string> result_columns(std::size_t colors);

// The timing columns; everything else is deterministic.
bool is_timing_column(const std::string& name);

// A row that failed before producing a RunResult.
struct FailedRun {
  std::string method;
  Objective objective = Objective::kRawlsian;
  std::size_t k = 0;
  double lambda = 0.0;
  std::string error;
};

class ResultsWriter {
 public:
  ResultsWriter(std::ostream& out, std::size_t colors, double delta);

  void write(const RunResult& result);
  void write(const FailedRun& failure, int p, std::uint64_t seed);

 private:
  std::ostream& out_;
  std::size_t colors_;
  double delta_;
};

// Shortest round-trip decimal form.
std::string format_double(double v);

// A row read back from a results file, keyed by column name.
struct ResultRow {
  std::map<std::string, std::string> cells;

  const std::string& at(const std::string& column) const;
  // Empty cells give nullopt.
  std::optional<double> number(const std::string& column) const;
  bool has_flag(const std::string& flag) const;
};

struct ResultsTable {
  std::vector<std::string> columns;
  std::vector<ResultRow> rows;
};

ResultsTable read_results(const std::filesystem::path& path);

}  // namespace wcfair::harness
