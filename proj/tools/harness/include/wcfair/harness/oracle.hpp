#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "wcfair/lp.hpp"
#include "wcfair/model.hpp"

namespace wcfair::harness {

struct OracleConfig {
  std::size_t instances = 50;
  std::size_t min_n = 4;
  std::size_t max_n = 8;
  std::size_t k = 2;
  std::size_t colors = 2;
  std::uint64_t seed = 0;
  double lp_tolerance = 1e-7;
};

struct OracleCase {
  std::size_t index = 0;
  Objective objective = Objective::kRawlsian;
  std::size_t n = 0;
  double lambda = 0.0;
  double delta = 0.0;
  double lp = 0.0;
  double brute = 0.0;
  double rounded = 0.0;
  double bound = 0.0;  // (1 - lambda) * C
  bool relaxation_ok = true;  // lp <= brute + tol
  bool rounding_ok = true;    // rounded <= brute + bound + tol
};

struct OracleSummary {
  std::vector<OracleCase> cases;
  std::size_t violations = 0;
};

// Random tiny colored instance in the unit square with every color present.
Instance random_tiny_instance(std::size_t n, std::size_t colors,
                              std::uint64_t seed);

// For each random instance and both objectives: centers of the matching
// algorithm, LP optimum, rounded objective and the brute-force optimum over
// all k^n assignments to the same centers.
OracleSummary oracle_check(const OracleConfig& config);

void print_oracle_summary(const OracleSummary& summary, std::ostream& out);

}  // namespace wcfair::harness
