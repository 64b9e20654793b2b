#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wcfair/centers.hpp"
#include "wcfair/lp.hpp"
#include "wcfair/metrics.hpp"
#include "wcfair/model.hpp"

namespace wcfair {

inline constexpr const char* kRawlsianAlg = "RawlsianAlg";
inline constexpr const char* kUtilitarianAlg = "UtilitarianAlg";

// Result flags.
inline constexpr const char* kFlagIterationLimit = "lp_iteration_limit";
inline constexpr const char* kFlagGapAboveBound = "gap_above_bound";
inline constexpr const char* kFlagNegativeGap = "negative_gap";

struct StageTimes {
  double centers = 0.0;
  double lp = 0.0;
  double rounding = 0.0;
  double total = 0.0;
};

struct RunResult {
  std::string method;
  Objective objective = Objective::kRawlsian;
  Params params;
  CenterMethod provenance = CenterMethod::kVanilla;
  double center_score = 0.0;
  std::optional<double> lp_objective;
  std::size_t lp_iterations = 0;
  Solution solution;
  GroupReport report;
  std::optional<double> gap;    // integral objective - LP objective
  std::optional<double> bound;  // (1 - lambda) * C
  StageTimes seconds;
  std::uint64_t seed = 0;
  double normalization_factor = 1.0;
  std::vector<std::string> flags;

  // R or U according to `objective`.
  double value() const;
  double value(Objective which) const;
};

struct PipelineOptions {
  SolverOptions solver;  // tolerance is overwritten by Params::lp_tolerance
  const LPSolver* lp_solver = nullptr;  // built-in simplex when null
};

LloydOptions lloyd_options(const Params& params);

// Socially fair centers (best of restarts), assignment LP, per-color rounding.
RunResult rawlsian_alg(const Instance& instance, const Params& params,
                       const PipelineOptions& options = {});
// Same with precomputed centers (e.g. shared with the socially fair baseline).
RunResult rawlsian_alg(const Instance& instance, const Params& params,
                       const CenterSet& centers,
                       const PipelineOptions& options = {});

// Weighted (w_j = 1/n_h) centers, assignment LP, single-network rounding.
RunResult utilitarian_alg(const Instance& instance, const Params& params,
                          const PipelineOptions& options = {});
RunResult utilitarian_alg(const Instance& instance, const Params& params,
                          const CenterSet& centers,
                          const PipelineOptions& options = {});

// Centers by `method`, nearest-center assignment, no LP. `objective` only
// labels the result.
RunResult evaluate_baseline(const Instance& instance, const Params& params,
                            CenterMethod method,
                            Objective objective = Objective::kRawlsian);
RunResult evaluate_baseline(const Instance& instance, const Params& params,
                            const CenterSet& centers,
                            Objective objective = Objective::kRawlsian);

// Center set the algorithm for `objective` starts from.
CenterMethod center_method_for(Objective objective);
const char* method_name(Objective objective);

struct DominanceRow {
  std::string method;
  double value = 0.0;
  bool beaten_or_tied = true;  // ours <= this row's value
};

struct DominanceTable {
  Objective objective = Objective::kRawlsian;
  std::string ours;
  double our_value = 0.0;
  std::vector<DominanceRow> rows;  // every result, input order
  bool dominant = true;
};

// Compares the algorithm matching `objective` against every other result.
// Throws UsageError when the results disagree on k, lambda, p, alpha or beta,
// or when the algorithm's own result is missing.
DominanceTable dominance_check(const std::vector<RunResult>& results,
                               Objective objective);

}  // namespace wcfair
