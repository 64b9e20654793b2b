#include "wcfair/pipeline.hpp"

#include <chrono>

#include "wcfair/rounding.hpp"

namespace wcfair {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
auto in_stage(const char* stage, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    throw UsageError(std::string(stage) + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError(std::string(stage) + ": " + e.what());
  } catch (const InternalError& e) {
    throw InternalError(std::string(stage) + ": " + e.what());
  }
}

CenterSet compute_centers(const Instance& instance, const Params& params,
                          CenterMethod method) {
  return in_stage("centers", [&] {
    return best_of_restarts(instance, params.k, method, params.restarts,
                            params.seed, lloyd_options(params));
  });
}

RunResult run_algorithm(Objective objective, const Instance& instance,
                        const Params& params, const CenterSet& centers,
                        double center_seconds,
                        const PipelineOptions& options) {
  validate(params, instance);
  const auto start = Clock::now();
  RunResult result;
  result.method = method_name(objective);
  result.objective = objective;
  result.params = params;
  result.provenance = centers.provenance;
  result.center_score = centers.score;
  result.seed = params.seed;
  result.seconds.centers = center_seconds;
  result.solution.centers = centers.centers;

  const auto lp_start = Clock::now();
  SolverOptions solver_options = options.solver;
  solver_options.tolerance = params.lp_tolerance;
  const SimplexSolver builtin;
  const LPSolver& solver = options.lp_solver ? *options.lp_solver : builtin;
  const LPModel model = in_stage("lp", [&] {
    return build_assignment_lp(objective, instance, centers.centers, params);
  });
  const LPResult lp = in_stage("lp", [&] {
    LPResult r = solver.solve(model, solver_options);
    if (r.status == SolverStatus::kInfeasible ||
        r.status == SolverStatus::kUnbounded) {
      throw InternalError(std::string("assignment LP reported ") +
                          std::string(to_string(r.status)));
    }
    return r;
  });
  result.lp_iterations = lp.iterations;
  result.seconds.lp = seconds_since(lp_start);

  const auto round_start = Clock::now();
  if (lp.status == SolverStatus::kIterationLimit) {
    result.flags.push_back(kFlagIterationLimit);
    result.solution.assignment = nearest_assignment(
        instance, centers.centers, params.p, params.metric);
  } else {
    const FractionalSolution frac = extract_assignment(model, lp);
    result.lp_objective = frac.objective_value;
    const IntegralAssignment integ = in_stage("rounding", [&] {
      return objective == Objective::kRawlsian
                 ? rawlsian_round(frac, instance, centers.centers, params.p,
                                  params.metric)
                 : utilitarian_round(frac, instance, centers.centers,
                                     params.p, params.metric);
    });
    result.solution.assignment = integ.assignment;
  }
  result.seconds.rounding = seconds_since(round_start);

  result.report = group_costs(instance, result.solution, params);
  if (result.lp_objective) {
    const AdditiveConstants c = additive_constants(instance, params);
    const double constant =
        objective == Objective::kRawlsian ? c.rawlsian : c.utilitarian;
    result.gap = result.value() - *result.lp_objective;
    result.bound = (1.0 - params.lambda) * constant;
    if (*result.gap < -params.lp_tolerance) {
      result.flags.push_back(kFlagNegativeGap);
    }
    if (*result.gap > *result.bound + params.lp_tolerance) {
      result.flags.push_back(kFlagGapAboveBound);
    }
  }
  result.seconds.total = center_seconds + seconds_since(start);
  return result;
}

}  // namespace

double RunResult::value() const { return value(objective); }

double RunResult::value(Objective which) const {
  return which == Objective::kRawlsian ? report.rawlsian : report.utilitarian;
}

LloydOptions lloyd_options(const Params& params) {
  return {params.max_iters, params.tol};
}

CenterMethod center_method_for(Objective objective) {
  return objective == Objective::kRawlsian ? CenterMethod::kSociallyFair
                                           : CenterMethod::kWeighted;
}

const char* method_name(Objective objective) {
  return objective == Objective::kRawlsian ? kRawlsianAlg : kUtilitarianAlg;
}

RunResult rawlsian_alg(const Instance& instance, const Params& params,
                       const PipelineOptions& options) {
  validate(params, instance);
  const auto start = Clock::now();
  const CenterSet centers =
      compute_centers(instance, params, CenterMethod::kSociallyFair);
  return run_algorithm(Objective::kRawlsian, instance, params, centers,
                       seconds_since(start), options);
}

RunResult rawlsian_alg(const Instance& instance, const Params& params,
                       const CenterSet& centers,
                       const PipelineOptions& options) {
  return run_algorithm(Objective::kRawlsian, instance, params, centers, 0.0,
                       options);
}

RunResult utilitarian_alg(const Instance& instance, const Params& params,
                          const PipelineOptions& options) {
  validate(params, instance);
  const auto start = Clock::now();
  const CenterSet centers =
      compute_centers(instance, params, CenterMethod::kWeighted);
  return run_algorithm(Objective::kUtilitarian, instance, params, centers,
                       seconds_since(start), options);
}

RunResult utilitarian_alg(const Instance& instance, const Params& params,
                          const CenterSet& centers,
                          const PipelineOptions& options) {
  return run_algorithm(Objective::kUtilitarian, instance, params, centers, 0.0,
                       options);
}

RunResult evaluate_baseline(const Instance& instance, const Params& params,
                            CenterMethod method, Objective objective) {
  validate(params, instance);
  const auto start = Clock::now();
  const CenterSet centers = compute_centers(instance, params, method);
  RunResult result = evaluate_baseline(instance, params, centers, objective);
  result.seconds.centers = seconds_since(start);
  result.seconds.total = result.seconds.centers;
  return result;
}

RunResult evaluate_baseline(const Instance& instance, const Params& params,
                            const CenterSet& centers, Objective objective) {
  validate(params, instance);
  RunResult result;
  result.method = std::string(to_string(centers.provenance));
  result.objective = objective;
  result.params = params;
  result.provenance = centers.provenance;
  result.center_score = centers.score;
  result.seed = params.seed;
  result.solution = {centers.centers,
                     nearest_assignment(instance, centers.centers, params.p,
                                        params.metric)};
  result.report = group_costs(instance, result.solution, params);
  return result;
}

DominanceTable dominance_check(const std::vector<RunResult>& results,
                               Objective objective) {
  DominanceTable table;
  table.objective = objective;
  table.ours = method_name(objective);
  const RunResult* ours = nullptr;
  for (const auto& r : results) {
    if (r.method == table.ours) {
      ours = &r;
      break;
    }
  }
  if (!ours) throw UsageError("no " + table.ours + " result to compare");
  for (const auto& r : results) {
    const Params& a = r.params;
    const Params& b = ours->params;
    if (a.k != b.k || a.lambda != b.lambda || a.p != b.p ||
        a.alpha != b.alpha || a.beta != b.beta) {
      throw UsageError("results were produced with different parameters");
    }
  }
  table.our_value = ours->value(objective);
  for (const auto& r : results) {
    DominanceRow row{r.method, r.value(objective), true};
    row.beaten_or_tied = table.our_value <= row.value;
    table.dominant = table.dominant && row.beaten_or_tied;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace wcfair
