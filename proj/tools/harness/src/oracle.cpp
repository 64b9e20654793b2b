#include "wcfair/harness/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "wcfair/metrics.hpp"
#include "wcfair/pipeline.hpp"
#include "wcfair/random.hpp"

namespace wcfair::harness {

Instance random_tiny_instance(std::size_t n, std::size_t colors,
                              std::uint64_t seed) {
  if (colors < 2 || n < colors) {
    throw UsageError("need at least two colors and one point per color");
  }
  Rng rng(seed);
  Matrix features(n, 2);
  std::vector<ColorId> color(n);
  for (std::size_t j = 0; j < n; ++j) {
    features(j, 0) = rng.uniform();
    features(j, 1) = rng.uniform();
    color[j] = j < colors ? j : rng.below(colors);
  }
  // Shuffle colors so the forced ones are not always first.
  for (std::size_t j = n; j-- > 1;) std::swap(color[j], color[rng.below(j + 1)]);
  std::vector<std::string> names;
  for (std::size_t h = 0; h < colors; ++h) names.push_back("g" + std::to_string(h));
  return Instance(std::move(features), std::move(color), std::move(names));
}

OracleSummary oracle_check(const OracleConfig& config) {
  if (config.min_n > config.max_n || config.min_n < config.colors) {
    throw UsageError("oracle-check: invalid size range");
  }
  constexpr double kLambdas[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  constexpr double kDeltas[] = {0.0, 0.01, 0.1, 0.3};
  OracleSummary summary;
  Rng rng(config.seed);
  for (std::size_t t = 0; t < config.instances; ++t) {
    const std::size_t n =
        config.min_n + rng.below(config.max_n - config.min_n + 1);
    const Instance instance =
        random_tiny_instance(n, config.colors, config.seed * 7919 + t);
    const double lambda = kLambdas[rng.below(std::size(kLambdas))];
    // Only slacks that keep r_h + alpha_h <= 1 on this instance.
    double max_r = 0.0;
    for (ColorId h = 0; h < instance.num_colors(); ++h) {
      max_r = std::max(max_r, instance.proportion(h));
    }
    std::vector<double> deltas;
    for (double d : kDeltas) {
      if (max_r * (1.0 + d) <= 1.0) deltas.push_back(d);
    }
    const double delta = deltas[rng.below(deltas.size())];
    Params params = Params::with_delta(instance, delta);
    params.k = config.k;
    params.lambda = lambda;
    params.restarts = 3;
    params.seed = config.seed + t;
    params.lp_tolerance = config.lp_tolerance;
    const AdditiveConstants constants = additive_constants(instance, params);

    for (const Objective objective :
         {Objective::kRawlsian, Objective::kUtilitarian}) {
      const CenterSet centers =
          best_of_restarts(instance, params.k, center_method_for(objective),
                           params.restarts, params.seed, lloyd_options(params));
      const RunResult run = objective == Objective::kRawlsian
                                ? rawlsian_alg(instance, params, centers)
                                : utilitarian_alg(instance, params, centers);
      const Solution brute =
          brute_force_assignment(instance, centers.centers, params, objective);
      const GroupReport brute_report = group_costs(instance, brute, params);

      OracleCase c;
      c.index = t;
      c.objective = objective;
      c.n = n;
      c.lambda = lambda;
      c.delta = delta;
      c.lp = run.lp_objective.value_or(kInfinity);
      c.brute = objective == Objective::kRawlsian ? brute_report.rawlsian
                                                  : brute_report.utilitarian;
      c.rounded = run.value();
      c.bound = (1.0 - lambda) * (objective == Objective::kRawlsian
                                      ? constants.rawlsian
                                      : constants.utilitarian);
      c.relaxation_ok = c.lp <= c.brute + config.lp_tolerance;
      c.rounding_ok = c.rounded <= c.brute + c.bound + config.lp_tolerance;
      if (!c.relaxation_ok || !c.rounding_ok) ++summary.violations;
      summary.cases.push_back(c);
    }
  }
  return summary;
}

void print_oracle_summary(const OracleSummary& summary, std::ostream& out) {
  char line[200];
  std::snprintf(line, sizeof line, "%4s %-12s %2s %6s %5s %12s %12s %12s %12s  %s\n",
                "case", "objective", "n", "lambda", "delta", "lp", "brute",
                "rounded", "bound", "status");
  out << line;
  for (const auto& c : summary.cases) {
    const char* status = c.relaxation_ok && c.rounding_ok ? "ok"
                         : !c.relaxation_ok ? "LP>BRUTE"
                                            : "ROUNDING>BOUND";
    std::snprintf(line, sizeof line,
                  "%4zu %-12s %2zu %6.2f %5.2f %12.6g %12.6g %12.6g %12.6g  %s\n",
                  c.index, std::string(to_string(c.objective)).c_str(), c.n,
                  c.lambda, c.delta, c.lp, c.brute, c.rounded, c.bound, status);
    out << line;
  }
  std::snprintf(line, sizeof line, "cases %zu, violations %zu\n",
                summary.cases.size(), summary.violations);
  out << line;
}

}  // namespace wcfair::harness
