#include <cmath>

#include "wcfair/centers.hpp"
#include "wcfair/metrics.hpp"
#include "wcfair/model.hpp"

namespace wcfair {

double normalization_factor(const Instance& instance,
                            std::span<const std::size_t> k_range, int p,
                            NormalizationMode mode, std::uint64_t seed,
                            double delta) {
  if (k_range.empty()) throw UsageError("k_range is empty");
  Params params = Params::with_delta(instance, delta);
  params.p = p;
  params.lambda = 1.0;
  const std::vector<double> uniform(instance.n(), 1.0);

  double sum = 0.0;
  for (const std::size_t k : k_range) {
    if (k == 0 || k > instance.n()) {
      throw UsageError("k=" + std::to_string(k) + " outside [1, n]");
    }
    params.k = k;
    const CenterSet vanilla = lloyd(instance, k, uniform, seed);
    Solution solution{vanilla.centers,
                      nearest_assignment(instance, vanilla.centers)};
    const GroupReport report = group_costs(instance, solution, params);

    double violation = 0.0;
    double group_average = 0.0;
    for (ColorId h = 0; h < instance.num_colors(); ++h) {
      const double n_h = static_cast<double>(instance.count(h));
      violation += report.violation[h] / n_h;
      group_average += report.distance[h] / n_h;
    }
    if (violation <= 0.0) {
      throw DataError("vanilla clustering at k=" + std::to_string(k) +
                      " has zero proportional violation; normalization "
                      "factor undefined");
    }
    const double numerator =
        mode == NormalizationMode::kRawlsian
            ? report.clustering_cost / static_cast<double>(instance.n())
            : group_average;
    sum += numerator / violation;
  }
  return sum / static_cast<double>(k_range.size());
}

}  // namespace wcfair
