#include "wcfair/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace wcfair {

double distance_pow(std::span<const double> a, std::span<const double> b,
                    int p, Metric metric) {
  if (a.size() != b.size()) {
    throw UsageError("dimension mismatch: " + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()));
  }
  if (p != 1 && p != 2) throw UsageError("unsupported exponent p");
  double s = 0.0;
  if (metric == Metric::kHamming) {
    for (std::size_t c = 0; c < a.size(); ++c) s += a[c] != b[c] ? 1.0 : 0.0;
    return p == 1 ? s : s * s;
  }
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double diff = a[c] - b[c];
    s += diff * diff;
  }
  return p == 2 ? s : std::sqrt(s);
}

Matrix distance_table(const Instance& instance, const Matrix& centers, int p,
                      Metric metric) {
  Matrix table(centers.rows(), instance.n());
  for (std::size_t i = 0; i < centers.rows(); ++i) {
    for (std::size_t j = 0; j < instance.n(); ++j) {
      table(i, j) = distance_pow(centers.row(i), instance.point(j), p, metric);
    }
  }
  return table;
}

ClusterCounts ClusterCounts::from(const Instance& instance,
                                  std::span<const std::size_t> assignment,
                                  std::size_t k) {
  ClusterCounts counts;
  counts.size.assign(k, 0);
  counts.color.assign(k, std::vector<std::size_t>(instance.num_colors(), 0));
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    const std::size_t i = assignment[j];
    if (i >= k) {
      throw UsageError("point " + std::to_string(j) +
                       " assigned to center out of range");
    }
    ++counts.size[i];
    ++counts.color[i][instance.color_of(j)];
  }
  return counts;
}

double weighted_violation(double color_mass, double cluster_mass, double r_h,
                          double alpha_h, double beta_h) {
  if (cluster_mass <= 0.0) return 0.0;
  const double over = color_mass - (r_h + alpha_h) * cluster_mass;
  const double under = (r_h - beta_h) * cluster_mass - color_mass;
  return std::max({over, under, 0.0});
}

double weighted_violation_counts(std::size_t color, std::size_t size,
                                 std::size_t n_h, std::size_t n,
                                 double alpha_h, double beta_h) {
  if (size == 0) return 0.0;
  const double s = static_cast<double>(size);
  const double proportional =
      static_cast<double>(n_h * size) / static_cast<double>(n);
  const double c = static_cast<double>(color);
  const double over = c - (proportional + alpha_h * s);
  const double under = (proportional - beta_h * s) - c;
  return std::max({over, under, 0.0});
}

double violation(ColorId h, std::size_t i, const ClusterCounts& counts,
                 const Instance& instance, const Params& params) {
  if (i >= counts.size.size()) throw UsageError("cluster index out of range");
  if (h >= instance.num_colors()) throw UsageError("color out of range");
  const std::size_t size = counts.size[i];
  if (size == 0) return 0.0;
  return weighted_violation_counts(counts.color[i][h], size,
                                   instance.count(h), instance.n(),
                                   params.alpha[h], params.beta[h]) /
         static_cast<double>(size);
}

GroupReport group_costs(const Instance& instance, const Solution& solution,
                        const Params& params) {
  const std::size_t k = solution.k();
  const std::size_t colors = instance.num_colors();
  if (solution.assignment.size() != instance.n()) {
    throw UsageError("assignment length does not match instance");
  }
  GroupReport report;
  report.distance.assign(colors, 0.0);
  report.violation.assign(colors, 0.0);
  report.disutility.assign(colors, 0.0);

  for (std::size_t j = 0; j < instance.n(); ++j) {
    const std::size_t i = solution.assignment[j];
    if (i >= k) throw UsageError("assignment refers to a missing center");
    const double dist = distance_pow(solution.centers.row(i), instance.point(j),
                                     params.p, params.metric);
    report.distance[instance.color_of(j)] += dist;
    report.clustering_cost += dist;
  }

  const auto counts = ClusterCounts::from(instance, solution.assignment, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (ColorId h = 0; h < colors; ++h) {
      report.violation[h] += weighted_violation_counts(
          counts.color[i][h], counts.size[i], instance.count(h), instance.n(),
          params.alpha[h], params.beta[h]);
    }
  }

  for (ColorId h = 0; h < colors; ++h) {
    report.disutility[h] = (params.lambda * report.distance[h] +
                            (1.0 - params.lambda) * report.violation[h]) /
                           static_cast<double>(instance.count(h));
    report.rawlsian = h == 0 ? report.disutility[h]
                             : std::max(report.rawlsian, report.disutility[h]);
    report.utilitarian += report.disutility[h];
  }
  return report;
}

double socially_fair_cost(const Instance& instance, const Solution& solution,
                          int p, Metric metric) {
  std::vector<double> per_color(instance.num_colors(), 0.0);
  for (std::size_t j = 0; j < instance.n(); ++j) {
    per_color[instance.color_of(j)] +=
        distance_pow(solution.centers.row(solution.assignment[j]),
                     instance.point(j), p, metric);
  }
  double worst = 0.0;
  for (ColorId h = 0; h < per_color.size(); ++h) {
    worst = std::max(worst,
                     per_color[h] / static_cast<double>(instance.count(h)));
  }
  return worst;
}

double weighted_cost(const Instance& instance, const Solution& solution, int p,
                     std::span<const double> weights, Metric metric) {
  if (weights.size() != instance.n()) {
    throw UsageError("one weight per point required");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < instance.n(); ++j) {
    if (!(weights[j] > 0.0)) {
      throw UsageError("weight of point " + std::to_string(j) +
                       " is not positive");
    }
    total += weights[j] *
             distance_pow(solution.centers.row(solution.assignment[j]),
                          instance.point(j), p, metric);
  }
  return total;
}

std::vector<double> inverse_group_size_weights(const Instance& instance) {
  std::vector<double> w(instance.n());
  for (std::size_t j = 0; j < instance.n(); ++j) {
    w[j] = 1.0 / static_cast<double>(instance.count(instance.color_of(j)));
  }
  return w;
}

ApproxConstants approx_constants(int p) {
  if (p != 1 && p != 2) throw UsageError("unsupported exponent p");
  const int half = 1 << (p - 1);
  return {half * (half + 1), 1 << (2 * (p - 1))};
}

AdditiveConstants additive_constants(const Instance& instance,
                                     const Params& params) {
  const double k_over_n =
      static_cast<double>(params.k) / static_cast<double>(instance.n());
  double min_r = 1.0;
  double inv_sum = 0.0;
  for (ColorId h = 0; h < instance.num_colors(); ++h) {
    const double r = instance.proportion(h);
    min_r = std::min(min_r, r);
    inv_sum += 1.0 / r;
  }
  const double colors = static_cast<double>(instance.num_colors());
  return {(colors + 1.0) / min_r * k_over_n, 2.0 * k_over_n * inv_sum};
}

}  // namespace wcfair
