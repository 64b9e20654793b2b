#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "wcfair/matrix.hpp"
#include "wcfair/model.hpp"

namespace wcfair {

// Distance raised to the power p (p in {1, 2}).
double distance_pow(std::span<const double> a, std::span<const double> b,
                    int p, Metric metric = Metric::kEuclidean);

// d^p from each center (row) to each point (column): k x n.
Matrix distance_table(const Instance& instance, const Matrix& centers, int p,
                      Metric metric = Metric::kEuclidean);

// Exact per-cluster counts of an integral assignment.
struct ClusterCounts {
  std::vector<std::size_t> size;                 // |C_i|
  std::vector<std::vector<std::size_t>> color;   // |C_i^h|, indexed [i][h]

  static ClusterCounts from(const Instance& instance,
                            std::span<const std::size_t> assignment,
                            std::size_t k);
};

// |C_i| * Delta(h, i) from raw masses; works for fractional masses too.
// Zero for an empty cluster.
double weighted_violation(double color_mass, double cluster_mass, double r_h,
                          double alpha_h, double beta_h);

// Same quantity from exact counts, with r_h |C_i| formed as n_h |C_i| / n.
double weighted_violation_counts(std::size_t color_count,
                                 std::size_t cluster_size, std::size_t n_h,
                                 std::size_t n, double alpha_h, double beta_h);

// Delta(h, i): proportional violation of color h in cluster i.
double violation(ColorId h, std::size_t i, const ClusterCounts& counts,
                 const Instance& instance, const Params& params);

struct GroupReport {
  std::vector<double> distance;    // D_h
  std::vector<double> violation;   // V_h
  std::vector<double> disutility;  // disu_h
  double clustering_cost = 0.0;    // sum_j d^p(j, phi(j))
  double rawlsian = 0.0;           // R = max_h disu_h
  double utilitarian = 0.0;        // U = sum_h disu_h

  friend bool operator==(const GroupReport&, const GroupReport&) = default;
};

GroupReport group_costs(const Instance& instance, const Solution& solution,
                        const Params& params);

// max_h D_h / n_h.
double socially_fair_cost(const Instance& instance, const Solution& solution,
                          int p, Metric metric = Metric::kEuclidean);

// sum_j w_j d^p(j, phi(j)); throws UsageError on a non-positive weight.
double weighted_cost(const Instance& instance, const Solution& solution, int p,
                     std::span<const double> weights,
                     Metric metric = Metric::kEuclidean);

// w_j = 1 / n_{color(j)}.
std::vector<double> inverse_group_size_weights(const Instance& instance);

struct ApproxConstants {
  int gamma;        // 2^{p-1} (2^{p-1} + 1)
  int gamma_prime;  // 2^{2(p-1)}
};
ApproxConstants approx_constants(int p);

struct AdditiveConstants {
  double rawlsian;     // (|H|+1) / min_h r_h * k / n
  double utilitarian;  // 2k/n * sum_h 1/r_h
};
AdditiveConstants additive_constants(const Instance& instance,
                                     const Params& params);

}  // namespace wcfair
