#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "wcfair/matrix.hpp"
#include "wcfair/model.hpp"

namespace wcfair {

enum class CenterMethod { kVanilla, kWeighted, kSociallyFair };

std::string_view to_string(CenterMethod method);

struct CenterSet {
  Matrix centers;  // k x d
  CenterMethod provenance = CenterMethod::kVanilla;
  // One method-native score per restart; `score` equals the chosen entry.
  std::vector<double> restart_scores;
  double score = 0.0;
  std::size_t chosen_restart = 0;
  // Per-iteration score of the chosen run (first entry is the initial
  // centers' score).
  std::vector<double> cost_history;
  std::size_t iterations = 0;

  std::size_t k() const noexcept { return centers.rows(); }
};

struct LloydOptions {
  std::size_t max_iters = 100;
  double tol = 1e-6;
};

// Nearest center per point under squared Euclidean distance; the lowest
// center index wins ties.
std::vector<std::size_t> nearest_assignment(const Instance& instance,
                                            const Matrix& centers,
                                            int p = 2,
                                            Metric metric = Metric::kEuclidean);

// k-means++ seeding with point weights: the first center is drawn with
// probability proportional to w_j, each further one proportional to
// w_j * D^2(j). Throws UsageError when k exceeds the number of distinct points.
CenterSet kmeanspp_init(const Instance& instance, std::size_t k,
                        std::span<const double> weights, std::uint64_t seed);

// Weighted Lloyd iterations from a k-means++ start. Score: sum_j w_j d^2 under
// nearest assignment. Uniform weights give vanilla k-means.
CenterSet lloyd(const Instance& instance, std::size_t k,
                std::span<const double> weights, std::uint64_t seed,
                const LloydOptions& options = {});

// Lloyd-style alternation for the socially fair k-means cost
// max_h (1/n_h) sum_{j in P^h} d^2(j, phi(j)). Score: that cost.
CenterSet socially_fair_centers(const Instance& instance, std::size_t k,
                                std::uint64_t seed,
                                const LloydOptions& options = {});

// Runs `method` with seeds seed, seed+1, ..., seed+restarts-1 and keeps the
// lowest score (earliest restart on ties).
CenterSet best_of_restarts(const Instance& instance, std::size_t k,
                           CenterMethod method, std::size_t restarts,
                           std::uint64_t seed,
                           const LloydOptions& options = {});

namespace detail {

// Center update of the two-group socially fair step. For a global weight
// gamma in [0, 1] every center is the minimizer of
//   gamma * cost_A + (1 - gamma) * cost_B,
// a mass-weighted interpolation between the cluster's group means. Returns
// the gamma minimizing max(cost_A, cost_B), found by ternary search.
struct FairUpdate {
  Matrix centers;
  double gamma = 0.5;
  double cost_a = 0.0;
  double cost_b = 0.0;
};
FairUpdate two_group_fair_update(const Instance& instance,
                                 std::span<const std::size_t> assignment,
                                 const Matrix& previous_centers,
                                 double gamma_tol = 1e-9);

}  // namespace detail

}  // namespace wcfair
