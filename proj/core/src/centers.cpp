#include "wcfair/centers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wcfair/metrics.hpp"
#include "wcfair/random.hpp"

namespace wcfair {

std::string_view to_string(CenterMethod method) {
  switch (method) {
    case CenterMethod::kVanilla:
      return "vanilla";
    case CenterMethod::kWeighted:
      return "weighted";
    case CenterMethod::kSociallyFair:
      return "socially_fair";
  }
  return "unknown";
}

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double diff = a[c] - b[c];
    s += diff * diff;
  }
  return s;
}

std::size_t count_distinct_points(const Instance& instance) {
  std::vector<std::size_t> order(instance.n());
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    const auto pa = instance.point(a);
    const auto pb = instance.point(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(),
                                        pb.end());
  };
  std::sort(order.begin(), order.end(), less);
  std::size_t distinct = 1;
  for (std::size_t s = 1; s < order.size(); ++s) {
    if (less(order[s - 1], order[s])) ++distinct;
  }
  return distinct;
}

void check_weights(const Instance& instance, std::span<const double> weights) {
  if (weights.size() != instance.n()) {
    throw UsageError("one weight per point required");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw UsageError("point weights must be positive and finite");
    }
  }
}

bool uniform_weights(std::span<const double> weights) {
  return std::all_of(weights.begin(), weights.end(),
                     [&](double w) { return w == weights.front(); });
}

// Index j with cumulative mass crossing u * total; skips zero-mass entries.
std::size_t sample_index(std::span<const double> mass, double total, Rng& rng) {
  const double target = rng.uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = mass.size();
  for (std::size_t j = 0; j < mass.size(); ++j) {
    if (mass[j] <= 0.0) continue;
    acc += mass[j];
    last_positive = j;
    if (acc > target) return j;
  }
  return last_positive;  // floating-point shortfall at the tail
}

double weighted_nearest_cost(const Instance& instance, const Matrix& centers,
                             std::span<const std::size_t> assignment,
                             std::span<const double> weights) {
  double total = 0.0;
  for (std::size_t j = 0; j < instance.n(); ++j) {
    total += weights[j] *
             squared_distance(centers.row(assignment[j]), instance.point(j));
  }
  return total;
}

// max_h (1/n_h) sum_{j in P^h} d^2(j, c_{phi(j)}).
double fair_cost(const Instance& instance, const Matrix& centers,
                 std::span<const std::size_t> assignment) {
  std::vector<double> per_color(instance.num_colors(), 0.0);
  for (std::size_t j = 0; j < instance.n(); ++j) {
    per_color[instance.color_of(j)] +=
        squared_distance(centers.row(assignment[j]), instance.point(j));
  }
  double worst = 0.0;
  for (ColorId h = 0; h < per_color.size(); ++h) {
    worst = std::max(worst,
                     per_color[h] / static_cast<double>(instance.count(h)));
  }
  return worst;
}

// Moves every center that lost all its points onto the point currently paying
// the largest squared distance (lowest index on ties). Returns true if any
// center moved.
bool reseed_empty(const Instance& instance, Matrix& centers,
                  std::vector<std::size_t>& assignment) {
  const std::size_t k = centers.rows();
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t i : assignment) ++sizes[i];
  bool moved = false;
  std::vector<double> cost(instance.n());
  for (std::size_t j = 0; j < instance.n(); ++j) {
    cost[j] = squared_distance(centers.row(assignment[j]), instance.point(j));
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (sizes[i] != 0) continue;
    std::size_t far = 0;
    for (std::size_t j = 1; j < instance.n(); ++j) {
      if (cost[j] > cost[far]) far = j;
    }
    if (cost[far] <= 0.0) continue;  // every point sits on a center
    const auto src = instance.point(far);
    std::copy(src.begin(), src.end(), centers.row(i).begin());
    --sizes[assignment[far]];
    assignment[far] = i;
    sizes[i] = 1;
    cost[far] = 0.0;
    moved = true;
  }
  return moved;
}

Matrix weighted_means(const Instance& instance,
                      std::span<const std::size_t> assignment,
                      std::span<const double> weights, const Matrix& previous) {
  const std::size_t k = previous.rows();
  const std::size_t d = instance.d();
  Matrix sums(k, d, 0.0);
  std::vector<double> mass(k, 0.0);
  for (std::size_t j = 0; j < instance.n(); ++j) {
    const std::size_t i = assignment[j];
    const auto x = instance.point(j);
    auto row = sums.row(i);
    for (std::size_t c = 0; c < d; ++c) row[c] += weights[j] * x[c];
    mass[i] += weights[j];
  }
  Matrix centers = previous;
  for (std::size_t i = 0; i < k; ++i) {
    if (mass[i] <= 0.0) continue;
    for (std::size_t c = 0; c < d; ++c) centers(i, c) = sums(i, c) / mass[i];
  }
  return centers;
}

bool converged(double previous, double current, double tol) {
  if (current <= 0.0) return true;
  return previous - current < tol * previous;
}

// Shared alternation: `update` maps (assignment, centers) to new centers,
// `score` evaluates a nearest assignment.
template <typename Update, typename Score>
CenterSet alternate(const Instance& instance, Matrix centers,
                    CenterMethod provenance, const LloydOptions& options,
                    Update update, Score score) {
  if (options.max_iters == 0) throw UsageError("max_iters must be positive");
  CenterSet result;
  result.provenance = provenance;
  std::vector<std::size_t> assignment = nearest_assignment(instance, centers);
  double cost = score(centers, assignment);
  result.cost_history.push_back(cost);
  for (std::size_t iter = 0; iter < options.max_iters; ++iter) {
    Matrix next = update(assignment, centers);
    std::vector<std::size_t> next_assignment = nearest_assignment(instance, next);
    if (reseed_empty(instance, next, next_assignment)) {
      next_assignment = nearest_assignment(instance, next);
    }
    const double next_cost = score(next, next_assignment);
    ++result.iterations;
    if (next_cost > cost) break;  // numerical noise only; keep the better set
    const bool done = converged(cost, next_cost, options.tol);
    centers = std::move(next);
    assignment = std::move(next_assignment);
    cost = next_cost;
    result.cost_history.push_back(cost);
    if (done) break;
  }
  result.centers = std::move(centers);
  result.score = cost;
  result.restart_scores = {cost};
  return result;
}

// Multiplicative-weights heuristic for more than two groups: centers are
// group-weighted means, group weights grow with their current cost. Keeps the
// best center set seen, starting from `previous`.
Matrix multi_group_fair_update(const Instance& instance,
                               std::span<const std::size_t> assignment,
                               const Matrix& previous) {
  constexpr std::size_t kRounds = 30;
  constexpr double kStep = 0.5;
  const std::size_t colors = instance.num_colors();
  std::vector<double> group_weight(colors, 1.0 / static_cast<double>(colors));
  Matrix best = previous;
  double best_cost = fair_cost(instance, previous, assignment);
  std::vector<double> w(instance.n());
  for (std::size_t round = 0; round < kRounds; ++round) {
    for (std::size_t j = 0; j < instance.n(); ++j) {
      const ColorId h = instance.color_of(j);
      w[j] = group_weight[h] / static_cast<double>(instance.count(h));
    }
    Matrix candidate = weighted_means(instance, assignment, w, previous);
    std::vector<double> per_color(colors, 0.0);
    for (std::size_t j = 0; j < instance.n(); ++j) {
      per_color[instance.color_of(j)] +=
          squared_distance(candidate.row(assignment[j]), instance.point(j));
    }
    double worst = 0.0;
    for (ColorId h = 0; h < colors; ++h) {
      per_color[h] /= static_cast<double>(instance.count(h));
      worst = std::max(worst, per_color[h]);
    }
    if (worst < best_cost) {
      best_cost = worst;
      best = candidate;
    }
    if (worst <= 0.0) break;
    double norm = 0.0;
    for (ColorId h = 0; h < colors; ++h) {
      group_weight[h] *= std::exp(kStep * per_color[h] / worst);
      norm += group_weight[h];
    }
    for (double& g : group_weight) g /= norm;
  }
  return best;
}

}  // namespace

std::vector<std::size_t> nearest_assignment(const Instance& instance,
                                            const Matrix& centers, int p,
                                            Metric metric) {
  std::vector<std::size_t> assignment(instance.n(), 0);
  for (std::size_t j = 0; j < instance.n(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centers.rows(); ++i) {
      const double dist =
          metric == Metric::kEuclidean
              ? squared_distance(centers.row(i), instance.point(j))
              : distance_pow(centers.row(i), instance.point(j), p, metric);
      if (dist < best) {
        best = dist;
        assignment[j] = i;
      }
    }
  }
  return assignment;
}

CenterSet kmeanspp_init(const Instance& instance, std::size_t k,
                        std::span<const double> weights, std::uint64_t seed) {
  check_weights(instance, weights);
  if (k == 0) throw UsageError("k must be positive");
  if (k > instance.n()) {
    throw UsageError("k=" + std::to_string(k) + " exceeds n=" +
                     std::to_string(instance.n()));
  }
  const std::size_t distinct = count_distinct_points(instance);
  if (k > distinct) {
    throw UsageError("k=" + std::to_string(k) + " exceeds the " +
                     std::to_string(distinct) + " distinct points by " +
                     std::to_string(k - distinct));
  }

  Rng rng(seed);
  const std::size_t n = instance.n();
  Matrix centers(k, instance.d());
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<double> mass(weights.begin(), weights.end());
  double total = std::accumulate(mass.begin(), mass.end(), 0.0);

  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t pick = sample_index(mass, total, rng);
    const auto src = instance.point(pick);
    std::copy(src.begin(), src.end(), centers.row(c).begin());
    total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      nearest[j] = std::min(nearest[j], squared_distance(src, instance.point(j)));
      mass[j] = weights[j] * nearest[j];
      total += mass[j];
    }
  }

  CenterSet result;
  result.provenance = uniform_weights(weights) ? CenterMethod::kVanilla
                                               : CenterMethod::kWeighted;
  const auto assignment = nearest_assignment(instance, centers);
  result.score = weighted_nearest_cost(instance, centers, assignment, weights);
  result.restart_scores = {result.score};
  result.cost_history = {result.score};
  result.centers = std::move(centers);
  return result;
}

CenterSet lloyd(const Instance& instance, std::size_t k,
                std::span<const double> weights, std::uint64_t seed,
                const LloydOptions& options) {
  CenterSet init = kmeanspp_init(instance, k, weights, seed);
  return alternate(
      instance, std::move(init.centers), init.provenance, options,
      [&](std::span<const std::size_t> assignment, const Matrix& previous) {
        return weighted_means(instance, assignment, weights, previous);
      },
      [&](const Matrix& centers, std::span<const std::size_t> assignment) {
        return weighted_nearest_cost(instance, centers, assignment, weights);
      });
}

namespace detail {

FairUpdate two_group_fair_update(const Instance& instance,
                                 std::span<const std::size_t> assignment,
                                 const Matrix& previous_centers,
                                 double gamma_tol) {
  if (instance.num_colors() != 2) {
    throw UsageError("two-group fair update needs exactly two colors");
  }
  const std::size_t k = previous_centers.rows();
  const std::size_t d = instance.d();

  // Per cluster and group: mass, mean, and scatter around the mean.
  struct GroupStats {
    std::vector<double> count;
    Matrix mean;
    std::vector<double> scatter;
  };
  std::vector<GroupStats> stats(2);
  for (auto& s : stats) {
    s.count.assign(k, 0.0);
    s.mean = Matrix(k, d, 0.0);
    s.scatter.assign(k, 0.0);
  }
  for (std::size_t j = 0; j < instance.n(); ++j) {
    auto& s = stats[instance.color_of(j)];
    const std::size_t i = assignment[j];
    s.count[i] += 1.0;
    const auto x = instance.point(j);
    for (std::size_t c = 0; c < d; ++c) s.mean(i, c) += x[c];
  }
  for (auto& s : stats) {
    for (std::size_t i = 0; i < k; ++i) {
      if (s.count[i] == 0.0) continue;
      for (std::size_t c = 0; c < d; ++c) s.mean(i, c) /= s.count[i];
    }
  }
  for (std::size_t j = 0; j < instance.n(); ++j) {
    auto& s = stats[instance.color_of(j)];
    const std::size_t i = assignment[j];
    s.scatter[i] += squared_distance(s.mean.row(i), instance.point(j));
  }
  const double n_a = static_cast<double>(instance.count(0));
  const double n_b = static_cast<double>(instance.count(1));

  auto centers_for = [&](double gamma) {
    Matrix centers = previous_centers;
    for (std::size_t i = 0; i < k; ++i) {
      const double ca = stats[0].count[i];
      const double cb = stats[1].count[i];
      if (ca == 0.0 && cb == 0.0) continue;
      double wa = gamma * ca / n_a;
      double wb = (1.0 - gamma) * cb / n_b;
      if (cb == 0.0) {
        wa = 1.0;
      } else if (ca == 0.0) {
        wb = 1.0;
      } else if (wa + wb == 0.0) {
        continue;  // unreachable for gamma in [0, 1]
      }
      for (std::size_t c = 0; c < d; ++c) {
        centers(i, c) =
            (wa * stats[0].mean(i, c) + wb * stats[1].mean(i, c)) / (wa + wb);
      }
    }
    return centers;
  };
  auto group_costs_for = [&](const Matrix& centers) {
    double cost[2] = {0.0, 0.0};
    for (int g = 0; g < 2; ++g) {
      for (std::size_t i = 0; i < k; ++i) {
        if (stats[g].count[i] == 0.0) continue;
        cost[g] += stats[g].scatter[i] +
                   stats[g].count[i] *
                       squared_distance(stats[g].mean.row(i), centers.row(i));
      }
    }
    return std::pair{cost[0] / n_a, cost[1] / n_b};
  };
  auto objective = [&](double gamma) {
    const auto [a, b] = group_costs_for(centers_for(gamma));
    return std::max(a, b);
  };

  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > gamma_tol) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (objective(m1) <= objective(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  double gamma = 0.5 * (lo + hi);
  double best = objective(gamma);
  // Edges win ties: at a boundary optimum the binding cost is flat there.
  for (double edge : {0.0, 1.0}) {
    const double v = objective(edge);
    if (v <= best) {
      best = v;
      gamma = edge;
    }
  }
  FairUpdate update;
  update.gamma = gamma;
  update.centers = centers_for(gamma);
  std::tie(update.cost_a, update.cost_b) = group_costs_for(update.centers);
  return update;
}

}  // namespace detail

CenterSet socially_fair_centers(const Instance& instance, std::size_t k,
                                std::uint64_t seed,
                                const LloydOptions& options) {
  if (instance.num_colors() < 2) {
    throw UsageError("socially fair centers need at least two colors");
  }
  const std::vector<double> uniform(instance.n(), 1.0);
  CenterSet init = kmeanspp_init(instance, k, uniform, seed);
  auto score = [&](const Matrix& centers,
                   std::span<const std::size_t> assignment) {
    return fair_cost(instance, centers, assignment);
  };
  if (instance.num_colors() == 2) {
    return alternate(
        instance, std::move(init.centers), CenterMethod::kSociallyFair, options,
        [&](std::span<const std::size_t> assignment, const Matrix& previous) {
          return detail::two_group_fair_update(instance, assignment, previous)
              .centers;
        },
        score);
  }
  return alternate(
      instance, std::move(init.centers), CenterMethod::kSociallyFair, options,
      [&](std::span<const std::size_t> assignment, const Matrix& previous) {
        return multi_group_fair_update(instance, assignment, previous);
      },
      score);
}

CenterSet best_of_restarts(const Instance& instance, std::size_t k,
                           CenterMethod method, std::size_t restarts,
                           std::uint64_t seed, const LloydOptions& options) {
  if (restarts == 0) throw UsageError("restarts must be positive");
  std::vector<double> weights;
  if (method == CenterMethod::kVanilla) {
    weights.assign(instance.n(), 1.0);
  } else if (method == CenterMethod::kWeighted) {
    weights = inverse_group_size_weights(instance);
  }

  CenterSet best;
  std::vector<double> scores;
  for (std::size_t r = 0; r < restarts; ++r) {
    CenterSet run = method == CenterMethod::kSociallyFair
                        ? socially_fair_centers(instance, k, seed + r, options)
                        : lloyd(instance, k, weights, seed + r, options);
    run.provenance = method;
    scores.push_back(run.score);
    if (r == 0 || run.score < best.score) {
      best = std::move(run);
      best.chosen_restart = r;
    }
  }
  best.restart_scores = std::move(scores);
  return best;
}

}  // namespace wcfair
