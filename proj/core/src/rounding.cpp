#include "wcfair/rounding.hpp"

#include <cmath>

#include "wcfair/metrics.hpp"

namespace wcfair {

Matrix IntegralAssignment::x() const {
  Matrix out(sizes.size(), assignment.size());
  for (std::size_t j = 0; j < assignment.size(); ++j) out(assignment[j], j) = 1;
  return out;
}

double snap_mass(double mass) {
  const double nearest = std::round(mass);
  return std::abs(mass - nearest) <= kMassSnap ? nearest : mass;
}

Matrix color_masses(const Matrix& x, const Instance& instance) {
  Matrix mass(x.rows(), instance.num_colors());
  for (std::size_t j = 0; j < instance.n(); ++j) {
    const ColorId h = instance.color_of(j);
    for (std::size_t i = 0; i < x.rows(); ++i) mass(i, h) += x(i, j);
  }
  return mass;
}

namespace {

void check_input(const FractionalSolution& xfrac, const Instance& instance,
                 const Matrix& centers) {
  if (xfrac.x.cols() != instance.n() || xfrac.x.rows() != centers.rows()) {
    throw UsageError("fractional assignment shape does not match k x n");
  }
  if (centers.cols() != instance.d()) {
    throw UsageError("center dimensionality does not match instance");
  }
}

long floor_of(double m) { return static_cast<long>(std::floor(snap_mass(m))); }
long ceil_of(double m) { return static_cast<long>(std::ceil(snap_mass(m))); }

void require_balanced(const FlowNetwork& network) {
  if (network.total_demand() != 0) {
    throw InternalError("rounding network demands do not balance");
  }
}

IntegralAssignment tally(std::vector<std::size_t> assignment,
                         const Instance& instance, std::size_t k) {
  const auto counts = ClusterCounts::from(instance, assignment, k);
  return {std::move(assignment), counts.color, counts.size};
}

}  // namespace

std::vector<FlowNetwork> build_rawlsian_networks(
    const FractionalSolution& xfrac, const Instance& instance,
    const Matrix& centers, int p, Metric metric) {
  check_input(xfrac, instance, centers);
  const std::size_t k = centers.rows();
  const Matrix mass = color_masses(xfrac.x, instance);
  std::vector<FlowNetwork> networks;
  for (ColorId h = 0; h < instance.num_colors(); ++h) {
    FlowNetwork net;
    const auto& members = instance.members(h);
    const double n_h = static_cast<double>(members.size());
    for (const std::size_t j : members) {
      net.add_node({-1, NodeRole::kPoint, j, 0, h});
    }
    const std::size_t first_center = members.size();
    long floors = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const long f = floor_of(mass(i, h));
      floors += f;
      net.add_node({f, NodeRole::kColorCenter, 0, i, h});
    }
    const std::size_t sink = net.add_node(
        {static_cast<long>(members.size()) - floors, NodeRole::kSink, 0, 0, h});
    for (std::size_t a = 0; a < members.size(); ++a) {
      const std::size_t j = members[a];
      for (std::size_t i = 0; i < k; ++i) {
        if (!(xfrac.x(i, j) > kAssignmentPruneThreshold)) continue;
        const double d =
            distance_pow(centers.row(i), instance.point(j), p, metric);
        net.add_arc(a, first_center + i, 1, d / n_h);
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      net.add_arc(first_center + i, sink,
                  ceil_of(mass(i, h)) - floor_of(mass(i, h)), 0.0);
    }
    require_balanced(net);
    networks.push_back(std::move(net));
  }
  return networks;
}

FlowNetwork build_utilitarian_network(const FractionalSolution& xfrac,
                                      const Instance& instance,
                                      const Matrix& centers, int p,
                                      Metric metric) {
  check_input(xfrac, instance, centers);
  const std::size_t k = centers.rows();
  const std::size_t n = instance.n();
  const std::size_t colors = instance.num_colors();
  const Matrix mass = color_masses(xfrac.x, instance);

  FlowNetwork net;
  for (std::size_t j = 0; j < n; ++j) {
    net.add_node({-1, NodeRole::kPoint, j, 0, instance.color_of(j)});
  }
  // v_i^h at n + i*|H| + h, v_i at n + k|H| + i, t last.
  std::vector<long> size_floor(k, 0);
  std::vector<long> size_ceil(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    double total = 0.0;
    for (ColorId h = 0; h < colors; ++h) {
      const long f = floor_of(mass(i, h));
      total += mass(i, h);
      net.add_node({f, NodeRole::kColorCenter, 0, i, h});
    }
    size_floor[i] = floor_of(total);
    size_ceil[i] = ceil_of(total);
  }
  const std::size_t center_base = n + k * colors;
  long size_floor_sum = 0;
  for (std::size_t i = 0; i < k; ++i) {
    long inner = 0;
    for (ColorId h = 0; h < colors; ++h) inner += floor_of(mass(i, h));
    size_floor_sum += size_floor[i];
    net.add_node({size_floor[i] - inner, NodeRole::kCenter, 0, i, 0});
  }
  const std::size_t sink =
      net.add_node({static_cast<long>(n) - size_floor_sum, NodeRole::kSink});

  for (std::size_t j = 0; j < n; ++j) {
    const ColorId h = instance.color_of(j);
    const double n_h = static_cast<double>(instance.count(h));
    for (std::size_t i = 0; i < k; ++i) {
      if (!(xfrac.x(i, j) > kAssignmentPruneThreshold)) continue;
      const double d = distance_pow(centers.row(i), instance.point(j), p, metric);
      net.add_arc(j, n + i * colors + h, 1, d / n_h);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (ColorId h = 0; h < colors; ++h) {
      net.add_arc(n + i * colors + h, center_base + i,
                  ceil_of(mass(i, h)) - floor_of(mass(i, h)), 0.0);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    net.add_arc(center_base + i, sink, size_ceil[i] - size_floor[i], 0.0);
  }
  require_balanced(net);
  return net;
}

void collect_assignment(const FlowNetwork& network, const Flow& flow,
                        std::vector<std::size_t>& assignment) {
  const auto& nodes = network.nodes();
  const auto& arcs = network.arcs();
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (flow.on_arc[a] <= 0) continue;
    const FlowNode& tail = nodes[arcs[a].tail];
    if (tail.role != NodeRole::kPoint) continue;
    assignment[tail.point] = nodes[arcs[a].head].center;
  }
}

namespace {

Flow solve_rounding(const FlowNetwork& net) {
  try {
    return min_cost_flow(net);
  } catch (const DataError& e) {
    throw InternalError(std::string("rounding network infeasible: ") + e.what());
  }
}

}  // namespace

IntegralAssignment rawlsian_round(const FractionalSolution& xfrac,
                                  const Instance& instance,
                                  const Matrix& centers, int p, Metric metric) {
  const auto networks =
      build_rawlsian_networks(xfrac, instance, centers, p, metric);
  std::vector<std::size_t> assignment(instance.n(), centers.rows());
  for (const auto& net : networks) {
    collect_assignment(net, solve_rounding(net), assignment);
  }
  for (const std::size_t i : assignment) {
    if (i >= centers.rows()) throw InternalError("rounding left a point unassigned");
  }
  return tally(std::move(assignment), instance, centers.rows());
}

IntegralAssignment utilitarian_round(const FractionalSolution& xfrac,
                                     const Instance& instance,
                                     const Matrix& centers, int p,
                                     Metric metric) {
  const FlowNetwork net =
      build_utilitarian_network(xfrac, instance, centers, p, metric);
  std::vector<std::size_t> assignment(instance.n(), centers.rows());
  collect_assignment(net, solve_rounding(net), assignment);
  for (const std::size_t i : assignment) {
    if (i >= centers.rows()) throw InternalError("rounding left a point unassigned");
  }
  return tally(std::move(assignment), instance, centers.rows());
}

}  // namespace wcfair
