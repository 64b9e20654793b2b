#include "wcfair/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>

#include "wcfair/error.hpp"

namespace wcfair {

std::size_t FlowNetwork::add_node(const FlowNode& node) {
  nodes_.push_back(node);
  return nodes_.size() - 1;
}

std::size_t FlowNetwork::add_arc(std::size_t tail, std::size_t head,
                                 long capacity, double cost) {
  if (tail >= nodes_.size() || head >= nodes_.size()) {
    throw UsageError("arc endpoint out of range");
  }
  arcs_.push_back({tail, head, capacity, cost});
  return arcs_.size() - 1;
}

long FlowNetwork::total_demand() const {
  long sum = 0;
  for (const auto& node : nodes_) sum += node.demand;
  return sum;
}

std::string label(const FlowNode& node) {
  switch (node.role) {
    case NodeRole::kPoint:
      return "v_" + std::to_string(node.point);
    case NodeRole::kColorCenter:
      return "v_" + std::to_string(node.center) + "^" +
             std::to_string(node.color);
    case NodeRole::kCenter:
      return "c_" + std::to_string(node.center);
    case NodeRole::kSink:
      return "t";
  }
  return "?";
}

void FlowNetwork::write_text(std::ostream& out) const {
  char buf[64];
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    out << "node " << v << ' ' << nodes_[v].demand << ' ' << label(nodes_[v])
        << '\n';
  }
  for (const auto& arc : arcs_) {
    std::snprintf(buf, sizeof buf, "%.17g", arc.cost);
    out << "arc " << arc.tail << ' ' << arc.head << ' ' << arc.capacity << ' '
        << buf << '\n';
  }
}

namespace {

// Residual graph: arc a becomes edges 2a (forward) and 2a+1 (backward).
struct Residual {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> head;
  std::vector<long> cap;
  std::vector<double> cost;

  Residual(const FlowNetwork& network, const std::vector<long>& flow) {
    const auto& arcs = network.arcs();
    out.resize(network.nodes().size());
    head.resize(2 * arcs.size());
    cap.resize(2 * arcs.size());
    cost.resize(2 * arcs.size());
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      head[2 * a] = arcs[a].head;
      head[2 * a + 1] = arcs[a].tail;
      cap[2 * a] = arcs[a].capacity - flow[a];
      cap[2 * a + 1] = flow[a];
      cost[2 * a] = arcs[a].cost;
      cost[2 * a + 1] = -arcs[a].cost;
      out[arcs[a].tail].push_back(2 * a);
      out[arcs[a].head].push_back(2 * a + 1);
    }
  }
};

}  // namespace

Flow min_cost_flow(const FlowNetwork& network) {
  const auto& nodes = network.nodes();
  const auto& arcs = network.arcs();
  if (network.total_demand() != 0) {
    throw UsageError("flow network demands do not sum to zero");
  }
  for (const auto& arc : arcs) {
    if (arc.capacity < 0) throw UsageError("negative arc capacity");
    if (!(arc.cost >= 0.0)) throw UsageError("negative or NaN arc cost");
  }

  const std::size_t nv = nodes.size();
  Flow result;
  result.on_arc.assign(arcs.size(), 0);
  Residual res(network, result.on_arc);

  // excess > 0: supply still to route; < 0: demand still unmet.
  std::vector<long> excess(nv);
  for (std::size_t v = 0; v < nv; ++v) excess[v] = -nodes[v].demand;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> potential(nv, 0.0);
  std::vector<double> dist(nv);
  std::vector<std::size_t> parent(nv);
  std::vector<bool> done(nv);
  using Entry = std::pair<double, std::size_t>;

  while (true) {
    bool any = false;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(done.begin(), done.end(), false);
    for (std::size_t v = 0; v < nv; ++v) {
      if (excess[v] > 0) {
        any = true;
        dist[v] = 0.0;
        parent[v] = static_cast<std::size_t>(-1);
        heap.emplace(0.0, v);
      }
    }
    if (!any) break;

    // Equal distances pop in node order, so the lowest-index deficit node
    // wins ties.
    std::size_t target = static_cast<std::size_t>(-1);
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (done[v] || d > dist[v]) continue;
      done[v] = true;
      if (excess[v] < 0) {
        target = v;
        break;
      }
      for (const std::size_t e : res.out[v]) {
        if (res.cap[e] <= 0) continue;
        const std::size_t w = res.head[e];
        if (done[w]) continue;
        const double reduced =
            std::max(0.0, res.cost[e] + potential[v] - potential[w]);
        const double nd = d + reduced;
        if (nd < dist[w]) {
          dist[w] = nd;
          parent[w] = e;
          heap.emplace(nd, w);
        }
      }
    }
    if (target == static_cast<std::size_t>(-1)) {
      throw DataError("flow network has no feasible flow");
    }

    const double bound = dist[target];
    for (std::size_t v = 0; v < nv; ++v) {
      potential[v] += std::min(dist[v], bound);
    }

    long amount = -excess[target];
    std::size_t v = target;
    while (parent[v] != static_cast<std::size_t>(-1)) {
      const std::size_t e = parent[v];
      amount = std::min(amount, res.cap[e]);
      v = res.head[e ^ 1];
    }
    amount = std::min(amount, excess[v]);
    excess[v] -= amount;
    excess[target] += amount;
    v = target;
    while (parent[v] != static_cast<std::size_t>(-1)) {
      const std::size_t e = parent[v];
      res.cap[e] -= amount;
      res.cap[e ^ 1] += amount;
      v = res.head[e ^ 1];
    }
  }

  for (std::size_t a = 0; a < arcs.size(); ++a) {
    result.on_arc[a] = res.cap[2 * a + 1];
    result.cost += static_cast<double>(result.on_arc[a]) * arcs[a].cost;
  }
  return result;
}

bool is_feasible(const FlowNetwork& network, const std::vector<double>& flow,
                 double tolerance) {
  const auto& arcs = network.arcs();
  if (flow.size() != arcs.size()) return false;
  std::vector<double> balance(network.nodes().size(), 0.0);
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (flow[a] < -tolerance ||
        flow[a] > static_cast<double>(arcs[a].capacity) + tolerance) {
      return false;
    }
    balance[arcs[a].tail] -= flow[a];
    balance[arcs[a].head] += flow[a];
  }
  for (std::size_t v = 0; v < balance.size(); ++v) {
    const double demand = static_cast<double>(network.nodes()[v].demand);
    if (std::abs(balance[v] - demand) > tolerance) return false;
  }
  return true;
}

bool has_negative_residual_cycle(const FlowNetwork& network, const Flow& flow,
                                 double tolerance) {
  const Residual res(network, flow.on_arc);
  const std::size_t nv = network.nodes().size();
  // Bellman-Ford from a virtual root connected to every node at cost 0.
  std::vector<double> dist(nv, 0.0);
  for (std::size_t round = 0; round <= nv; ++round) {
    bool changed = false;
    for (std::size_t v = 0; v < nv; ++v) {
      for (const std::size_t e : res.out[v]) {
        if (res.cap[e] <= 0) continue;
        const std::size_t w = res.head[e];
        if (dist[v] + res.cost[e] < dist[w] - tolerance) {
          dist[w] = dist[v] + res.cost[e];
          changed = true;
        }
      }
    }
    if (!changed) return false;
  }
  return true;
}

}  // namespace wcfair
