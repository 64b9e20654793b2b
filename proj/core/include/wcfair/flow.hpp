#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace wcfair {

enum class NodeRole { kPoint, kColorCenter, kCenter, kSink };

struct FlowNode {
  // Negative for supply.
  long demand = 0;
  NodeRole role = NodeRole::kSink;
  std::size_t point = 0;   // kPoint
  std::size_t center = 0;  // kColorCenter, kCenter
  std::size_t color = 0;   // kPoint, kColorCenter, per-color kSink
};

struct FlowArc {
  std::size_t tail = 0;
  std::size_t head = 0;
  long capacity = 0;
  double cost = 0.0;
};

class FlowNetwork {
 public:
  std::size_t add_node(const FlowNode& node);
  std::size_t add_arc(std::size_t tail, std::size_t head, long capacity,
                      double cost);

  const std::vector<FlowNode>& nodes() const noexcept { return nodes_; }
  const std::vector<FlowArc>& arcs() const noexcept { return arcs_; }

  long total_demand() const;

  // Edge-list dump: "node <id> <demand> <role>" and
  // "arc <tail> <head> <capacity> <cost>" lines.
  void write_text(std::ostream& out) const;

 private:
  std::vector<FlowNode> nodes_;
  std::vector<FlowArc> arcs_;
};

std::string label(const FlowNode& node);

struct Flow {
  std::vector<long> on_arc;  // parallel to FlowNetwork::arcs()
  double cost = 0.0;
};

// Successive shortest paths with node potentials. Costs must be nonnegative.
// Throws UsageError on an unbalanced network or a negative cost / capacity,
// DataError when no flow meets the demands.
Flow min_cost_flow(const FlowNetwork& network);

// Net inflow minus demand at every node must be zero and every arc within
// [0, capacity].
bool is_feasible(const FlowNetwork& network, const std::vector<double>& flow,
                 double tolerance = 1e-9);

// True when the residual network of `flow` has a cycle of negative cost
// (beyond `tolerance`), i.e. the flow is not optimal.
bool has_negative_residual_cycle(const FlowNetwork& network, const Flow& flow,
                                 double tolerance = 1e-12);

}  // namespace wcfair
