#pragma once

#include <climits>
#include <cstddef>
#include <vector>

namespace lnec::detail {

/// Integer-capacity flow network solved by BFS augmenting paths. Capacities
/// are tiny (unit channels), so the O(E * flow) bound is what we want.
class FlowGraph {
 public:
  explicit FlowGraph(std::size_t nodes) : adj_(nodes) {}

  std::size_t add_node() {
    adj_.emplace_back();
    return adj_.size() - 1;
  }
  std::size_t num_nodes() const { return adj_.size(); }

  /// Returns the arc id; `tag` is carried through path decomposition.
  std::size_t add_arc(std::size_t from, std::size_t to, int capacity = 1, long tag = -1);

  int max_flow(std::size_t source, std::size_t sink, int limit = INT_MAX);

  /// Splits the current flow into unit source-to-sink paths of arc ids.
  /// Assumes the graph is acyclic.
  std::vector<std::vector<std::size_t>> decompose(std::size_t source, std::size_t sink) const;

  long tag(std::size_t arc) const { return arcs_[arc].tag; }
  std::size_t arc_head(std::size_t arc) const { return arcs_[arc].to; }

 private:
  struct Arc {
    std::size_t to;
    int capacity;
    int flow;
    long tag;
  };
  std::vector<Arc> arcs_;  // arc 2k is forward, 2k+1 its residual twin
  std::vector<std::vector<std::size_t>> adj_;
};

}  // namespace lnec::detail
