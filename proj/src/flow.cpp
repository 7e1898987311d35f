#include "flow.hpp"

#include <algorithm>
#include <queue>

namespace lnec::detail {

std::size_t FlowGraph::add_arc(std::size_t from, std::size_t to, int capacity, long tag) {
  const std::size_t id = arcs_.size();
  arcs_.push_back({to, capacity, 0, tag});
  arcs_.push_back({from, 0, 0, tag});
  adj_[from].push_back(id);
  adj_[to].push_back(id + 1);
  return id;
}

int FlowGraph::max_flow(std::size_t source, std::size_t sink, int limit) {
  if (source == sink) return 0;
  int total = 0;
  std::vector<std::size_t> via(adj_.size());
  std::vector<bool> seen(adj_.size());
  while (total < limit) {
    std::fill(seen.begin(), seen.end(), false);
    std::queue<std::size_t> frontier;
    frontier.push(source);
    seen[source] = true;
    while (!frontier.empty() && !seen[sink]) {
      const std::size_t u = frontier.front();
      frontier.pop();
      for (const std::size_t a : adj_[u]) {
        const Arc& arc = arcs_[a];
        if (seen[arc.to] || arc.flow >= arc.capacity) continue;
        seen[arc.to] = true;
        via[arc.to] = a;
        frontier.push(arc.to);
      }
    }
    if (!seen[sink]) break;
    int push = limit - total;
    for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1U].to)
      push = std::min(push, arcs_[via[v]].capacity - arcs_[via[v]].flow);
    for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1U].to) {
      arcs_[via[v]].flow += push;
      arcs_[via[v] ^ 1U].flow -= push;
    }
    total += push;
  }
  return total;
}

std::vector<std::vector<std::size_t>> FlowGraph::decompose(std::size_t source, std::size_t sink) const {
  std::vector<int> remaining(arcs_.size(), 0);
  for (std::size_t a = 0; a < arcs_.size(); a += 2) remaining[a] = std::max(arcs_[a].flow, 0);

  std::vector<std::vector<std::size_t>> paths;
  for (;;) {
    std::vector<std::size_t> path;
    std::size_t u = source;
    while (u != sink) {
      std::size_t next = arcs_.size();
      for (const std::size_t a : adj_[u])
        if (a % 2 == 0 && remaining[a] > 0) {
          next = a;
          break;
        }
      if (next == arcs_.size()) break;
      --remaining[next];
      path.push_back(next);
      u = arcs_[next].to;
    }
    if (u != sink || path.empty()) break;
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace lnec::detail
