#include "lnec/network.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_set>

#include "flow.hpp"
#include "lnec/error.hpp"

namespace lnec {
namespace {

using detail::FlowGraph;

// Returns a directed cycle among `alive` nodes as a node-id list.
std::vector<std::size_t> find_cycle(std::size_t n, const std::vector<std::vector<std::size_t>>& succ,
                                    const std::vector<bool>& alive) {
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::size_t> stack;
  std::vector<std::size_t> cycle;
  auto dfs = [&](auto&& self, std::size_t u) -> bool {
    state[u] = 1;
    stack.push_back(u);
    for (const std::size_t v : succ[u]) {
      if (!alive[v]) continue;
      if (state[v] == 1) {
        auto it = std::find(stack.begin(), stack.end(), v);
        cycle.assign(it, stack.end());
        return true;
      }
      if (state[v] == 0 && self(self, v)) return true;
    }
    stack.pop_back();
    state[u] = 2;
    return false;
  };
  for (std::size_t u = 0; u < n; ++u)
    if (alive[u] && state[u] == 0 && dfs(dfs, u)) break;
  return cycle;
}

// The part of a network that can reach a set of target nodes, with compact
// node numbering so flow graphs stay small on heavily transformed networks.
struct Upstream {
  static constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> local;     // global node -> local index, or none
  std::vector<std::size_t> channels;  // canonical indices, ascending
  std::size_t nodes = 0;

  std::size_t at(std::size_t node) const { return local[node]; }
};

Upstream upstream_of(const Network& net, const std::vector<std::size_t>& targets) {
  Upstream up;
  up.local.assign(net.num_nodes(), Upstream::none);
  std::vector<std::size_t> stack;
  auto visit = [&](std::size_t u) {
    if (up.local[u] != Upstream::none) return;
    up.local[u] = up.nodes++;
    stack.push_back(u);
  };
  for (const std::size_t t : targets) visit(t);
  visit(net.source());
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (const std::size_t k : net.in(u)) {
      up.channels.push_back(k);
      visit(net.tail(k));
    }
  }
  std::sort(up.channels.begin(), up.channels.end());
  return up;
}

}  // namespace

Network::Network(std::vector<std::string> nodes, std::vector<Channel> channels, std::string source, int rate)
    : rate_(rate), nodes_(std::move(nodes)), declared_(std::move(channels)) {
  if (rate_ < 1) throw InvalidInput("information rate must be at least 1");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].empty()) throw InvalidInput("empty node id");
    if (!node_index_.emplace(nodes_[i], i).second) throw InvalidInput("duplicate node id '" + nodes_[i] + "'");
  }
  const auto s = node_index_.find(source);
  if (s == node_index_.end()) throw InvalidInput("source '" + source + "' is not a declared node");
  source_ = s->second;

  const std::size_t n = nodes_.size();
  std::unordered_set<std::string> seen_ids;
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const Channel& c : declared_) {
    if (c.id.empty()) throw InvalidInput("empty channel id");
    if (!seen_ids.insert(c.id).second) throw InvalidInput("duplicate channel id '" + c.id + "'");
    const auto t = node_index_.find(c.tail);
    const auto h = node_index_.find(c.head);
    if (t == node_index_.end()) throw InvalidInput("channel '" + c.id + "' has undeclared tail '" + c.tail + "'");
    if (h == node_index_.end()) throw InvalidInput("channel '" + c.id + "' has undeclared head '" + c.head + "'");
    if (t->second == h->second) throw InvalidInput("channel '" + c.id + "' is a self-loop");
    if (h->second == source_) throw InvalidInput("channel '" + c.id + "' enters the source node");
    succ[t->second].push_back(h->second);
    ++indegree[h->second];
  }

  // Node-level acyclicity check with a witness on failure.
  {
    std::vector<std::size_t> deg = indegree;
    std::vector<bool> alive(n, true);
    std::queue<std::size_t> ready;
    for (std::size_t u = 0; u < n; ++u)
      if (deg[u] == 0) ready.push(u);
    std::size_t done = 0;
    while (!ready.empty()) {
      const std::size_t u = ready.front();
      ready.pop();
      alive[u] = false;
      ++done;
      for (const std::size_t v : succ[u])
        if (--deg[v] == 0) ready.push(v);
    }
    if (done != n) {
      const auto cycle = find_cycle(n, succ, alive);
      std::string witness;
      for (const std::size_t u : cycle) witness += nodes_[u] + " -> ";
      if (!cycle.empty()) witness += nodes_[cycle.front()];
      throw InvalidInput("network contains a directed cycle: " + witness);
    }
  }

  // Canonical channel order: a channel is ready once every incoming channel of
  // its tail has been placed; the smallest ready id goes next.
  std::vector<std::vector<std::size_t>> declared_out(n);
  for (std::size_t k = 0; k < declared_.size(); ++k) declared_out[node_index_[declared_[k].tail]].push_back(k);
  std::vector<std::size_t> pending = indegree;
  std::set<std::pair<std::string, std::size_t>> ready;
  for (std::size_t u = 0; u < n; ++u)
    if (pending[u] == 0)
      for (const std::size_t k : declared_out[u]) ready.emplace(declared_[k].id, k);
  while (!ready.empty()) {
    const std::size_t k = ready.begin()->second;
    ready.erase(ready.begin());
    channels_.push_back(declared_[k]);
    const std::size_t h = node_index_[declared_[k].head];
    if (--pending[h] == 0)
      for (const std::size_t j : declared_out[h]) ready.emplace(declared_[j].id, j);
  }

  in_.assign(n, {});
  out_.assign(n, {});
  for (std::size_t k = 0; k < channels_.size(); ++k) {
    channel_index_.emplace(channels_[k].id, k);
    tail_.push_back(node_index_[channels_[k].tail]);
    head_.push_back(node_index_[channels_[k].head]);
    out_[tail_.back()].push_back(k);
    in_[head_.back()].push_back(k);
  }
}

Network Network::with_rate(int rate) const {
  return Network(nodes_, declared_, nodes_[source_], rate);
}

std::optional<std::size_t> Network::find_node(std::string_view id) const {
  const auto it = node_index_.find(std::string(id));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Network::node_index(std::string_view id) const {
  if (auto i = find_node(id)) return *i;
  throw InvalidInput("unknown node '" + std::string(id) + "'");
}

std::vector<std::size_t> Network::non_source_nodes() const {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (i != source_) v.push_back(i);
  return v;
}

std::optional<std::size_t> Network::find_channel(std::string_view id) const {
  const auto it = channel_index_.find(std::string(id));
  if (it == channel_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Network::channel_index(std::string_view id) const {
  if (auto k = find_channel(id)) return *k;
  throw InvalidInput("unknown channel '" + std::string(id) + "'");
}

std::vector<std::size_t> Network::in_of(const std::vector<std::size_t>& nodes) const {
  std::vector<std::size_t> v;
  for (const std::size_t t : nodes) v.insert(v.end(), in_[t].begin(), in_[t].end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<bool> Network::ancestors(const std::vector<std::size_t>& targets) const {
  std::vector<bool> mark(nodes_.size(), false);
  std::vector<std::size_t> stack;
  for (const std::size_t t : targets)
    if (!mark[t]) {
      mark[t] = true;
      stack.push_back(t);
    }
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (const std::size_t k : in_[u])
      if (!mark[tail_[k]]) {
        mark[tail_[k]] = true;
        stack.push_back(tail_[k]);
      }
  }
  return mark;
}

std::vector<std::vector<bool>> Network::channel_reachability() const {
  const std::size_t m = channels_.size();
  std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
  // Canonical order is topological, so one backward sweep suffices.
  for (std::size_t d = m; d-- > 0;) {
    reach[d][d] = true;
    for (const std::size_t e : out_[head_[d]])
      for (std::size_t x = 0; x < m; ++x)
        if (reach[e][x]) reach[d][x] = true;
  }
  return reach;
}

Target Target::nodes(std::vector<std::size_t> ts) {
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return {Kind::node_set, std::move(ts)};
}

Target Target::channels(std::vector<std::size_t> es) {
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  return {Kind::channel_set, std::move(es)};
}

std::vector<std::size_t> target_channels(const Network& net, const Target& target) {
  if (target.kind == Target::Kind::channel_set) {
    for (const std::size_t k : target.members)
      if (k >= net.num_channels()) throw InvalidInput("channel index out of range");
    return target.members;
  }
  for (const std::size_t t : target.members)
    if (t >= net.num_nodes()) throw InvalidInput("node index out of range");
  return net.in_of(target.members);
}

std::string describe(const Network& net, const Target& target) {
  std::string s;
  for (const std::size_t x : target.members) {
    if (!s.empty()) s += ",";
    s += target.kind == Target::Kind::channel_set ? net.channel(x).id : net.node_id(x);
  }
  return s;
}

std::vector<std::string> topo_order(const Network& net) {
  std::vector<std::string> ids;
  for (const Channel& c : net.channels()) ids.push_back(c.id);
  return ids;
}

int min_cut_node(const Network& net, std::size_t t) {
  if (t >= net.num_nodes()) throw InvalidInput("node index out of range");
  if (t == net.source()) throw InvalidInput("min-cut target must not be the source");
  const Upstream up = upstream_of(net, {t});
  FlowGraph g(up.nodes);
  for (const std::size_t k : up.channels) g.add_arc(up.at(net.tail(k)), up.at(net.head(k)));
  return g.max_flow(up.at(net.source()), up.at(t));
}

int min_cut_nodeset(const Network& net, const std::vector<std::size_t>& nodes) {
  if (nodes.empty()) throw InvalidInput("min-cut target collection is empty");
  for (const std::size_t t : nodes) {
    if (t >= net.num_nodes()) throw InvalidInput("node index out of range");
    if (t == net.source()) throw InvalidInput("min-cut target collection contains the source");
  }
  if (nodes.size() == 1) return min_cut_node(net, nodes.front());
  const Upstream up = upstream_of(net, nodes);
  FlowGraph g(up.nodes);
  for (const std::size_t k : up.channels) g.add_arc(up.at(net.tail(k)), up.at(net.head(k)));
  const std::size_t super_sink = g.add_node();
  for (const std::size_t t : nodes) {
    const int ct = min_cut_node(net, t);
    for (int i = 0; i < ct; ++i) g.add_arc(up.at(t), super_sink);
  }
  return g.max_flow(up.at(net.source()), super_sink);
}

SplitNetwork split_channels(const Network& net, const std::vector<std::size_t>& channels) {
  std::vector<bool> split(net.num_channels(), false);
  for (const std::size_t k : channels) {
    if (k >= net.num_channels()) throw InvalidInput("channel index out of range");
    split[k] = true;
  }
  std::unordered_map<std::string, int> taken;
  for (const auto& id : net.node_ids()) taken.emplace(id, 0);
  for (const auto& c : net.channels()) taken.emplace(c.id, 0);

  std::vector<std::string> nodes = net.node_ids();
  std::vector<Channel> out_channels;
  std::vector<std::string> first_id(net.num_channels());
  std::vector<std::string> second_id(net.num_channels());
  std::vector<std::string> node_of(net.num_channels());
  for (std::size_t k = 0; k < net.num_channels(); ++k) {
    const Channel& c = net.channel(k);
    if (!split[k]) {
      out_channels.push_back(c);
      first_id[k] = second_id[k] = c.id;
      continue;
    }
    node_of[k] = fresh_id("n[" + c.id + "]", taken);
    nodes.push_back(node_of[k]);
    first_id[k] = c.id;
    second_id[k] = fresh_id(c.id + "~2", taken);
    out_channels.push_back({first_id[k], c.tail, node_of[k]});
    out_channels.push_back({second_id[k], node_of[k], c.head});
  }
  Network g(std::move(nodes), std::move(out_channels), net.node_id(net.source()), net.rate());
  SplitNetwork result{std::move(g), {}, {}, {}};
  for (std::size_t k = 0; k < net.num_channels(); ++k) {
    result.first.push_back(result.network.channel_index(first_id[k]));
    result.second.push_back(result.network.channel_index(second_id[k]));
    result.split_node.push_back(split[k] ? std::optional<std::size_t>(result.network.node_index(node_of[k]))
                                         : std::nullopt);
  }
  return result;
}

int min_cut_channelset(const Network& net, const std::vector<std::size_t>& channels) {
  if (channels.empty()) throw InvalidInput("min-cut channel set is empty");
  const SplitNetwork s = split_channels(net, channels);
  std::vector<std::size_t> nodes;
  for (const std::size_t k : channels) nodes.push_back(*s.split_node[k]);
  return min_cut_nodeset(s.network, nodes);
}

int min_cut(const Network& net, const Target& target) {
  switch (target.kind) {
    case Target::Kind::node:
      return min_cut_node(net, target.members.at(0));
    case Target::Kind::node_set:
      return min_cut_nodeset(net, target.members);
    case Target::Kind::channel_set:
      return min_cut_channelset(net, target.members);
  }
  return 0;
}

namespace {

// Surgery network: every pattern channel is replaced by a channel from a new
// node s_rho to its head. Returns max-flow from s_rho to `t` (a local index).
int surgery_flow(const Network& net, const Upstream& up, const std::vector<bool>& in_rho, std::size_t t) {
  FlowGraph g(up.nodes);
  const std::size_t s_rho = g.add_node();
  for (const std::size_t k : up.channels) g.add_arc(in_rho[k] ? s_rho : up.at(net.tail(k)), up.at(net.head(k)));
  return g.max_flow(s_rho, t);
}

int surgery_rank(const Network& net, const Upstream& up, const std::vector<bool>& in_rho,
                 const std::vector<std::size_t>& nodes) {
  if (nodes.size() == 1) return surgery_flow(net, up, in_rho, up.at(nodes.front()));
  FlowGraph g(up.nodes);
  const std::size_t s_rho = g.add_node();
  for (const std::size_t k : up.channels) g.add_arc(in_rho[k] ? s_rho : up.at(net.tail(k)), up.at(net.head(k)));
  const std::size_t super_sink = g.add_node();
  for (const std::size_t t : nodes) {
    const int ct = surgery_flow(net, up, in_rho, up.at(t));
    for (int i = 0; i < ct; ++i) g.add_arc(up.at(t), super_sink);
  }
  return g.max_flow(s_rho, super_sink);
}

int pattern_rank_nodes(const Network& net, const ErrorPattern& rho, const std::vector<std::size_t>& nodes) {
  std::vector<bool> in_rho(net.num_channels(), false);
  for (const std::size_t k : rho) {
    if (k >= net.num_channels()) throw InvalidInput("pattern channel index out of range");
    in_rho[k] = true;
  }
  for (const std::size_t t : nodes)
    if (t >= net.num_nodes()) throw InvalidInput("node index out of range");
  return surgery_rank(net, upstream_of(net, nodes), in_rho, nodes);
}

}  // namespace

int pattern_rank(const Network& net, const ErrorPattern& rho, const Target& target) {
  if (rho.empty()) return 0;
  if (target.members.empty()) throw InvalidInput("pattern rank target is empty");
  if (target.kind != Target::Kind::channel_set) return pattern_rank_nodes(net, rho, target.members);

  // Channel targets: split the target channels and aim at the inserted nodes.
  // A pattern channel that is itself in the target maps to its first half.
  const SplitNetwork s = split_channels(net, target.members);
  ErrorPattern mapped;
  for (const std::size_t k : rho) {
    if (k >= net.num_channels()) throw InvalidInput("pattern channel index out of range");
    mapped.push_back(s.first[k]);
  }
  std::sort(mapped.begin(), mapped.end());
  std::vector<std::size_t> nodes;
  for (const std::size_t k : target.members) nodes.push_back(*s.split_node[k]);
  return pattern_rank_nodes(s.network, mapped, nodes);
}

std::vector<ErrorPattern> enumerate_R(const Network& net, const Target& target, int delta,
                                      const EnumerationLimits& limits) {
  if (target.kind == Target::Kind::channel_set)
    throw InvalidInput("enumerate_R expects a node or node-collection target");
  if (delta < 0) throw InvalidInput("redundancy must be nonnegative");
  if (delta == 0) return {ErrorPattern{}};

  const Upstream up = upstream_of(net, target.members);
  const std::vector<std::size_t>& candidates = up.channels;
  if (!limits.override_guard && (delta > limits.max_delta || candidates.size() > limits.max_channels))
    throw SizeGuardExceeded("enumerate_R: delta " + std::to_string(delta) + " over " +
                            std::to_string(candidates.size()) + " upstream channels exceeds the enumeration guard");
  const std::size_t r = static_cast<std::size_t>(delta);
  std::vector<ErrorPattern> result;
  if (candidates.size() < r) return result;

  std::vector<bool> in_rho(net.num_channels(), false);
  std::vector<std::size_t> pick(r);
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    ErrorPattern rho;
    for (const std::size_t i : pick) {
      rho.push_back(candidates[i]);
      in_rho[candidates[i]] = true;
    }
    if (surgery_rank(net, up, in_rho, target.members) == delta) result.push_back(std::move(rho));
    for (const std::size_t i : pick) in_rho[candidates[i]] = false;
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == candidates.size() - r + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
  return result;
}

PathFamily disjoint_path_family(const Network& net, std::size_t t, const ErrorPattern& rho) {
  const int omega = net.rate();
  const int ct = min_cut_node(net, t);
  if (ct < omega) throw Infeasible("node '" + net.node_id(t) + "' has min-cut below the rate");
  if (static_cast<int>(rho.size()) != ct - omega)
    throw Infeasible("pattern size differs from the redundancy of '" + net.node_id(t) + "'");

  std::vector<bool> in_rho(net.num_channels(), false);
  for (const std::size_t k : rho) in_rho.at(k) = true;
  const Upstream up = upstream_of(net, {t});

  // Arc tags: channel index k for real channels; -1 - i for message channel
  // d_i'; -1 - omega - k for the imaginary error channel e_k'.
  FlowGraph g(up.nodes);
  const std::size_t super_source = g.add_node();
  for (int i = 0; i < omega; ++i) g.add_arc(super_source, up.at(net.source()), 1, -1 - i);
  for (const std::size_t k : up.channels) {
    if (in_rho[k]) {
      const std::size_t n_e = g.add_node();
      g.add_arc(super_source, n_e, 1, -1 - omega - static_cast<long>(k));
      g.add_arc(n_e, up.at(net.head(k)), 1, static_cast<long>(k));
    } else {
      g.add_arc(up.at(net.tail(k)), up.at(net.head(k)), 1, static_cast<long>(k));
    }
  }
  const int need = omega + static_cast<int>(rho.size());
  if (g.max_flow(super_source, up.at(t), need) < need)
    throw Infeasible("no channel-disjoint path family for node '" + net.node_id(t) + "' and the given pattern");

  PathFamily family;
  for (const auto& arcs : g.decompose(super_source, up.at(t))) {
    Path p;
    const long first = g.tag(arcs.front());
    if (first >= -omega)
      p.origin = {PathOrigin::Kind::message, static_cast<std::size_t>(-1 - first)};
    else
      p.origin = {PathOrigin::Kind::error, static_cast<std::size_t>(-1 - omega - first)};
    for (std::size_t i = 1; i < arcs.size(); ++i) {
      const long tag = g.tag(arcs[i]);
      if (tag >= 0) p.channels.push_back(static_cast<std::size_t>(tag));
    }
    family.paths.push_back(std::move(p));
  }
  std::sort(family.paths.begin(), family.paths.end(), [](const Path& a, const Path& b) {
    if (a.origin.kind != b.origin.kind) return a.origin.kind == PathOrigin::Kind::message;
    return a.origin.index < b.origin.index;
  });
  return family;
}

std::string fresh_id(const std::string& base, std::unordered_map<std::string, int>& taken) {
  std::string id = base;
  while (taken.count(id)) id = base + "#" + std::to_string(++taken[base]);
  taken.emplace(id, 0);
  return id;
}

}  // namespace lnec
