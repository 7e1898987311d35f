#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lnec {

struct Channel {
  std::string id;
  std::string tail;
  std::string head;
};

/// A set of channels, stored as sorted canonical channel indices.
using ErrorPattern = std::vector<std::size_t>;

/// Single-source acyclic network with unit-capacity channels.
///
/// Channels are stored in canonical (upstream-to-downstream) order: index k
/// of every channel-indexed vector or matrix refers to `channel(k)`. Nodes
/// keep their declaration order. Parallel channels are allowed.
class Network {
 public:
  /// Validates the topology; throws InvalidInput on unknown nodes, duplicate
  /// ids, self-loops, channels into the source, or a directed cycle (the
  /// message names a witness cycle).
  Network(std::vector<std::string> nodes, std::vector<Channel> channels, std::string source, int rate);

  int rate() const { return rate_; }
  Network with_rate(int rate) const;

  std::size_t num_nodes() const { return nodes_.size(); }
  const std::string& node_id(std::size_t i) const { return nodes_[i]; }
  const std::vector<std::string>& node_ids() const { return nodes_; }
  std::optional<std::size_t> find_node(std::string_view id) const;
  /// Throws InvalidInput for an unknown id.
  std::size_t node_index(std::string_view id) const;
  std::size_t source() const { return source_; }
  std::vector<std::size_t> non_source_nodes() const;

  std::size_t num_channels() const { return channels_.size(); }
  const Channel& channel(std::size_t k) const { return channels_[k]; }
  const std::vector<Channel>& channels() const { return channels_; }
  /// Channels in the order they were declared.
  const std::vector<Channel>& declared_channels() const { return declared_; }
  std::size_t tail(std::size_t k) const { return tail_[k]; }
  std::size_t head(std::size_t k) const { return head_[k]; }
  std::optional<std::size_t> find_channel(std::string_view id) const;
  std::size_t channel_index(std::string_view id) const;

  /// Incoming / outgoing channels of a node, ascending canonical index.
  const std::vector<std::size_t>& in(std::size_t node) const { return in_[node]; }
  const std::vector<std::size_t>& out(std::size_t node) const { return out_[node]; }

  /// In(T): union of In(t) over the nodes of T, ascending canonical index.
  std::vector<std::size_t> in_of(const std::vector<std::size_t>& nodes) const;

  /// Nodes from which some node of `targets` is reachable (targets included).
  std::vector<bool> ancestors(const std::vector<std::size_t>& targets) const;

  /// upstream[d][e]: there is a path starting with channel d and ending with channel e (d == e included).
  std::vector<std::vector<bool>> channel_reachability() const;

 private:
  int rate_;
  std::vector<std::string> nodes_;
  std::unordered_map<std::string, std::size_t> node_index_;
  std::size_t source_ = 0;
  std::vector<Channel> declared_;
  std::vector<Channel> channels_;
  std::unordered_map<std::string, std::size_t> channel_index_;
  std::vector<std::size_t> tail_;
  std::vector<std::size_t> head_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Where decoding happens: a node, a collection of nodes, or a set of channels.
struct Target {
  enum class Kind { node, node_set, channel_set };
  Kind kind = Kind::node;
  std::vector<std::size_t> members;  // node indices, or canonical channel indices

  static Target node(std::size_t t) { return {Kind::node, {t}}; }
  static Target nodes(std::vector<std::size_t> ts);
  static Target channels(std::vector<std::size_t> es);

  bool operator==(const Target&) const = default;
};

/// Channels whose kernels form the decoding matrix of a target (In(t), In(T) or xi).
std::vector<std::size_t> target_channels(const Network& net, const Target& target);
std::string describe(const Network& net, const Target& target);

/// Canonical channel order as channel ids. Ties between simultaneously
/// available channels are broken by lexicographic id order.
std::vector<std::string> topo_order(const Network& net);

/// Max-flow value from the source to t (0 if t is unreachable).
int min_cut_node(const Network& net, std::size_t t);
/// Min-cut between the source and a node collection via a super sink fed by
/// C_t parallel channels from each member.
int min_cut_nodeset(const Network& net, const std::vector<std::size_t>& nodes);
/// Min-cut between the source and a channel set, via splitting each channel.
int min_cut_channelset(const Network& net, const std::vector<std::size_t>& channels);
int min_cut(const Network& net, const Target& target);

/// Result of inserting a node n_e into each channel e of a set.
struct SplitNetwork {
  Network network;
  /// For every original channel index: the channel carrying its id in the new
  /// network (e itself, or e_1 = (tail, n_e) when split).
  std::vector<std::size_t> first;
  /// For split channels: e_2 = (n_e, head); otherwise equal to `first`.
  std::vector<std::size_t> second;
  /// For split channels: index of n_e; otherwise unset.
  std::vector<std::optional<std::size_t>> split_node;
};

/// Splits each listed channel e = (i, j) into e_1 = (i, n_e) and e_2 = (n_e, j).
SplitNetwork split_channels(const Network& net, const std::vector<std::size_t>& channels);

/// Rank of an error pattern with respect to a target, computed as the min-cut
/// from a new source s_rho whose channels replace each pattern channel
/// (attached to that channel's head). Empty pattern -> 0.
int pattern_rank(const Network& net, const ErrorPattern& rho, const Target& target);

struct EnumerationLimits {
  int max_delta = 6;
  std::size_t max_channels = 40;
  bool override_guard = false;
};

/// All patterns rho with |rho| = rank(rho) = delta for a node or node-set
/// target; {∅} when delta = 0. Only channels upstream of the target can occur.
std::vector<ErrorPattern> enumerate_R(const Network& net, const Target& target, int delta,
                                      const EnumerationLimits& limits = {});

struct PathOrigin {
  enum class Kind { message, error };
  Kind kind = Kind::message;
  std::size_t index = 0;  // message channel number, or canonical channel index of e for e'
  bool operator==(const PathOrigin&) const = default;
};

struct Path {
  PathOrigin origin;
  std::vector<std::size_t> channels;  // real channels, upstream first
};

/// omega + delta_t channel-disjoint paths to t from the imaginary message
/// channels and from rho' (each error path starts with the pattern channel).
struct PathFamily {
  std::vector<Path> paths;
};

/// Throws Infeasible if C_t < omega, |rho| != C_t - omega, or no family exists.
PathFamily disjoint_path_family(const Network& net, std::size_t t, const ErrorPattern& rho);

/// Picks an id not in `taken` derived from `base`, and records it.
std::string fresh_id(const std::string& base, std::unordered_map<std::string, int>& taken);

}  // namespace lnec
