#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lnec/code.hpp"

namespace lnec {

enum class Method { deterministic, random };

struct ConstructOptions {
  Method method = Method::deterministic;
  std::uint64_t seed = 0;
  /// Re-checks the CUT-set independence invariant after every channel.
  bool check_invariants = true;
  EnumerationLimits limits;
  /// Upper bound on the number of node collections a dispersion or generic
  /// construction may add; 0 disables the check.
  std::size_t max_collections = 4096;
};

/// One (t, rho) pair of the construction with its disjoint path family,
/// recorded by id so it stays meaningful after restriction to the input network.
struct PlanRecord {
  std::string sink;
  std::vector<std::string> rho;
  struct PathIds {
    std::string origin;  // "d1'" .. or "<channel>'"
    std::vector<std::string> channels;
  };
  std::vector<PathIds> paths;
};

struct ConstructionResult {
  LnecCode code;
  std::vector<PlanRecord> plan;
  std::vector<std::string> warnings;
  /// Sum of |R_t(delta_t)| over the eligible sinks of the network the
  /// multicast step actually ran on.
  std::uint64_t tight_bound = 0;
  /// Number of nodes and channels of that network.
  std::size_t work_nodes = 0;
  std::size_t work_channels = 0;
};

ConstructionResult construct_multicast_mds(const Network& net, const FieldSpec& spec, const ConstructOptions& opts = {});
ConstructionResult construct_broadcast_mds(const Network& net, const FieldSpec& spec, const ConstructOptions& opts = {});

/// Node collections for the dispersion construction and analysis. Empty
/// `collections` means every nonempty set of non-source nodes.
using NodeCollections = std::vector<std::vector<std::size_t>>;
NodeCollections all_collections(const Network& net, std::size_t max_nodes = 10);

ConstructionResult construct_dispersion_mds(const Network& net, const FieldSpec& spec,
                                            const NodeCollections& collections = {},
                                            const ConstructOptions& opts = {});
ConstructionResult construct_generic_mds(const Network& net, const FieldSpec& spec, const ConstructOptions& opts = {},
                                         std::size_t max_channels = 12);

/// Every local coefficient drawn uniformly from the field (seeded).
LnecCode construct_random(const Network& net, const FieldSpec& spec, std::uint64_t seed);

/// Network G' of the broadcast construction. `added` lists the new nodes.
struct Transformed {
  Network network;
  std::vector<std::string> added;
};
Transformed broadcast_transform(const Network& net);
Transformed dispersion_transform(const Network& net, const NodeCollections& collections);

struct BoundValue {
  /// Exact value, or unset when not computed (guard or open question).
  std::optional<std::uint64_t> value;
  bool saturated = false;  // the value overflowed 64 bits and was clamped
  std::string note;
  /// Smallest supported field order strictly above the bound.
  std::optional<std::uint64_t> min_field;
};

struct KindBounds {
  std::string kind;
  BoundValue tight;
  BoundValue loose;
  /// Tight multicast bound on the network the construction really runs on.
  BoundValue construction;
};

struct FieldSizeReport {
  int rate = 1;
  std::vector<KindBounds> kinds;  // multicast, broadcast, dispersion, generic
};

FieldSizeReport field_size_bounds(const Network& net, const EnumerationLimits& limits = {});

/// Smallest supported field order strictly greater than `bound`.
std::optional<std::uint64_t> smallest_field_above(std::uint64_t bound);

/// Binomial coefficient clamped at UINT64_MAX; `saturated` is set on overflow.
std::uint64_t binomial_sat(std::uint64_t n, std::uint64_t k, bool& saturated);

}  // namespace lnec
