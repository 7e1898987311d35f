#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "lnec/code.hpp"
#include "lnec/construct.hpp"

namespace lnec {

enum class CodeKind { multicast, broadcast, dispersion, generic };
const char* to_string(CodeKind kind);
std::optional<CodeKind> parse_kind(std::string_view s);

struct AnalyzeOptions {
  /// Largest pattern weight searched; unset = exhaustive (refused above
  /// `max_channels` channels).
  std::optional<int> max_weight;
  std::size_t max_channels = 20;
  /// Node collections for strong sup-regularity / dispersion; empty = all
  /// (only when |V| <= max_nodes).
  NodeCollections collections;
  std::size_t max_nodes = 10;
  /// Channel sets for channel-regularity / generic; empty = all nonempty
  /// subsets (only when |E| <= max_subset_channels).
  std::vector<std::vector<std::size_t>> channel_sets;
  std::size_t max_subset_channels = 12;
};

struct TargetEvidence {
  Target target;
  int rate = 1;
  int cut = 0;
  int dim_phi = 0;
  bool ok() const { return dim_phi == std::min(rate, cut); }
};

struct RegularityClass {
  bool regular = false;
  bool strongly_regular = false;
  bool strongly_sup_regular = false;
  bool channel_regular = false;
  /// False when the collection / channel-set family could not be enumerated
  /// and no explicit family was given; the matching flag is then false.
  bool collections_complete = true;
  bool channel_sets_complete = true;
  std::vector<TargetEvidence> nodes;
  std::vector<TargetEvidence> collections;
  std::vector<TargetEvidence> channel_sets;
  std::vector<std::string> notes;
};

RegularityClass classify(const LnecCode& code, const AnalyzeOptions& opts = {});

struct DistanceReport {
  Target target;
  int cut = 0;
  int dim_phi = 0;
  /// Singleton-type bound: C - w + 1 if C >= w, else 1.
  int bound = 1;
  /// dim Phi = min(w, C): the hypothesis under which the bound is asserted.
  bool hypothesis = false;
  bool defined = false;  // false when dim Phi = 0
  /// False when the search stopped at max_weight without an intersecting pattern.
  bool complete = true;
  int d_by_size = 0;
  int d_by_rank = 0;
  int d_by_dim = 0;
  ErrorPattern witness;
  int slack() const { return bound - d_by_size; }
  bool forms_agree() const { return d_by_size == d_by_rank && d_by_size == d_by_dim; }
};

/// Brute-force minimum distance under the three equivalent definitions.
/// Throws Infeasible if the target has no incoming channels or dim Phi = 0,
/// SizeGuardExceeded on oversize networks without a weight cap, and
/// InvariantViolation if the bound is beaten while its hypothesis holds.
DistanceReport min_distance(const LnecCode& code, const Target& target, const AnalyzeOptions& opts = {});

/// Like min_distance but reports an undefined distance instead of throwing.
DistanceReport distance_record(const LnecCode& code, const Target& target, const AnalyzeOptions& opts = {});

/// Singleton-type bound for a target of the given min-cut.
int singleton_bound(int cut, int rate);

enum class Verdict { certified, not_certified, unknown };
const char* to_string(Verdict v);

struct Certification {
  CodeKind kind;
  Verdict verdict = Verdict::unknown;
  std::string reason;
  std::vector<DistanceReport> distances;
};

Certification certify_mds(const LnecCode& code, CodeKind kind, const AnalyzeOptions& opts = {});

struct CodeReport {
  RegularityClass regularity;
  std::vector<DistanceReport> distances;
  std::vector<Certification> certifications;
  /// Targets where the three distance forms disagree (d_by_size is used).
  std::vector<std::string> disagreements;
};

/// Regularity, distances for `targets` (default: every non-source node), and
/// all four MDS verdicts.
CodeReport analyze(const LnecCode& code, const std::vector<Target>& targets = {}, const AnalyzeOptions& opts = {});

}  // namespace lnec
