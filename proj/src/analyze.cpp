#include "lnec/analyze.hpp"

#include <map>
#include <numeric>

#include "lnec/error.hpp"

namespace lnec {

const char* to_string(CodeKind kind) {
  switch (kind) {
    case CodeKind::multicast: return "multicast";
    case CodeKind::broadcast: return "broadcast";
    case CodeKind::dispersion: return "dispersion";
    case CodeKind::generic: return "generic";
  }
  return "?";
}

std::optional<CodeKind> parse_kind(std::string_view s) {
  for (CodeKind k : {CodeKind::multicast, CodeKind::broadcast, CodeKind::dispersion, CodeKind::generic})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::not_certified: return "not_certified";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

int singleton_bound(int cut, int rate) { return cut >= rate ? cut - rate + 1 : 1; }

namespace {

TargetEvidence evidence(const LnecCode& code, const Target& target) {
  TargetEvidence ev;
  ev.target = target;
  ev.rate = code.rate();
  ev.cut = min_cut(code.network(), target);
  ev.dim_phi = static_cast<int>(mat_rank(code.field(), message_space(decoding_view(code, target))));
  return ev;
}

struct Families {
  NodeCollections collections;
  bool collections_complete = true;
  bool collections_exhaustive = false;
  std::vector<std::vector<std::size_t>> channel_sets;
  bool channel_sets_complete = true;
  bool channel_sets_exhaustive = false;
  std::vector<std::string> notes;
};

Families families(const Network& net, const AnalyzeOptions& opts) {
  Families f;
  if (!opts.collections.empty()) {
    f.collections = opts.collections;
  } else {
    try {
      f.collections = all_collections(net, opts.max_nodes);
      f.collections_exhaustive = true;
    } catch (const SizeGuardExceeded& e) {
      f.collections_complete = false;
      f.notes.push_back(std::string("collections skipped: ") + e.what());
    }
  }
  if (!opts.channel_sets.empty()) {
    f.channel_sets = opts.channel_sets;
  } else if (net.num_channels() <= opts.max_subset_channels) {
    f.channel_sets_exhaustive = true;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << net.num_channels()); ++mask) {
      std::vector<std::size_t> xi;
      for (std::size_t k = 0; k < net.num_channels(); ++k)
        if (mask >> k & 1U) xi.push_back(k);
      f.channel_sets.push_back(std::move(xi));
    }
    std::stable_sort(f.channel_sets.begin(), f.channel_sets.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
  } else {
    f.channel_sets_complete = false;
    f.notes.push_back("channel sets skipped: " + std::to_string(net.num_channels()) + " channels exceed the limit of " +
                      std::to_string(opts.max_subset_channels));
  }
  return f;
}

bool all_ok(const std::vector<TargetEvidence>& v) {
  return std::all_of(v.begin(), v.end(), [](const TargetEvidence& e) { return e.ok(); });
}

std::string target_name(const Network& net, const Target& t) {
  switch (t.kind) {
    case Target::Kind::node: return net.node_id(t.members.front());
    case Target::Kind::node_set: return "{" + describe(net, t) + "}";
    case Target::Kind::channel_set: return "xi{" + describe(net, t) + "}";
  }
  return "";
}

RegularityClass classify_with(const LnecCode& code, const Families& fam) {
  const Network& net = code.network();
  RegularityClass rc;
  rc.notes = fam.notes;
  rc.collections_complete = fam.collections_complete;
  rc.channel_sets_complete = fam.channel_sets_complete;
  for (const std::size_t t : net.non_source_nodes()) rc.nodes.push_back(evidence(code, Target::node(t)));
  for (const auto& c : fam.collections) rc.collections.push_back(evidence(code, Target::nodes(c)));
  for (const auto& xi : fam.channel_sets) rc.channel_sets.push_back(evidence(code, Target::channels(xi)));

  const bool raw_regular = std::all_of(rc.nodes.begin(), rc.nodes.end(),
                                       [](const TargetEvidence& e) { return e.cut < e.rate || e.ok(); });
  const bool raw_strong = all_ok(rc.nodes);
  const bool raw_sup = fam.collections_complete && all_ok(rc.collections);
  const bool raw_channel = fam.channel_sets_complete && all_ok(rc.channel_sets);

  // With exhaustive families the weaker conditions are sub-cases of the
  // stronger ones, so a non-monotone pattern means a bug.
  if (fam.collections_exhaustive && raw_sup && !raw_strong)
    throw InvariantViolation("strong sup-regularity holds but strong regularity fails");
  if (fam.channel_sets_exhaustive && fam.collections_exhaustive && raw_channel && !raw_sup)
    throw InvariantViolation("channel-regularity holds but strong sup-regularity fails");

  rc.regular = raw_regular;
  rc.strongly_regular = raw_strong && rc.regular;
  rc.strongly_sup_regular = raw_sup && rc.strongly_regular;
  rc.channel_regular = raw_channel && rc.strongly_sup_regular;
  if (raw_channel && !rc.channel_regular)
    rc.notes.push_back("every listed channel set meets min(w, C) but a weaker condition fails");
  return rc;
}

using DistanceCache = std::map<std::pair<int, std::vector<std::size_t>>, DistanceReport>;

const DistanceReport& cached_distance(DistanceCache& cache, const LnecCode& code, const Target& target,
                                      const AnalyzeOptions& opts) {
  const auto key = std::make_pair(target.kind == Target::Kind::channel_set ? 2 : 0, target.members);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, distance_record(code, target, opts)).first;
  return it->second;
}

Certification certify_with(const LnecCode& code, CodeKind kind, const RegularityClass& rc, const Families& fam,
                           const AnalyzeOptions& opts, DistanceCache& cache) {
  const Network& net = code.network();
  Certification cert;
  cert.kind = kind;

  bool flag = false;
  bool family_complete = true;
  std::vector<Target> targets;
  switch (kind) {
    case CodeKind::multicast:
      flag = rc.regular;
      for (const auto& ev : rc.nodes)
        if (ev.cut >= ev.rate) targets.push_back(ev.target);
      break;
    case CodeKind::broadcast:
      flag = rc.strongly_regular;
      for (const auto& ev : rc.nodes) targets.push_back(ev.target);
      break;
    case CodeKind::dispersion:
      flag = rc.strongly_sup_regular;
      family_complete = fam.collections_complete;
      for (const auto& c : fam.collections) targets.push_back(Target::nodes(c));
      break;
    case CodeKind::generic:
      flag = rc.channel_regular;
      family_complete = fam.channel_sets_complete && fam.collections_complete;
      for (const auto& xi : fam.channel_sets) targets.push_back(Target::channels(xi));
      break;
  }
  if (!family_complete) {
    cert.verdict = Verdict::unknown;
    cert.reason = "target family could not be enumerated";
    return cert;
  }
  if (!flag) {
    cert.verdict = Verdict::not_certified;
    cert.reason = std::string("regularity condition for ") + to_string(kind) + " codes fails";
    return cert;
  }

  bool incomplete = false;
  try {
    for (const Target& t : targets) {
      if (min_cut(net, t) == 0) continue;  // nothing reaches it; no distance to certify
      const DistanceReport& d = cached_distance(cache, code, t, opts);
      cert.distances.push_back(d);
      if (!d.defined || !d.complete) {
        incomplete = true;
        continue;
      }
      if (d.slack() != 0) {
        cert.verdict = Verdict::not_certified;
        cert.reason = "distance " + std::to_string(d.d_by_size) + " below bound " + std::to_string(d.bound) +
                      " at " + target_name(net, t);
        return cert;
      }
    }
  } catch (const SizeGuardExceeded& e) {
    cert.verdict = Verdict::unknown;
    cert.reason = e.what();
    return cert;
  }
  cert.verdict = incomplete ? Verdict::unknown : Verdict::certified;
  if (incomplete) cert.reason = "some distances were not determined within the weight cap";
  return cert;
}

}  // namespace

RegularityClass classify(const LnecCode& code, const AnalyzeOptions& opts) {
  return classify_with(code, families(code.network(), opts));
}

DistanceReport min_distance(const LnecCode& code, const Target& target, const AnalyzeOptions& opts) {
  const Network& net = code.network();
  const Field& field = code.field();
  const DecodingView view = decoding_view(code, target);
  if (view.columns.empty()) throw Infeasible("target " + target_name(net, target) + " has no incoming channels");

  DistanceReport r;
  r.target = target;
  r.cut = min_cut(net, target);
  r.bound = singleton_bound(r.cut, code.rate());
  const Matrix& phi = message_space(view);
  r.dim_phi = static_cast<int>(mat_rank(field, phi));
  r.hypothesis = r.dim_phi == std::min(code.rate(), r.cut);
  if (r.dim_phi == 0) throw Infeasible("distance undefined at " + target_name(net, target) + ": dim Phi = 0");
  r.defined = true;

  if (!opts.max_weight && net.num_channels() > opts.max_channels)
    throw SizeGuardExceeded("distance search over " + std::to_string(net.num_channels()) +
                            " channels needs a weight cap (limit " + std::to_string(opts.max_channels) + ")");

  // Channels whose error never reaches the target cannot help a pattern intersect.
  std::vector<std::size_t> cand;
  for (std::size_t k = 0; k < net.num_channels(); ++k) {
    const auto row = view.g.row(k);
    if (std::any_of(row.begin(), row.end(), [](Element x) { return x != 0; })) cand.push_back(k);
  }
  const std::size_t limit = opts.max_weight ? std::min<std::size_t>(cand.size(), static_cast<std::size_t>(*opts.max_weight))
                                            : cand.size();

  for (std::size_t k = 1; k <= limit; ++k) {
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    bool found = false;
    int best_rank = 0;
    int best_dim = 0;
    for (;;) {
      ErrorPattern rho;
      for (const std::size_t i : pick) rho.push_back(cand[i]);
      const Matrix delta = error_space(view, rho);
      if (spaces_intersect_nontrivially(field, delta, phi)) {
        const int rk = pattern_rank(net, rho, target);
        const int dm = static_cast<int>(mat_rank(field, delta));
        if (!found) {
          r.witness = rho;
          best_rank = rk;
          best_dim = dm;
        }
        best_rank = std::min(best_rank, rk);
        best_dim = std::min(best_dim, dm);
        found = true;
      }
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == cand.size() - k + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (found) {
      r.d_by_size = static_cast<int>(k);
      r.d_by_rank = best_rank;
      r.d_by_dim = best_dim;
      break;
    }
  }
  if (r.d_by_size == 0) {
    r.complete = false;
    return r;
  }
  if (r.hypothesis && r.slack() < 0)
    throw InvariantViolation("Singleton-type bound violated at " + target_name(net, target) + ": d = " +
                             std::to_string(r.d_by_size) + " > " + std::to_string(r.bound));
  return r;
}

DistanceReport distance_record(const LnecCode& code, const Target& target, const AnalyzeOptions& opts) {
  try {
    return min_distance(code, target, opts);
  } catch (const Infeasible&) {
    DistanceReport r;
    r.target = target;
    r.cut = min_cut(code.network(), target);
    r.bound = singleton_bound(r.cut, code.rate());
    r.hypothesis = r.cut == 0;
    r.defined = false;
    return r;
  }
}

Certification certify_mds(const LnecCode& code, CodeKind kind, const AnalyzeOptions& opts) {
  const Families fam = families(code.network(), opts);
  const RegularityClass rc = classify_with(code, fam);
  DistanceCache cache;
  return certify_with(code, kind, rc, fam, opts, cache);
}

CodeReport analyze(const LnecCode& code, const std::vector<Target>& targets, const AnalyzeOptions& opts) {
  const Network& net = code.network();
  const Families fam = families(net, opts);
  CodeReport report;
  report.regularity = classify_with(code, fam);
  DistanceCache cache;

  std::vector<Target> wanted = targets;
  if (wanted.empty())
    for (const std::size_t t : net.non_source_nodes()) wanted.push_back(Target::node(t));
  for (const Target& t : wanted) report.distances.push_back(cached_distance(cache, code, t, opts));

  for (CodeKind k : {CodeKind::multicast, CodeKind::broadcast, CodeKind::dispersion, CodeKind::generic})
    report.certifications.push_back(certify_with(code, k, report.regularity, fam, opts, cache));

  for (const auto& [key, d] : cache)
    if (d.defined && d.complete && !d.forms_agree())
      report.disagreements.push_back(target_name(net, d.target) + ": size " + std::to_string(d.d_by_size) + ", rank " +
                                     std::to_string(d.d_by_rank) + ", dim " + std::to_string(d.d_by_dim));
  return report;
}

}  // namespace lnec
