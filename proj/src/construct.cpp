#include "lnec/construct.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <unordered_map>

#include "lnec/error.hpp"

namespace lnec {
namespace {

// Extended kernels inside the construction are sparse: channels of heavily
// transformed networks only see a handful of upstream coordinates.
struct SparseVec {
  std::vector<std::pair<std::size_t, Element>> nz;  // ascending coordinate

  Element at(std::size_t coord) const {
    auto it = std::lower_bound(nz.begin(), nz.end(), coord,
                               [](const auto& p, std::size_t c) { return p.first < c; });
    return it != nz.end() && it->first == coord ? it->second : 0;
  }
};

SparseVec unit(std::size_t coord) { return SparseVec{{{coord, 1}}}; }

// acc += c * v
void axpy(const Field& field, SparseVec& acc, Element c, const SparseVec& v) {
  if (c == 0) return;
  std::vector<std::pair<std::size_t, Element>> out;
  out.reserve(acc.nz.size() + v.nz.size());
  std::size_t i = 0, j = 0;
  while (i < acc.nz.size() || j < v.nz.size()) {
    if (j == v.nz.size() || (i < acc.nz.size() && acc.nz[i].first < v.nz[j].first)) {
      out.push_back(acc.nz[i++]);
    } else if (i == acc.nz.size() || v.nz[j].first < acc.nz[i].first) {
      out.emplace_back(v.nz[j].first, field.mul(c, v.nz[j].second));
      ++j;
    } else {
      const Element x = field.add(acc.nz[i].second, field.mul(c, v.nz[j].second));
      if (x != 0) out.emplace_back(acc.nz[i].first, x);
      ++i;
      ++j;
    }
  }
  acc.nz = std::move(out);
}

void scale(const Field& field, SparseVec& v, Element c) {
  for (auto& p : v.nz) p.second = field.mul(p.second, c);
}

Vector project(const SparseVec& v, const std::vector<std::size_t>& coords) {
  Vector out(coords.size(), 0);
  std::size_t i = 0;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    while (i < v.nz.size() && v.nz[i].first < coords[j]) ++i;
    if (i < v.nz.size() && v.nz[i].first == coords[j]) out[j] = v.nz[i].second;
  }
  return out;
}

// A (t, rho) pair of the multicast construction with its dynamic CUT set.
struct Pair {
  std::size_t sink;
  ErrorPattern rho;
  PathFamily family;
  std::vector<std::size_t> coords;  // In(s) ∪ rho as extended-kernel coordinates
  std::vector<long> cut;            // one item per path; see item_vector()
  Matrix cut_proj;                  // projections of the CUT items, one row each
};

struct Algo1Output {
  LocalKernels kernels;
  std::vector<SparseVec> ext;
  std::vector<PlanRecord> plan;
  std::vector<std::string> warnings;
  std::uint64_t tight = 0;
};

std::string pair_name(const Network& net, const Pair& p) {
  std::string s = "(t=" + net.node_id(p.sink) + ", rho={";
  for (std::size_t i = 0; i < p.rho.size(); ++i) s += (i ? "," : "") + net.channel(p.rho[i]).id;
  return s + "})";
}

// Lexicographically first coefficient tuple on which every linear form is
// nonzero. Forms are indexed like the tuple. Returns the index of a blocking
// form when the search is exhausted.
std::optional<Vector> choose_tuple(const Field& field, const std::vector<Vector>& forms, std::size_t len,
                                   std::size_t& blocking) {
  const std::uint32_t q = field.order();
  std::vector<std::vector<std::size_t>> ending(len);
  for (std::size_t f = 0; f < forms.size(); ++f) {
    std::size_t last = len;
    for (std::size_t j = len; j-- > 0;)
      if (forms[f][j] != 0) {
        last = j;
        break;
      }
    if (last == len) {
      blocking = f;
      return std::nullopt;
    }
    ending[last].push_back(f);
  }

  Vector c(len, 0);
  std::vector<Element> partial(forms.size(), 0);
  std::size_t last_reject = 0;
  std::function<bool(std::size_t)> dfs = [&](std::size_t j) -> bool {
    if (j == len) return true;
    std::vector<Element> forbidden;
    for (const std::size_t f : ending[j]) forbidden.push_back(field.div(field.neg(partial[f]), forms[f][j]));
    std::sort(forbidden.begin(), forbidden.end());
    for (Element v = 0; v < q; ++v) {
      if (std::binary_search(forbidden.begin(), forbidden.end(), v)) {
        for (const std::size_t f : ending[j])
          if (field.add(partial[f], field.mul(forms[f][j], v)) == 0) last_reject = f;
        continue;
      }
      c[j] = v;
      for (std::size_t f = 0; f < forms.size(); ++f) partial[f] = field.add(partial[f], field.mul(forms[f][j], v));
      if (dfs(j + 1)) return true;
      for (std::size_t f = 0; f < forms.size(); ++f) partial[f] = field.sub(partial[f], field.mul(forms[f][j], v));
    }
    return false;
  };
  if (dfs(0)) return c;
  blocking = last_reject;
  return std::nullopt;
}

bool all_forms_nonzero(const Field& field, const std::vector<Vector>& forms, const Vector& c) {
  for (const Vector& f : forms)
    if (dot(field, f, c) == 0) return false;
  return true;
}

Algo1Output run_algorithm1(const Network& net, const Field& field, const ConstructOptions& opts) {
  const std::size_t w = static_cast<std::size_t>(net.rate());
  const std::size_t ne = net.num_channels();

  std::vector<Pair> pairs;
  for (const std::size_t t : net.non_source_nodes()) {
    const int ct = min_cut_node(net, t);
    if (ct < net.rate()) continue;
    for (ErrorPattern& rho : enumerate_R(net, Target::node(t), ct - net.rate(), opts.limits)) {
      Pair p;
      p.sink = t;
      p.family = disjoint_path_family(net, t, rho);
      p.rho = std::move(rho);
      for (std::size_t i = 0; i < w; ++i) p.coords.push_back(i);
      for (const std::size_t k : p.rho) p.coords.push_back(w + k);
      pairs.push_back(std::move(p));
    }
  }
  if (pairs.empty()) throw Infeasible("no eligible sink: every non-source node has min-cut below the rate");

  Algo1Output out;
  out.tight = pairs.size();
  if (field.order() <= out.tight)
    out.warnings.push_back("field order " + std::to_string(field.order()) + " does not exceed the bound " +
                           std::to_string(out.tight) + "; attempting anyway");

  auto item_vector = [&](long item) -> SparseVec {
    if (item >= 0) return out.ext[static_cast<std::size_t>(item)];
    const long wl = static_cast<long>(w);
    if (item >= -wl) return unit(static_cast<std::size_t>(-1 - item));
    return unit(w + static_cast<std::size_t>(-1 - wl - item));
  };

  // hits[e]: (pair, path slot) for every path that uses channel e.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> hits(ne);
  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    Pair& p = pairs[pi];
    const std::size_t dim = p.coords.size();
    p.cut_proj = Matrix(dim, dim);
    for (std::size_t j = 0; j < p.family.paths.size(); ++j) {
      const Path& path = p.family.paths[j];
      const long item = path.origin.kind == PathOrigin::Kind::message
                            ? -1 - static_cast<long>(path.origin.index)
                            : -1 - static_cast<long>(w) - static_cast<long>(path.origin.index);
      p.cut.push_back(item);
      const Vector v = project(item_vector(item), p.coords);
      std::copy(v.begin(), v.end(), p.cut_proj.row(j).begin());
      for (const std::size_t e : path.channels) hits[e].emplace_back(pi, j);
    }
  }

  out.kernels = LocalKernels::zero(net);
  out.ext.resize(ne);
  std::mt19937_64 rng(opts.seed);

  for (std::size_t e = 0; e < ne; ++e) {
    if (hits[e].empty()) {
      out.ext[e] = unit(w + e);
      continue;
    }
    const std::size_t i = net.tail(e);
    std::vector<SparseVec> basis;
    if (i == net.source())
      for (std::size_t r = 0; r < w; ++r) basis.push_back(unit(r));
    else
      for (const std::size_t d : net.in(i)) basis.push_back(out.ext[d]);
    basis.push_back(unit(w + e));
    const std::size_t len = basis.size();

    std::vector<Vector> forms;
    for (const auto& [pi, slot] : hits[e]) {
      const Pair& p = pairs[pi];
      Matrix others(0, p.coords.size());
      for (std::size_t j = 0; j < p.cut.size(); ++j)
        if (j != slot) others.append_row(p.cut_proj.row(j));
      const Matrix y = nullspace(field, others);
      if (y.rows() != 1)
        throw InvariantViolation("CUT set of " + pair_name(net, p) + " lost independence before channel '" +
                                 net.channel(e).id + "'");
      Vector form(len);
      for (std::size_t b = 0; b < len; ++b) form[b] = dot(field, y.row(0), project(basis[b], p.coords));
      forms.push_back(std::move(form));
    }

    std::optional<Vector> c;
    if (opts.method == Method::random) {
      for (int attempt = 0; attempt < 64 && !c; ++attempt) {
        Vector trial(len);
        for (auto& x : trial) x = static_cast<Element>(rng() % field.order());
        if (all_forms_nonzero(field, forms, trial)) c = std::move(trial);
      }
    }
    std::size_t blocking = 0;
    if (!c) c = choose_tuple(field, forms, len, blocking);
    if (!c) {
      const Pair& p = pairs[hits[e][blocking].first];
      throw FieldTooSmall("no admissible kernel for channel '" + net.channel(e).id + "' in " + field.name() +
                          "; blocked by " + pair_name(net, p));
    }

    // Normalization: the e' coefficient is the e coordinate of g.
    SparseVec g;
    for (std::size_t b = 0; b < len; ++b) axpy(field, g, (*c)[b], basis[b]);
    const Element ge = (*c)[len - 1];
    std::vector<Element> k(len - 1);
    if (ge == 0) {
      axpy(field, g, 1, unit(w + e));
      for (std::size_t b = 0; b + 1 < len; ++b) k[b] = (*c)[b];
    } else {
      const Element inv = field.inv(ge);
      scale(field, g, inv);
      for (std::size_t b = 0; b + 1 < len; ++b) k[b] = field.mul((*c)[b], inv);
    }
    for (std::size_t b = 0; b + 1 < len; ++b) out.kernels.set(net, b, e, k[b]);
    out.ext[e] = std::move(g);

    for (const auto& [pi, slot] : hits[e]) {
      Pair& p = pairs[pi];
      p.cut[slot] = static_cast<long>(e);
      const Vector v = project(out.ext[e], p.coords);
      std::copy(v.begin(), v.end(), p.cut_proj.row(slot).begin());
      if (opts.check_invariants && mat_rank(field, p.cut_proj) != p.coords.size())
        throw InvariantViolation("CUT set of " + pair_name(net, p) + " became dependent at channel '" +
                                 net.channel(e).id + "'");
    }
  }

  for (const Pair& p : pairs) {
    PlanRecord rec;
    rec.sink = net.node_id(p.sink);
    for (const std::size_t k : p.rho) rec.rho.push_back(net.channel(k).id);
    for (const Path& path : p.family.paths) {
      PlanRecord::PathIds ids;
      ids.origin = path.origin.kind == PathOrigin::Kind::message
                       ? "d" + std::to_string(path.origin.index + 1) + "'"
                       : net.channel(path.origin.index).id + "'";
      for (const std::size_t k : path.channels) ids.channels.push_back(net.channel(k).id);
      rec.paths.push_back(std::move(ids));
    }
    out.plan.push_back(std::move(rec));
  }
  return out;
}

// Kernels of a sub-network whose nodes keep their incoming channels.
LocalKernels restrict_kernels(const Network& big, const LocalKernels& kb, const Network& small) {
  LocalKernels ks = LocalKernels::zero(small);
  for (std::size_t e = 0; e < small.num_channels(); ++e) {
    const std::size_t be = big.channel_index(small.channel(e).id);
    const std::size_t i = small.tail(e);
    if (i == small.source()) {
      for (int r = 0; r < small.rate(); ++r) ks.set(small, r, e, kb.coeff(big, r, be));
      continue;
    }
    const auto& in_small = small.in(i);
    const auto& in_big = big.in(big.node_index(small.node_id(i)));
    for (std::size_t r = 0; r < in_small.size(); ++r) {
      const std::size_t bd = big.channel_index(small.channel(in_small[r]).id);
      const std::size_t br = static_cast<std::size_t>(std::find(in_big.begin(), in_big.end(), bd) - in_big.begin());
      ks.set(small, r, e, kb.coeff(big, br, be));
    }
  }
  return ks;
}

// Checks that the code's kernels equal the big-network kernels of the mapped
// channels restricted to In(s) ∪ E.
void verify_restriction(const LnecCode& code, const Network& big, const std::vector<SparseVec>& ext,
                        const std::function<std::string(const std::string&)>& big_id) {
  const Network& net = code.network();
  const std::size_t w = static_cast<std::size_t>(net.rate());
  std::vector<std::size_t> coords;
  for (std::size_t i = 0; i < w; ++i) coords.push_back(i);
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < net.num_channels(); ++k) order.push_back(w + big.channel_index(big_id(net.channel(k).id)));
  coords.insert(coords.end(), order.begin(), order.end());
  // project() wants ascending coordinates.
  std::vector<std::size_t> perm(coords.size());
  for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = j;
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return coords[a] < coords[b]; });
  std::vector<std::size_t> sorted;
  for (const std::size_t j : perm) sorted.push_back(coords[j]);

  for (std::size_t k = 0; k < net.num_channels(); ++k) {
    const Vector p = project(ext[big.channel_index(big_id(net.channel(k).id))], sorted);
    Vector restricted(coords.size());
    for (std::size_t j = 0; j < perm.size(); ++j) restricted[perm[j]] = p[j];
    if (restricted != code.kernel(k))
      throw InvariantViolation("restricted kernel of channel '" + net.channel(k).id +
                               "' does not satisfy the kernel recursion on the input network");
  }
}

Transformed add_collection_nodes(const Network& net, const std::vector<std::vector<std::size_t>>& groups,
                                 const std::vector<std::string>& base_names, bool feed_from_source) {
  std::unordered_map<std::string, int> taken;
  for (const auto& id : net.node_ids()) taken.emplace(id, 0);
  for (const auto& c : net.channels()) taken.emplace(c.id, 0);
  std::vector<std::string> nodes = net.node_ids();
  std::vector<Channel> channels = net.declared_channels();
  Transformed t{net, {}};
  const std::string& s = net.node_id(net.source());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const std::string node = fresh_id(base_names[g], taken);
    nodes.push_back(node);
    t.added.push_back(node);
    int total = 0;
    for (const std::size_t member : groups[g]) {
      const int c = min_cut_node(net, member);
      total += c;
      for (int i = 0; i < c; ++i)
        channels.push_back({fresh_id(net.node_id(member) + "->" + node, taken), net.node_id(member), node});
    }
    if (feed_from_source)
      for (int i = total; i < net.rate(); ++i) channels.push_back({fresh_id(s + "->" + node, taken), s, node});
  }
  t.network = Network(std::move(nodes), std::move(channels), s, net.rate());
  return t;
}

std::string collection_name(const Network& net, const std::vector<std::size_t>& members) {
  std::string s = "T{";
  for (std::size_t i = 0; i < members.size(); ++i) s += (i ? "," : "") + net.node_id(members[i]);
  return s + "}";
}

// Broadcast construction kept on G' so callers can restrict further.
struct BroadcastRun {
  Transformed g;
  Algo1Output out;
};

BroadcastRun run_broadcast(const Network& net, const Field& field, const ConstructOptions& opts) {
  BroadcastRun run{broadcast_transform(net), {}};
  run.out = run_algorithm1(run.g.network, field, opts);
  return run;
}

ConstructionResult finish(LnecCode code, Algo1Output&& out, const Network& work) {
  ConstructionResult r{std::move(code), std::move(out.plan), std::move(out.warnings), out.tight, work.num_nodes(),
                       work.num_channels()};
  return r;
}

}  // namespace

Transformed broadcast_transform(const Network& net) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::string> names;
  for (const std::size_t t : net.non_source_nodes())
    if (min_cut_node(net, t) < net.rate()) {
      groups.push_back({t});
      names.push_back(net.node_id(t) + "'");
    }
  return add_collection_nodes(net, groups, names, true);
}

Transformed dispersion_transform(const Network& net, const NodeCollections& collections) {
  std::vector<std::string> names;
  for (const auto& c : collections) {
    if (c.empty()) throw InvalidInput("empty node collection");
    for (const std::size_t t : c)
      if (t >= net.num_nodes() || t == net.source()) throw InvalidInput("collections may only contain non-source nodes");
    names.push_back(collection_name(net, c));
  }
  return add_collection_nodes(net, collections, names, false);
}

ConstructionResult construct_multicast_mds(const Network& net, const FieldSpec& spec, const ConstructOptions& opts) {
  const Field field(spec);
  Algo1Output out = run_algorithm1(net, field, opts);
  LnecCode code(net, field, out.kernels);
  verify_restriction(code, net, out.ext, [](const std::string& id) { return id; });
  return finish(std::move(code), std::move(out), net);
}

ConstructionResult construct_broadcast_mds(const Network& net, const FieldSpec& spec, const ConstructOptions& opts) {
  const Field field(spec);
  BroadcastRun run = run_broadcast(net, field, opts);
  LnecCode code(net, field, restrict_kernels(run.g.network, run.out.kernels, net));
  verify_restriction(code, run.g.network, run.out.ext, [](const std::string& id) { return id; });
  return finish(std::move(code), std::move(run.out), run.g.network);
}

NodeCollections all_collections(const Network& net, std::size_t max_nodes) {
  if (net.num_nodes() > max_nodes)
    throw SizeGuardExceeded("enumerating all node collections needs |V| <= " + std::to_string(max_nodes) + " (got " +
                            std::to_string(net.num_nodes()) + "); pass an explicit collection family");
  const auto others = net.non_source_nodes();
  NodeCollections all;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << others.size()); ++mask) {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < others.size(); ++i)
      if (mask >> i & 1U) c.push_back(others[i]);
    all.push_back(std::move(c));
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return all;
}

ConstructionResult construct_dispersion_mds(const Network& net, const FieldSpec& spec,
                                            const NodeCollections& collections, const ConstructOptions& opts) {
  const Field field(spec);
  const NodeCollections family = collections.empty() ? all_collections(net) : collections;
  if (opts.max_collections != 0 && family.size() > opts.max_collections)
    throw SizeGuardExceeded("dispersion construction over " + std::to_string(family.size()) + " collections");
  const Transformed g1 = dispersion_transform(net, family);
  BroadcastRun run = run_broadcast(g1.network, field, opts);
  LnecCode code(net, field, restrict_kernels(run.g.network, run.out.kernels, net));
  verify_restriction(code, run.g.network, run.out.ext, [](const std::string& id) { return id; });
  return finish(std::move(code), std::move(run.out), run.g.network);
}

ConstructionResult construct_generic_mds(const Network& net, const FieldSpec& spec, const ConstructOptions& opts,
                                         std::size_t max_channels) {
  const Field field(spec);
  if (net.num_channels() == 0) throw Infeasible("network has no channels");
  if (net.num_channels() > max_channels)
    throw SizeGuardExceeded("generic construction enumerates all channel sets; needs |E| <= " +
                            std::to_string(max_channels));
  std::vector<std::size_t> everything(net.num_channels());
  for (std::size_t k = 0; k < everything.size(); ++k) everything[k] = k;
  const SplitNetwork split = split_channels(net, everything);
  const Network& g1 = split.network;

  NodeCollections family;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << net.num_channels()); ++mask) {
    std::vector<std::size_t> c;
    for (std::size_t k = 0; k < net.num_channels(); ++k)
      if (mask >> k & 1U) c.push_back(*split.split_node[k]);
    std::sort(c.begin(), c.end());
    family.push_back(std::move(c));
  }
  if (opts.max_collections != 0 && family.size() > opts.max_collections)
    throw SizeGuardExceeded("generic construction over " + std::to_string(family.size()) + " channel sets");

  const Transformed g2 = dispersion_transform(g1, family);
  BroadcastRun run = run_broadcast(g2.network, field, opts);
  const Network& big = run.g.network;
  const LocalKernels k1 = restrict_kernels(big, run.out.kernels, g1);

  // k_{d,e}(G) = k_{d2,e1}(G') * k_{d1,d2}(G'), the latter sitting at n_d.
  LocalKernels k = LocalKernels::zero(net);
  for (std::size_t e = 0; e < net.num_channels(); ++e) {
    const std::size_t e1 = split.first[e];
    const std::size_t i = net.tail(e);
    if (i == net.source()) {
      for (int r = 0; r < net.rate(); ++r) k.set(net, r, e, k1.coeff(g1, r, e1));
      continue;
    }
    const auto& in_g1 = g1.in(g1.node_index(net.node_id(i)));
    const auto& in = net.in(i);
    for (std::size_t r = 0; r < in.size(); ++r) {
      const std::size_t d = in[r];
      const std::size_t d2 = split.second[d];
      const std::size_t r1 = static_cast<std::size_t>(std::find(in_g1.begin(), in_g1.end(), d2) - in_g1.begin());
      const Element outer = k1.coeff(g1, r1, e1);
      const Element inner = k1.coeff(g1, 0, d2);
      k.set(net, r, e, field.mul(outer, inner));
    }
  }
  LnecCode code(net, field, std::move(k));
  verify_restriction(code, big, run.out.ext, [](const std::string& id) { return id; });
  return finish(std::move(code), std::move(run.out), big);
}

LnecCode construct_random(const Network& net, const FieldSpec& spec, std::uint64_t seed) {
  const Field field(spec);
  std::mt19937_64 rng(seed);
  LocalKernels k = LocalKernels::zero(net);
  for (Matrix& m : k.node)
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = static_cast<Element>(rng() % field.order());
  return LnecCode(net, field, std::move(k));
}

}  // namespace lnec
