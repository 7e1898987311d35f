#include <algorithm>
#include <functional>
#include <limits>

#include "lnec/construct.hpp"
#include "lnec/error.hpp"

namespace lnec {
namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b, bool& saturated) {
  if (a > kMax - b) {
    saturated = true;
    return kMax;
  }
  return a + b;
}

BoundValue make(std::uint64_t v, bool saturated) {
  BoundValue b;
  b.value = v;
  b.saturated = saturated;
  if (!saturated) b.min_field = smallest_field_above(v);
  if (!b.min_field) b.note = "no supported field is large enough";
  return b;
}

BoundValue missing(std::string note) {
  BoundValue b;
  b.note = std::move(note);
  return b;
}

// Sum of |R_t(delta_t)| over eligible sinks, plus |V_2| when `broadcast`.
std::uint64_t sum_R(const Network& net, const EnumerationLimits& limits, bool broadcast) {
  std::uint64_t total = 0;
  for (const std::size_t t : net.non_source_nodes()) {
    const int ct = min_cut_node(net, t);
    if (ct >= net.rate())
      total += enumerate_R(net, Target::node(t), ct - net.rate(), limits).size();
    else if (broadcast)
      ++total;
  }
  return total;
}

BoundValue guarded(const std::function<std::uint64_t()>& f) {
  try {
    return make(f(), false);
  } catch (const SizeGuardExceeded& e) {
    return missing(std::string("not computed: ") + e.what());
  }
}

}  // namespace

std::uint64_t binomial_sat(std::uint64_t n, std::uint64_t k, bool& saturated) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kMax) {
      saturated = true;
      return kMax;
    }
  }
  return static_cast<std::uint64_t>(r);
}

std::optional<std::uint64_t> smallest_field_above(std::uint64_t bound) {
  for (std::uint64_t q = bound + 1; q <= 65536 && q > bound; ++q)
    if (FieldSpec::of_order(q)) return q;
  return std::nullopt;
}

FieldSizeReport field_size_bounds(const Network& net, const EnumerationLimits& limits) {
  FieldSizeReport report;
  report.rate = net.rate();
  const int w = net.rate();
  const std::uint64_t ne = net.num_channels();

  std::vector<int> cut(net.num_nodes(), 0);
  std::uint64_t v2 = 0;
  bool sat = false;
  std::uint64_t loose_m = 0;
  for (const std::size_t t : net.non_source_nodes()) {
    cut[t] = min_cut_node(net, t);
    if (cut[t] >= w)
      loose_m = add_sat(loose_m, binomial_sat(ne, static_cast<std::uint64_t>(cut[t] - w), sat), sat);
    else
      ++v2;
  }

  KindBounds multicast{"multicast", {}, make(loose_m, sat), {}};
  multicast.tight = guarded([&] { return sum_R(net, limits, false); });
  multicast.construction = multicast.tight;

  bool sat_b = sat;
  KindBounds broadcast{"broadcast", {}, make(add_sat(loose_m, v2, sat_b), sat_b), {}};
  broadcast.tight = guarded([&] { return sum_R(net, limits, true); });
  broadcast.construction = broadcast.tight;

  KindBounds dispersion{"dispersion", {}, {}, {}};
  try {
    const NodeCollections all = all_collections(net);
    const Transformed g1 = dispersion_transform(net, all);
    std::uint64_t fed = 0;  // sum over T of sum over t in T of C_t
    bool sat_d = false;
    for (const auto& c : all)
      for (const std::size_t t : c) fed = add_sat(fed, static_cast<std::uint64_t>(cut[t]), sat_d);
    std::uint64_t loose = 0;
    std::uint64_t v3 = 0;
    std::vector<int> ct(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      ct[i] = min_cut_nodeset(net, all[i]);
      if (ct[i] >= w)
        loose = add_sat(loose, binomial_sat(add_sat(ne, fed, sat_d), static_cast<std::uint64_t>(ct[i] - w), sat_d),
                        sat_d);
      else
        ++v3;
    }
    dispersion.loose = make(add_sat(loose, v3, sat_d), sat_d);
    dispersion.tight = guarded([&] {
      std::uint64_t total = v3;
      for (std::size_t i = 0; i < all.size(); ++i)
        if (ct[i] >= w) {
          const std::size_t tt = g1.network.node_index(g1.added[i]);
          total += enumerate_R(g1.network, Target::node(tt), ct[i] - w, limits).size();
        }
      return total;
    });
    dispersion.construction = guarded([&] { return sum_R(g1.network, limits, true); });
  } catch (const SizeGuardExceeded& e) {
    dispersion.tight = dispersion.loose = dispersion.construction = missing(std::string("not computed: ") + e.what());
  }

  KindBounds generic{"generic", missing("no tight closed form; see the construction bound"), {}, {}};
  std::vector<std::size_t> everything(net.num_channels());
  for (std::size_t k = 0; k < everything.size(); ++k) everything[k] = k;
  const SplitNetwork split = split_channels(net, everything);
  const Network& g1 = split.network;
  const auto others = g1.non_source_nodes();
  if (others.size() > 16) {
    generic.loose = missing("not computed: the split network has " + std::to_string(others.size()) +
                            " non-source nodes (limit 16)");
  } else {
    bool sat_g = false;
    std::vector<int> cg(g1.num_nodes(), 0);
    std::uint64_t sum_c = 0;
    for (const std::size_t t : others) {
      cg[t] = min_cut_node(g1, t);
      sum_c += static_cast<std::uint64_t>(cg[t]);
    }
    // Every node lies in 2^(n-1) of the collections.
    std::uint64_t fed = sum_c;
    for (std::size_t i = 0; i + 1 < others.size(); ++i) fed = add_sat(fed, fed, sat_g);
    const std::uint64_t top = add_sat(2 * ne, fed, sat_g);
    std::uint64_t loose = 0;
    std::uint64_t small = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << others.size()); ++mask) {
      std::vector<std::size_t> c;
      for (std::size_t i = 0; i < others.size(); ++i)
        if (mask >> i & 1U) c.push_back(others[i]);
      const int cT = min_cut_nodeset(g1, c);
      if (cT >= w)
        loose = add_sat(loose, binomial_sat(top, static_cast<std::uint64_t>(cT - w), sat_g), sat_g);
      else
        ++small;
    }
    generic.loose = make(add_sat(loose, small, sat_g), sat_g);
  }
  if (net.num_channels() > 12) {
    generic.construction = missing("not computed: the generic construction needs |E| <= 12");
  } else {
    generic.construction = guarded([&] {
      NodeCollections family;
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << net.num_channels()); ++mask) {
        std::vector<std::size_t> c;
        for (std::size_t k = 0; k < net.num_channels(); ++k)
          if (mask >> k & 1U) c.push_back(*split.split_node[k]);
        std::sort(c.begin(), c.end());
        family.push_back(std::move(c));
      }
      return sum_R(dispersion_transform(g1, family).network, limits, true);
    });
  }

  report.kinds = {multicast, broadcast, dispersion, generic};
  return report;
}

}  // namespace lnec
