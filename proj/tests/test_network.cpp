#include <algorithm>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "lnec/error.hpp"
#include "oracles.hpp"

using namespace lnec;

namespace {

std::size_t pos(const std::vector<std::string>& order, const std::string& id) {
  return static_cast<std::size_t>(std::find(order.begin(), order.end(), id) - order.begin());
}

ErrorPattern pattern(const Network& net, std::initializer_list<const char*> ids) {
  ErrorPattern rho;
  for (const char* id : ids) rho.push_back(net.channel_index(id));
  std::sort(rho.begin(), rho.end());
  return rho;
}

}  // namespace

TEST_CASE("topological order") {
  CHECK(topo_order(fixtures::single()) == std::vector<std::string>{"e"});
  const auto p3 = topo_order(fixtures::three_path());
  for (const char* i : {"1", "2", "3"})
    CHECK(pos(p3, std::string("e") + i + "1") < pos(p3, std::string("e") + i + "2"));
  const auto bf = topo_order(fixtures::bfly_classic());
  CHECK(pos(bf, "am") < pos(bf, "mn"));
  CHECK(pos(bf, "bm") < pos(bf, "mn"));

  // Every channel comes after all channels into its tail.
  for (const auto& [name, net] : fixtures::all()) {
    CAPTURE(name);
    for (std::size_t e = 0; e < net.num_channels(); ++e)
      for (const std::size_t d : net.in(net.tail(e))) CHECK(d < e);
  }
}

TEST_CASE("network validation") {
  CHECK_THROWS_AS(fixtures::make({"s", "a"}, {{"x", "s", "a"}, {"x", "s", "a"}}, 1), InvalidInput);
  CHECK_THROWS_AS(fixtures::make({"s", "a"}, {{"x", "a", "a"}}, 1), InvalidInput);
  CHECK_THROWS_AS(fixtures::make({"s", "a"}, {{"x", "a", "s"}}, 1), InvalidInput);
  CHECK_THROWS_AS(fixtures::make({"s", "a"}, {{"x", "s", "b"}}, 1), InvalidInput);
  CHECK_THROWS_AS(fixtures::make({"s", "a"}, {{"x", "s", "a"}}, 0), InvalidInput);
  try {
    fixtures::make({"s", "a", "b"}, {{"x", "s", "a"}, {"y", "a", "b"}, {"z", "b", "a"}}, 1);
    FAIL("cycle accepted");
  } catch (const InvalidInput& e) {
    const std::string msg = e.what();
    CHECK(msg.find("cycle") != std::string::npos);
    CHECK(msg.find("a -> b -> a") != std::string::npos);
  }
}

TEST_CASE("node min-cut") {
  const Network p3 = fixtures::three_path();
  CHECK(min_cut_node(p3, p3.node_index("t")) == 3);
  const Network bc = fixtures::bfly_classic();
  CHECK(min_cut_node(bc, bc.node_index("t1")) == 2);
  CHECK(min_cut_node(bc, bc.node_index("t2")) == 2);
  const Network iso = fixtures::make({"s", "a", "z"}, {{"x", "s", "a"}}, 1);
  CHECK(min_cut_node(iso, iso.node_index("z")) == 0);

  for (const auto& [name, net] : fixtures::all()) {
    CAPTURE(name);
    for (const std::size_t t : net.non_source_nodes()) {
      CHECK(min_cut_node(net, t) == oracle::min_cut(net, t));
      CHECK(min_cut_node(net, t) == oracle::min_cut_by_removal(net, t));
    }
  }
}

TEST_CASE("node-set min-cut") {
  const Network bf = fixtures::bfly();
  const std::size_t t1 = bf.node_index("t1"), t2 = bf.node_index("t2");
  CHECK(min_cut_nodeset(bf, {t1}) == min_cut_node(bf, t1));
  CHECK(min_cut_nodeset(bf, {t1, t2}) == 3);
  const Network iso = fixtures::make({"s", "r1", "r2", "r3", "t", "z"},
                                     {{"e11", "s", "r1"}, {"e12", "r1", "t"}, {"e21", "s", "r2"},
                                      {"e22", "r2", "t"}, {"e31", "s", "r3"}, {"e32", "r3", "t"}},
                                     1);
  CHECK(min_cut_nodeset(iso, {iso.node_index("t"), iso.node_index("z")}) == 3);
  CHECK_THROWS_AS(min_cut_nodeset(bf, {}), InvalidInput);

  for (const auto& [name, net] : fixtures::all()) {
    CAPTURE(name);
    const auto v = net.non_source_nodes();
    for (std::uint32_t mask = 1; mask < (1u << v.size()); ++mask) {
      std::vector<std::size_t> set;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (mask >> i & 1) set.push_back(v[i]);
      CHECK(min_cut_nodeset(net, set) == oracle::min_cut_set(net, set));
    }
  }
}

TEST_CASE("channel-set min-cut") {
  const Network p3 = fixtures::three_path();
  CHECK(min_cut_channelset(p3, {p3.channel_index("e11")}) == 1);
  CHECK(min_cut_channelset(p3, pattern(p3, {"e12", "e22"})) == 2);
  CHECK(min_cut_channelset(p3, pattern(p3, {"e11", "e12"})) == 1);

  const SplitNetwork sp = split_channels(p3, pattern(p3, {"e11"}));
  CHECK(sp.network.num_nodes() == 6);
  CHECK(sp.network.num_channels() == 7);
  const Channel& first = sp.network.channel(sp.first[p3.channel_index("e11")]);
  CHECK(first.id == "e11");
  CHECK(first.head == "n[e11]");
  CHECK(sp.network.channel(sp.second[p3.channel_index("e11")]).id == "e11~2");
}

TEST_CASE("pattern rank") {
  const Network p3 = fixtures::three_path();
  const Target t = Target::node(p3.node_index("t"));
  CHECK(pattern_rank(p3, {}, t) == 0);
  CHECK(pattern_rank(p3, pattern(p3, {"e12"}), t) == 1);
  CHECK(pattern_rank(p3, pattern(p3, {"e11", "e12"}), t) == 1);
  CHECK(pattern_rank(p3, pattern(p3, {"e11", "e21"}), t) == 2);
  CHECK(pattern_rank(p3, pattern(p3, {"e11", "e21", "e32"}), t) == 3);

  // A pattern never ranks above its size or the target's in-degree.
  for (const auto& [name, net] : fixtures::all()) {
    CAPTURE(name);
    for (const std::size_t node : net.non_source_nodes())
      for (std::uint32_t mask = 1; mask < (1u << net.num_channels()); ++mask) {
        ErrorPattern rho;
        for (std::size_t k = 0; k < net.num_channels(); ++k)
          if (mask >> k & 1) rho.push_back(k);
        const int r = pattern_rank(net, rho, Target::node(node));
        REQUIRE(r <= static_cast<int>(rho.size()));
        REQUIRE(r <= static_cast<int>(net.in(node).size()));
      }
  }
}

TEST_CASE("enumerate_R") {
  const Network p3 = fixtures::three_path();
  const Target t = Target::node(p3.node_index("t"));
  CHECK(enumerate_R(p3, t, 0) == std::vector<ErrorPattern>{{}});
  const auto r = enumerate_R(p3, t, 2);
  CHECK(r.size() == 12);
  for (const auto& rho : r) {
    CHECK(rho.size() == 2);
    CHECK(p3.channel(rho[0]).id[1] != p3.channel(rho[1]).id[1]);  // different paths
  }
  const Network bf = fixtures::bfly();
  CHECK(enumerate_R(bf, Target::node(bf.node_index("t1")), 0).size() == 1);

  EnumerationLimits tight;
  tight.max_delta = 1;
  CHECK_THROWS_AS(enumerate_R(p3, t, 2, tight), SizeGuardExceeded);
  tight.override_guard = true;
  CHECK(enumerate_R(p3, t, 2, tight).size() == 12);
}

TEST_CASE("disjoint path families") {
  const Network bf = fixtures::bfly();
  const PathFamily fam = disjoint_path_family(bf, bf.node_index("t1"), {});
  CHECK(fam.paths.size() == 2);
  for (const Path& p : fam.paths) {
    CHECK(p.origin.kind == PathOrigin::Kind::message);
    CHECK(bf.head(p.channels.back()) == bf.node_index("t1"));
  }

  const Network p3 = fixtures::three_path();
  const std::size_t t = p3.node_index("t");
  const ErrorPattern rho = pattern(p3, {"e11", "e21"});
  const PathFamily f3 = disjoint_path_family(p3, t, rho);
  REQUIRE(f3.paths.size() == 3);
  int messages = 0;
  std::vector<bool> used(p3.num_channels(), false);
  for (const Path& p : f3.paths) {
    for (const std::size_t e : p.channels) {
      CHECK_FALSE(used[e]);
      used[e] = true;
    }
    CHECK(p3.head(p.channels.back()) == t);
    if (p.origin.kind == PathOrigin::Kind::message) {
      ++messages;
      CHECK(p3.channel(p.channels.front()).id == "e31");
    } else {
      CHECK(p.channels.front() == p.origin.index);
    }
  }
  CHECK(messages == 1);

  CHECK_THROWS_AS(disjoint_path_family(p3, t, pattern(p3, {"e11"})), Infeasible);
  CHECK_THROWS_AS(disjoint_path_family(p3, t, pattern(p3, {"e11", "e12"})), Infeasible);
  CHECK_THROWS_AS(disjoint_path_family(fixtures::bfly(3), bf.node_index("t1"), {}), Infeasible);
}
