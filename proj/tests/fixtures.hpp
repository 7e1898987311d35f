#pragma once

#include <string>
#include <vector>

#include "lnec/network.hpp"

namespace fixtures {

inline lnec::Network make(std::vector<std::string> nodes, std::vector<lnec::Channel> channels, int rate) {
  return lnec::Network(std::move(nodes), std::move(channels), "s", rate);
}

// Three branches out of s; c feeds both sinks.
inline lnec::Network bfly(int rate = 2) {
  return make({"s", "a", "b", "c", "t1", "t2"},
              {{"e1", "s", "a"},
               {"e2", "s", "b"},
               {"e3", "s", "c"},
               {"e4", "a", "t1"},
               {"e5", "c", "t1"},
               {"e6", "c", "t2"},
               {"e7", "b", "t2"}},
              rate);
}

// The textbook butterfly with the bottleneck channel m -> n.
inline lnec::Network bfly_classic(int rate = 2) {
  return make({"s", "a", "b", "m", "n", "t1", "t2"},
              {{"sa", "s", "a"},
               {"sb", "s", "b"},
               {"at1", "a", "t1"},
               {"am", "a", "m"},
               {"bm", "b", "m"},
               {"bt2", "b", "t2"},
               {"mn", "m", "n"},
               {"nt1", "n", "t1"},
               {"nt2", "n", "t2"}},
              rate);
}

inline lnec::Network three_path(int rate = 1) {
  return make({"s", "r1", "r2", "r3", "t"},
              {{"e11", "s", "r1"},
               {"e12", "r1", "t"},
               {"e21", "s", "r2"},
               {"e22", "r2", "t"},
               {"e31", "s", "r3"},
               {"e32", "r3", "t"}},
              rate);
}

inline lnec::Network diamond(int rate = 1) {
  return make({"s", "a", "b", "t"}, {{"sa", "s", "a"}, {"sb", "s", "b"}, {"at", "a", "t"}, {"bt", "b", "t"}}, rate);
}

inline lnec::Network chain(int rate = 1) { return make({"s", "a", "t"}, {{"e1", "s", "a"}, {"e2", "a", "t"}}, rate); }

inline lnec::Network single(int rate = 1) { return make({"s", "t"}, {{"e", "s", "t"}}, rate); }

// bfly plus a node x reached only by a channel no sink path needs.
inline lnec::Network bfly_spur() {
  return make({"s", "a", "b", "c", "t1", "t2", "x"},
              {{"e1", "s", "a"},
               {"e2", "s", "b"},
               {"e3", "s", "c"},
               {"e4", "a", "t1"},
               {"e5", "c", "t1"},
               {"e6", "c", "t2"},
               {"e7", "b", "t2"},
               {"e8", "s", "x"}},
              2);
}

// Parallel channels and a relay with two outputs.
inline lnec::Network parallel(int rate = 2) {
  return make({"s", "a", "t"},
              {{"p1", "s", "a"}, {"p2", "s", "a"}, {"q", "s", "t"}, {"a1", "a", "t"}, {"a2", "a", "t"}}, rate);
}

struct Named {
  std::string name;
  lnec::Network net;
};

inline std::vector<Named> all() {
  return {{"bfly", bfly()},       {"bfly_classic", bfly_classic()}, {"three_path", three_path()},
          {"diamond", diamond()}, {"chain", chain()},               {"single", single()},
          {"bfly_spur", bfly_spur()}, {"parallel", parallel()}};
}

}  // namespace fixtures
