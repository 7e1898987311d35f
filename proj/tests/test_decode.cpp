#include "doctest.h"
#include "fixtures.hpp"
#include "lnec/decode.hpp"
#include "lnec/error.hpp"

using namespace lnec;

namespace {

LocalKernels all_ones(const Network& net) {
  LocalKernels k = LocalKernels::zero(net);
  for (auto& m : k.node)
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = 1;
  return k;
}

}  // namespace

TEST_CASE("transmission") {
  const Network p3 = fixtures::three_path();
  const LnecCode code(p3, Field(FieldSpec::prime(5)), all_ones(p3));
  const Target t = Target::node(p3.node_index("t"));
  Vector z(6, 0);
  z[p3.channel_index("e11")] = 1;
  CHECK(received_at(code, transmit(code, Vector{2}, z), t) == Vector{3, 2, 2});

  const Transmission clean = transmit(code, Vector{4}, Vector(6, 0));
  for (std::size_t e = 0; e < 6; ++e) CHECK(clean.outputs[e] == 4);

  Vector impulse(6, 0);
  impulse[p3.channel_index("e21")] = 1;
  const DecodingView view = decoding_view(code, t);
  const auto row = view.g.row(p3.channel_index("e21"));
  CHECK(received_at(code, transmit(code, Vector{0}, impulse), t) == Vector(row.begin(), row.end()));

  CHECK_THROWS_AS(transmit(code, Vector{1, 1}, Vector(6, 0)), DimensionError);
  CHECK_THROWS_AS(transmit(code, Vector{7}, Vector(6, 0)), InvalidInput);
}

TEST_CASE("decoding the repetition code") {
  const Network p3 = fixtures::three_path();
  const LnecCode code(p3, Field(FieldSpec::prime(5)), all_ones(p3));
  const std::size_t t = p3.node_index("t");

  const DecodeResult clean = decode_min_distance(code, t, Vector{3, 3, 3});
  CHECK(clean.status == DecodeStatus::unique);
  CHECK(clean.x == Vector{3});
  CHECK(clean.pattern.empty());
  CHECK(clean.radius == 1);

  const DecodeResult one = decode_min_distance(code, t, Vector{3, 2, 2});
  CHECK(one.status == DecodeStatus::unique);
  CHECK(one.x == Vector{2});
  CHECK(one.weight == 1);

  const DecodeResult two = decode_min_distance(code, t, Vector{1, 2, 3});
  CHECK(two.status == DecodeStatus::failure);

  CHECK_THROWS_AS(decode_min_distance(code, t, Vector{1, 2}), DimensionError);
  const LnecCode zero(p3, Field(FieldSpec::prime(5)), LocalKernels::zero(p3));
  CHECK_THROWS_AS(decode_min_distance(zero, t, Vector{0, 0, 0}), Infeasible);

  DecodeOptions opts;
  opts.max_patterns = 2;
  CHECK_THROWS_AS(decode_min_distance(code, t, Vector{3, 3, 3}, opts), SizeGuardExceeded);
}

TEST_CASE("every single error is corrected on the MDS code") {
  const Network p3 = fixtures::three_path();
  const LnecCode code = construct_multicast_mds(p3, FieldSpec::prime(5)).code;
  const std::size_t t = p3.node_index("t");
  for (Element x = 0; x < 5; ++x)
    for (std::size_t e = 0; e < 6; ++e)
      for (Element v = 1; v < 5; ++v) {
        Vector z(6, 0);
        z[e] = v;
        const Vector r = received_at(code, transmit(code, Vector{x}, z), Target::node(t));
        const DecodeResult d = decode_min_distance(code, t, r);
        REQUIRE(d.status == DecodeStatus::unique);
        REQUIRE(d.x == Vector{x});
      }
}

TEST_CASE("distance one means radius zero") {
  const Network bf = fixtures::bfly();
  const LnecCode code = construct_multicast_mds(bf, FieldSpec::prime(3)).code;
  const DecodeResult d = decode_min_distance(code, bf.node_index("t1"), Vector{1, 2});
  CHECK(d.radius == 0);
  CHECK(d.status == DecodeStatus::unique);
}
