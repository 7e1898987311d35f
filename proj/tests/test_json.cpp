#include "doctest.h"
#include "fixtures.hpp"
#include "lnec/error.hpp"
#include "lnec/json_io.hpp"

using namespace lnec;

TEST_CASE("malformed JSON names line and column") {
  try {
    parse_json("{\n  \"source\": \"s\",\n  \"rate\": ,\n}", "net.json");
    FAIL("accepted");
  } catch (const InvalidInput& e) {
    const std::string msg = e.what();
    CHECK(msg.find("net.json:3:") != std::string::npos);
    CHECK(msg.find("line 3") != std::string::npos);
  }
}

TEST_CASE("field JSON") {
  CHECK(field_to_json(FieldSpec::binary(4)).dump() == R"({"p":2,"m":4,"modulus":[1,1,0,0,1]})");
  CHECK(field_from_json(Json::parse(R"({"p": 2, "m": 4, "modulus": [1,1,0,0,1]})")) == FieldSpec::binary(4));
  CHECK(field_from_json(Json::parse(R"({"p": 2, "m": 8})")) == FieldSpec::binary(8));
  CHECK(field_from_json(Json::parse(R"({"p": 13})")) == FieldSpec::prime(13));
  CHECK_THROWS_AS(Field(field_from_json(Json::parse(R"({"p": 2, "m": 4, "modulus": [1,0,1,0,1]})"))), InvalidInput);
  CHECK(parse_field_arg("13") == FieldSpec::prime(13));
  CHECK(parse_field_arg("2,4") == FieldSpec::binary(4));
  CHECK(parse_field_arg("2,4,0x19") == FieldSpec::binary(4, 0x19));
  CHECK_THROWS_AS(parse_field_arg("x"), InvalidInput);
}

TEST_CASE("network round trip") {
  for (const auto& [name, net] : fixtures::all()) {
    CAPTURE(name);
    const Network back = network_from_json(network_to_json(net));
    CHECK(back.node_ids() == net.node_ids());
    CHECK(topo_order(back) == topo_order(net));
    CHECK(back.rate() == net.rate());
  }
  CHECK_THROWS_AS(network_from_json(Json::parse(R"({"source": "s", "rate": 1, "nodes": ["s"]})")), InvalidInput);
  CHECK_THROWS_AS(network_from_json(Json::parse(R"({"source": "s", "rate": 1, "nodes": ["s", "a"],
      "channels": [{"id": "x", "tail": "s", "head": "q"}]})")),
                  InvalidInput);
}

TEST_CASE("code round trip") {
  for (const auto& [name, net] : fixtures::all()) {
    CAPTURE(name);
    const LnecCode code = construct_random(net, FieldSpec::binary(4), 3);
    const Json j = code_to_json(code, true);
    CHECK(j.contains("extended"));
    const LnecCode back = code_from_json(net, Json::parse(j.dump()));
    CHECK(back.extended() == code.extended());
    CHECK(back.field() == code.field());
  }
}

TEST_CASE("code JSON accepts permuted rows and columns") {
  const Network p3 = fixtures::three_path();
  const LnecCode code = construct_random(p3, FieldSpec::prime(7), 1);
  Json j = code_to_json(code);
  Json& src = j["kernels"][0];
  std::swap(src["cols"][0], src["cols"][2]);
  for (auto& row : src["entries"]) std::swap(row[0], row[2]);
  CHECK(code_from_json(p3, j).extended() == code.extended());

  Json bad = code_to_json(code);
  bad["kernels"][0]["cols"][0] = "nope";
  CHECK_THROWS_AS(code_from_json(p3, bad), InvalidInput);
}

TEST_CASE("vectors and digests") {
  CHECK(parse_vector("3,2,2") == Vector{3, 2, 2});
  CHECK(parse_vector("0x10") == Vector{16});
  CHECK_THROWS_AS(parse_vector("1,a"), InvalidInput);
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
