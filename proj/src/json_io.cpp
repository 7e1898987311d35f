#include "lnec/json_io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "lnec/error.hpp"

namespace lnec {
namespace {

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(where + ": missing \"" + key + "\"");
  return j.at(key);
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InvalidInput(where + ": expected a string");
  return j.get<std::string>();
}

std::uint64_t as_uint(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    throw InvalidInput(where + ": expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

std::string message_row(std::size_t i) { return "d" + std::to_string(i + 1) + "'"; }

Json ids(const Network& net, const std::vector<std::size_t>& channels) {
  Json a = Json::array();
  for (const std::size_t k : channels) a.push_back(net.channel(k).id);
  return a;
}

Json bound_to_json(const BoundValue& b) {
  Json j;
  j["value"] = b.value ? Json(*b.value) : Json(nullptr);
  if (b.saturated) j["saturated"] = true;
  j["min_field"] = b.min_field ? Json(*b.min_field) : Json(nullptr);
  if (!b.note.empty()) j["note"] = b.note;
  return j;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source_name) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string detail = e.what();
    if (const auto p = detail.find(": "); p != std::string::npos) detail = detail.substr(p + 2);
    throw InvalidInput(source_name + ":" + std::to_string(line) + ":" + std::to_string(col) +
                       ": malformed JSON (line " + std::to_string(line) + ", column " + std::to_string(col) +
                       "): " + detail);
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) { return parse_json(read_text_file(path), path); }

Json field_to_json(const FieldSpec& spec) {
  Json j;
  j["p"] = spec.p;
  j["m"] = spec.m;
  if (spec.m > 1) j["modulus"] = spec.modulus;
  return j;
}

FieldSpec field_from_json(const Json& j) {
  FieldSpec spec;
  spec.p = static_cast<std::uint32_t>(as_uint(member(j, "p", "field"), "field.p"));
  spec.m = j.contains("m") ? static_cast<std::uint32_t>(as_uint(j.at("m"), "field.m")) : 1;
  if (j.contains("modulus")) {
    if (!j.at("modulus").is_array()) throw InvalidInput("field.modulus: expected an array");
    for (const auto& c : j.at("modulus")) spec.modulus.push_back(static_cast<std::uint32_t>(as_uint(c, "field.modulus")));
  } else if (spec.m > 1 && spec.p == 2) {
    spec = FieldSpec::binary(spec.m);
  }
  Field check(spec);  // validates
  return check.spec();
}

FieldSpec parse_field_arg(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
  if (parts.empty() || parts.size() > 3) throw InvalidInput("--field expects \"p[,m[,modulus]]\"");
  auto num = [&](const std::string& x) -> std::uint64_t {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(x, &used, 0);
      if (used != x.size()) throw InvalidInput("");
      return v;
    } catch (...) {
      throw InvalidInput("--field: '" + x + "' is not an integer");
    }
  };
  const auto p = num(parts[0]);
  const auto m = parts.size() > 1 ? num(parts[1]) : 1;
  if (p > 0xFFFFFFFFULL || m > 64) throw InvalidInput("--field: value out of range");
  FieldSpec spec;
  if (parts.size() == 3) {
    if (p != 2 || m < 2) throw InvalidInput("--field: a modulus is only accepted for GF(2^m), m >= 2");
    spec = FieldSpec::binary(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(num(parts[2])));
    if (num(parts[2]) >> (m + 1)) throw InvalidInput("--field: modulus has degree above m");
  } else if (m > 1) {
    if (p != 2) throw InvalidInput("extension fields are only supported in characteristic 2");
    if (m > 16) throw InvalidInput("GF(2^m) is supported for m <= 16");
    spec = FieldSpec::binary(static_cast<std::uint32_t>(m));
  } else {
    spec = FieldSpec::prime(static_cast<std::uint32_t>(p));
  }
  Field check(spec);
  return check.spec();
}

Json network_to_json(const Network& net, const std::optional<FieldSpec>& field) {
  Json j;
  j["source"] = net.node_id(net.source());
  j["rate"] = net.rate();
  if (field) j["field"] = field_to_json(*field);
  j["nodes"] = net.node_ids();
  Json chans = Json::array();
  for (const Channel& c : net.declared_channels()) chans.push_back({{"id", c.id}, {"tail", c.tail}, {"head", c.head}});
  j["channels"] = chans;
  return j;
}

Network network_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("network: expected a JSON object");
  const std::string source = as_string(member(j, "source", "network"), "network.source");
  const auto rate = as_uint(member(j, "rate", "network"), "network.rate");
  if (rate < 1 || rate > 64) throw InvalidInput("network.rate must be between 1 and 64");
  const Json& nodes_j = member(j, "nodes", "network");
  if (!nodes_j.is_array()) throw InvalidInput("network.nodes: expected an array");
  std::vector<std::string> nodes;
  for (const auto& n : nodes_j) nodes.push_back(as_string(n, "network.nodes"));
  const Json& chans_j = member(j, "channels", "network");
  if (!chans_j.is_array()) throw InvalidInput("network.channels: expected an array");
  std::vector<Channel> channels;
  for (std::size_t i = 0; i < chans_j.size(); ++i) {
    const std::string where = "network.channels[" + std::to_string(i) + "]";
    const Json& c = chans_j[i];
    channels.push_back({as_string(member(c, "id", where), where + ".id"), as_string(member(c, "tail", where), where + ".tail"),
                        as_string(member(c, "head", where), where + ".head")});
  }
  return Network(std::move(nodes), std::move(channels), source, static_cast<int>(rate));
}

std::optional<FieldSpec> network_field(const Json& j) {
  if (j.is_object() && j.contains("field")) return field_from_json(j.at("field"));
  return std::nullopt;
}

Json code_to_json(const LnecCode& code, bool with_extended) {
  const Network& net = code.network();
  Json j;
  j["field"] = field_to_json(code.field().spec());
  j["rate"] = code.rate();
  Json kernels = Json::array();
  for (std::size_t i = 0; i < net.num_nodes(); ++i) {
    if (net.out(i).empty()) continue;
    Json k;
    k["node"] = net.node_id(i);
    Json rows = Json::array();
    if (i == net.source())
      for (int r = 0; r < code.rate(); ++r) rows.push_back(message_row(static_cast<std::size_t>(r)));
    else
      rows = ids(net, net.in(i));
    k["rows"] = rows;
    k["cols"] = ids(net, net.out(i));
    const Matrix& m = code.kernels().node[i];
    Json entries = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) entries.push_back(Vector(m.row(r).begin(), m.row(r).end()));
    k["entries"] = entries;
    kernels.push_back(k);
  }
  j["kernels"] = kernels;
  if (with_extended) {
    Json coords = Json::array();
    for (int r = 0; r < code.rate(); ++r) coords.push_back(message_row(static_cast<std::size_t>(r)));
    for (const Channel& c : net.channels()) coords.push_back(c.id);
    j["coordinates"] = coords;
    Json ext = Json::array();
    for (std::size_t e = 0; e < net.num_channels(); ++e)
      ext.push_back({{"channel", net.channel(e).id}, {"vector", code.kernel(e)}});
    j["extended"] = ext;
  }
  return j;
}

LnecCode code_from_json(const Network& net, const Json& j) {
  const FieldSpec spec = field_from_json(member(j, "field", "code"));
  const Field field(spec);
  if (j.contains("rate") && as_uint(j.at("rate"), "code.rate") != static_cast<std::uint64_t>(net.rate()))
    throw InvalidInput("code.rate does not match the network rate");
  LocalKernels k = LocalKernels::zero(net);
  const Json& kernels = member(j, "kernels", "code");
  if (!kernels.is_array()) throw InvalidInput("code.kernels: expected an array");
  std::vector<bool> seen(net.num_nodes(), false);
  for (std::size_t n = 0; n < kernels.size(); ++n) {
    const Json& kj = kernels[n];
    const std::string where = "code.kernels[" + std::to_string(n) + "]";
    const std::string node_id = as_string(member(kj, "node", where), where + ".node");
    const auto node = net.find_node(node_id);
    if (!node) throw InvalidInput(where + ": unknown node '" + node_id + "'");
    if (seen[*node]) throw InvalidInput(where + ": duplicate kernel for node '" + node_id + "'");
    seen[*node] = true;

    std::vector<std::string> expected_rows;
    if (*node == net.source())
      for (int r = 0; r < net.rate(); ++r) expected_rows.push_back(message_row(static_cast<std::size_t>(r)));
    else
      for (const std::size_t d : net.in(*node)) expected_rows.push_back(net.channel(d).id);
    std::vector<std::string> expected_cols;
    for (const std::size_t e : net.out(*node)) expected_cols.push_back(net.channel(e).id);

    auto positions = [&](const char* key, const std::vector<std::string>& expected) {
      const Json& a = member(kj, key, where);
      if (!a.is_array() || a.size() != expected.size())
        throw InvalidInput(where + "." + key + ": expected " + std::to_string(expected.size()) + " ids");
      std::vector<std::size_t> pos;
      for (const auto& id_j : a) {
        const std::string id = as_string(id_j, where + "." + key);
        const auto it = std::find(expected.begin(), expected.end(), id);
        if (it == expected.end()) throw InvalidInput(where + "." + key + ": '" + id + "' does not belong here");
        const auto p = static_cast<std::size_t>(it - expected.begin());
        if (std::find(pos.begin(), pos.end(), p) != pos.end())
          throw InvalidInput(where + "." + key + ": duplicate '" + id + "'");
        pos.push_back(p);
      }
      return pos;
    };
    const auto rows = positions("rows", expected_rows);
    const auto cols = positions("cols", expected_cols);
    const Json& entries = member(kj, "entries", where);
    if (!entries.is_array() || entries.size() != rows.size())
      throw InvalidInput(where + ".entries: expected " + std::to_string(rows.size()) + " rows");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!entries[r].is_array() || entries[r].size() != cols.size())
        throw InvalidInput(where + ".entries[" + std::to_string(r) + "]: expected " + std::to_string(cols.size()) +
                           " values");
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto v = as_uint(entries[r][c], where + ".entries");
        if (v >= field.order()) throw InvalidInput(where + ".entries: value " + std::to_string(v) + " outside " + field.name());
        k.node[*node](rows[r], cols[c]) = static_cast<Element>(v);
      }
    }
  }
  return LnecCode(net, field, std::move(k));
}

Json target_to_json(const Network& net, const Target& t) {
  switch (t.kind) {
    case Target::Kind::node: return net.node_id(t.members.front());
    case Target::Kind::node_set: {
      Json a = Json::array();
      for (const std::size_t n : t.members) a.push_back(net.node_id(n));
      return {{"nodes", a}};
    }
    case Target::Kind::channel_set: return {{"channels", ids(net, t.members)}};
  }
  return nullptr;
}

Json distance_to_json(const Network& net, const DistanceReport& d) {
  Json j;
  j["target"] = target_to_json(net, d.target);
  j["C"] = d.cut;
  j["dimPhi"] = d.dim_phi;
  if (d.defined && d.complete) {
    j["d"] = d.d_by_size;
    j["d_by_rank"] = d.d_by_rank;
    j["d_by_dim"] = d.d_by_dim;
  } else {
    j["d"] = d.defined ? "above weight cap" : "undefined";
  }
  j["bound"] = d.bound;
  j["slack"] = d.defined && d.complete ? Json(d.slack()) : Json(nullptr);
  j["hypothesis"] = d.hypothesis;
  j["witness"] = ids(net, d.witness);
  return j;
}

Json report_to_json(const LnecCode& code, const CodeReport& report) {
  const Network& net = code.network();
  const RegularityClass& rc = report.regularity;
  Json j;
  j["field"] = field_to_json(code.field().spec());
  j["rate"] = code.rate();
  j["regularity"] = {{"regular", rc.regular},
                     {"strongly_regular", rc.strongly_regular},
                     {"strongly_sup_regular", rc.strongly_sup_regular},
                     {"channel_regular", rc.channel_regular},
                     {"collections_complete", rc.collections_complete},
                     {"channel_sets_complete", rc.channel_sets_complete}};
  if (!rc.notes.empty()) j["regularity"]["notes"] = rc.notes;
  Json targets = Json::array();
  for (const auto& d : report.distances) targets.push_back(distance_to_json(net, d));
  j["targets"] = targets;
  Json mds;
  for (const auto& c : report.certifications) {
    Json v = {{"verdict", to_string(c.verdict)}};
    if (!c.reason.empty()) v["reason"] = c.reason;
    mds[to_string(c.kind)] = v;
  }
  j["mds"] = mds;
  j["distance_form_disagreements"] = report.disagreements;
  return j;
}

Json bounds_to_json(const FieldSizeReport& report) {
  Json j;
  j["rate"] = report.rate;
  Json kinds;
  for (const auto& k : report.kinds)
    kinds[k.kind] = {{"tight", bound_to_json(k.tight)},
                     {"loose", bound_to_json(k.loose)},
                     {"construction", bound_to_json(k.construction)}};
  j["bounds"] = kinds;
  return j;
}

Json decode_to_json(const LnecCode& code, const DecodeResult& r) {
  Json j;
  j["status"] = to_string(r.status);
  j["message"] = r.status == DecodeStatus::failure ? Json(nullptr) : Json(r.x);
  Json errs = Json::array();
  for (std::size_t i = 0; i < r.pattern.size(); ++i)
    errs.push_back({{"channel", code.network().channel(r.pattern[i]).id}, {"value", r.error_values[i]}});
  j["errors"] = errs;
  j["weight"] = r.status == DecodeStatus::failure ? Json(nullptr) : Json(r.weight);
  j["distance"] = r.distance;
  j["radius"] = r.radius;
  return j;
}

Json plan_to_json(const std::vector<PlanRecord>& plan) {
  Json a = Json::array();
  for (const auto& p : plan) {
    Json paths = Json::array();
    for (const auto& path : p.paths) paths.push_back({{"origin", path.origin}, {"channels", path.channels}});
    a.push_back({{"sink", p.sink}, {"rho", p.rho}, {"paths", paths}});
  }
  return a;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

Vector parse_vector(const std::string& s) {
  Vector v;
  if (s.empty()) return v;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');) {
    try {
      std::size_t used = 0;
      const unsigned long long x = std::stoull(part, &used, 0);
      if (used != part.size() || x > 0xFFFFFFFFULL) throw InvalidInput("");
      v.push_back(static_cast<Element>(x));
    } catch (...) {
      throw InvalidInput("'" + part + "' is not a field element");
    }
  }
  return v;
}

}  // namespace lnec
