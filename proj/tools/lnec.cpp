// lnec: construct, analyze and decode linear network error-correction codes.
//
// Exit codes: 0 ok, 1 usage or input error, 2 field too small, 3 size guard,
// 4 internal invariant violated.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lnec/error.hpp"
#include "lnec/json_io.hpp"

using namespace lnec;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);)
    if (!part.empty()) out.push_back(part);
  return out;
}

// "t1,t2;t3" -> {{t1,t2},{t3}} as node indices.
NodeCollections parse_collections(const Network& net, const std::string& s) {
  NodeCollections out;
  for (const auto& group : split(s, ';')) {
    std::vector<std::size_t> c;
    for (const auto& id : split(group, ',')) c.push_back(net.node_index(id));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::vector<std::size_t>> parse_channel_sets(const Network& net, const std::string& s) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& group : split(s, ';')) {
    std::vector<std::size_t> xi;
    for (const auto& id : split(group, ',')) xi.push_back(net.channel_index(id));
    std::sort(xi.begin(), xi.end());
    xi.erase(std::unique(xi.begin(), xi.end()), xi.end());
    out.push_back(std::move(xi));
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
}

struct Loaded {
  std::string text;
  Json json;
  Network network;
};

Loaded load_network(const std::string& path) {
  std::string text = read_text_file(path);
  Json j = parse_json(text, path);
  Network net = network_from_json(j);
  return {std::move(text), std::move(j), std::move(net)};
}

int run_construct(const std::string& network_path, const std::string& kind_name, const std::string& field_arg,
                  const std::string& method, std::optional<std::uint64_t> seed, const std::string& collections,
                  const std::string& out_path, bool extended) {
  const auto start = std::chrono::steady_clock::now();
  const Loaded in = load_network(network_path);
  const auto kind = parse_kind(kind_name);
  if (!kind) throw InvalidInput("unknown --kind '" + kind_name + "'");
  FieldSpec spec;
  if (!field_arg.empty())
    spec = parse_field_arg(field_arg);
  else if (auto f = network_field(in.json))
    spec = *f;
  else
    throw InvalidInput("no field given: pass --field or add \"field\" to the network file");

  ConstructOptions opts;
  if (method == "rand") {
    if (!seed) throw InvalidInput("--method rand requires --seed");
    opts.method = Method::random;
    opts.seed = *seed;
  } else if (method != "det") {
    throw InvalidInput("unknown --method '" + method + "'");
  }

  ConstructionResult result = [&] {
    switch (*kind) {
      case CodeKind::multicast: return construct_multicast_mds(in.network, spec, opts);
      case CodeKind::broadcast: return construct_broadcast_mds(in.network, spec, opts);
      case CodeKind::dispersion:
        return construct_dispersion_mds(in.network, spec,
                                        collections.empty() ? NodeCollections{} : parse_collections(in.network, collections),
                                        opts);
      case CodeKind::generic: return construct_generic_mds(in.network, spec, opts);
    }
    throw InvalidInput("unknown kind");
  }();
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";

  const std::string code_text = code_to_json(result.code, extended).dump(2) + "\n";
  write_file(out_path, code_text);

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json manifest;
  manifest["command"] = "construct";
  manifest["kind"] = kind_name;
  manifest["method"] = method;
  manifest["seed"] = seed ? Json(*seed) : Json(nullptr);
  manifest["field"] = field_to_json(result.code.field().spec());
  manifest["version"] = LNEC_VERSION;
  manifest["inputs"] = {{"network", {{"path", network_path}, {"sha256", sha256_hex(in.text)}}}};
  manifest["output"] = {{"path", out_path}, {"sha256", sha256_hex(code_text)}};
  manifest["collections"] = collections.empty() ? Json(nullptr) : Json(collections);
  manifest["wall_time_seconds"] = secs;
  manifest["construction_network"] = {{"nodes", result.work_nodes}, {"channels", result.work_channels}};
  manifest["realized_bound"] = result.tight_bound;
  manifest["warnings"] = result.warnings;
  manifest["path_families"] = plan_to_json(result.plan);
  write_file(out_path + ".manifest.json", manifest.dump(2) + "\n");
  return 0;
}

int run_analyze(const std::string& network_path, const std::string& code_path, const std::string& targets,
                const std::string& collections, const std::string& channel_sets, std::optional<int> max_weight) {
  const Loaded in = load_network(network_path);
  const LnecCode code = code_from_json(in.network, read_json_file(code_path));
  AnalyzeOptions opts;
  opts.max_weight = max_weight;
  std::vector<Target> wanted;
  for (const auto& id : split(targets, ';'))
    for (const auto& t : split(id, ',')) wanted.push_back(Target::node(in.network.node_index(t)));
  if (!collections.empty()) {
    opts.collections = parse_collections(in.network, collections);
    for (const auto& c : opts.collections) wanted.push_back(Target::nodes(c));
  }
  if (!channel_sets.empty()) {
    opts.channel_sets = parse_channel_sets(in.network, channel_sets);
    for (const auto& xi : opts.channel_sets) wanted.push_back(Target::channels(xi));
  }
  if (wanted.empty())
    for (const std::size_t t : in.network.non_source_nodes()) wanted.push_back(Target::node(t));
  const CodeReport report = analyze(code, wanted, opts);
  std::cout << report_to_json(code, report).dump(2) << "\n";
  if (!report.disagreements.empty()) {
    std::cerr << "error: the three minimum-distance forms disagree\n";
    return 4;
  }
  return 0;
}

int run_decode(const std::string& network_path, const std::string& code_path, const std::string& node,
               const std::string& received, const std::string& inject, std::optional<int> max_weight) {
  const Loaded in = load_network(network_path);
  const LnecCode code = code_from_json(in.network, read_json_file(code_path));
  const std::size_t t = in.network.node_index(node);
  DecodeOptions opts;
  opts.analyze.max_weight = max_weight;
  Json out;
  Vector r;
  if (!inject.empty()) {
    Vector x;
    Vector z(in.network.num_channels(), 0);
    for (const auto& part : split(inject, ';')) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw InvalidInput("--inject expects \"X=...;Z=channel:value,...\"");
      const std::string key = part.substr(0, eq);
      const std::string value = part.substr(eq + 1);
      if (key == "X") {
        x = parse_vector(value);
      } else if (key == "Z") {
        for (const auto& item : split(value, ',')) {
          const auto colon = item.rfind(':');
          if (colon == std::string::npos) throw InvalidInput("--inject: error entries look like e3:2");
          const Vector v = parse_vector(item.substr(colon + 1));
          z[in.network.channel_index(item.substr(0, colon))] = v.at(0);
        }
      } else {
        throw InvalidInput("--inject: unknown key '" + key + "'");
      }
    }
    const Transmission tx = transmit(code, x, z);
    r = received_at(code, tx, Target::node(t));
    out["sent"] = x;
    out["received"] = r;
  } else {
    r = parse_vector(received);
  }
  const DecodeResult res = decode_min_distance(code, t, r, opts);
  const Json result = decode_to_json(code, res);
  for (const auto& [k, v] : result.items()) out[k] = v;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_bounds(const std::string& network_path, std::optional<int> rate) {
  const Loaded in = load_network(network_path);
  const Network net = rate ? in.network.with_rate(*rate) : in.network;
  std::cout << bounds_to_json(field_size_bounds(net)).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear network error-correction codes: construction, analysis, decoding"};
  app.require_subcommand(1);

  std::string network, kind, field, method = "det", collections, out, code, targets, channel_sets, node, received,
                                    inject;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_weight, rate;
  bool extended = false;

  auto* construct = app.add_subcommand("construct", "build an MDS code and write it as JSON");
  construct->add_option("--network", network, "network JSON")->required();
  construct->add_option("--kind", kind, "multicast|broadcast|dispersion|generic")->required();
  construct->add_option("--field", field, "p[,m[,modulus]]");
  construct->add_option("--method", method, "det|rand");
  construct->add_option("--seed", seed, "seed for --method rand");
  construct->add_option("--collections", collections, "dispersion collections, e.g. \"t1,t2;t1\"");
  construct->add_option("--out", out, "output code JSON")->required();
  construct->add_flag("--extended", extended, "also write the extended global kernels");

  auto* analyze_cmd = app.add_subcommand("analyze", "regularity, distances and MDS verdicts");
  analyze_cmd->add_option("--network", network)->required();
  analyze_cmd->add_option("--code", code)->required();
  analyze_cmd->add_option("--targets", targets, "node ids, e.g. \"t1,t2\"");
  analyze_cmd->add_option("--collections", collections, "node collections, e.g. \"t1,t2;t1\"");
  analyze_cmd->add_option("--channel-sets", channel_sets, "channel sets, e.g. \"e1,e2;e3\"");
  analyze_cmd->add_option("--max-weight", max_weight, "largest error pattern searched");

  auto* decode_cmd = app.add_subcommand("decode", "minimum-distance decoding at a node");
  decode_cmd->add_option("--network", network)->required();
  decode_cmd->add_option("--code", code)->required();
  decode_cmd->add_option("--node", node)->required();
  auto* recv_opt = decode_cmd->add_option("--received", received, "received symbols, e.g. \"3,2,2\"");
  auto* inj_opt = decode_cmd->add_option("--inject", inject, "\"X=1,2;Z=e3:2,e5:1\"");
  recv_opt->excludes(inj_opt);
  decode_cmd->add_option("--max-weight", max_weight);

  auto* bounds = app.add_subcommand("bounds", "field-size bounds for MDS constructions");
  bounds->add_option("--network", network)->required();
  bounds->add_option("--rate", rate, "override the network rate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*construct) return run_construct(network, kind, field, method, seed, collections, out, extended);
    if (*analyze_cmd) return run_analyze(network, code, targets, collections, channel_sets, max_weight);
    if (*decode_cmd) {
      if (received.empty() && inject.empty()) throw InvalidInput("decode needs --received or --inject");
      return run_decode(network, code, node, received, inject, max_weight);
    }
    if (*bounds) return run_bounds(network, rate);
  } catch (const FieldTooSmall& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SizeGuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
