// Python bindings. Documents cross the boundary as JSON text; the Python
// package wraps them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lnec/decode.hpp"
#include "lnec/error.hpp"
#include "lnec/json_io.hpp"

namespace py = pybind11;
using namespace lnec;

namespace {

Network load_network(const std::string& text) { return network_from_json(parse_json(text, "<network>")); }

FieldSpec load_field(const std::string& text) { return field_from_json(parse_json(text, "<field>")); }

std::vector<std::size_t> node_indices(const Network& net, const std::vector<std::string>& ids) {
  std::vector<std::size_t> out;
  for (const auto& id : ids) out.push_back(net.node_index(id));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> channel_indices(const Network& net, const std::vector<std::string>& ids) {
  std::vector<std::size_t> out;
  for (const auto& id : ids) out.push_back(net.channel_index(id));
  std::sort(out.begin(), out.end());
  return out;
}

std::string construct(const std::string& network, const std::string& kind_name, const std::string& field,
                      const std::string& method, std::optional<std::uint64_t> seed,
                      const std::vector<std::vector<std::string>>& collections, bool extended) {
  const Network net = load_network(network);
  const auto kind = parse_kind(kind_name);
  if (!kind) throw InvalidInput("unknown kind '" + kind_name + "'");
  ConstructOptions opts;
  if (method == "rand") {
    if (!seed) throw InvalidInput("method 'rand' requires a seed");
    opts.method = Method::random;
    opts.seed = *seed;
  } else if (method != "det") {
    throw InvalidInput("unknown method '" + method + "'");
  }
  NodeCollections family;
  for (const auto& c : collections) family.push_back(node_indices(net, c));
  const FieldSpec spec = load_field(field);
  ConstructionResult r = [&] {
    switch (*kind) {
      case CodeKind::multicast: return construct_multicast_mds(net, spec, opts);
      case CodeKind::broadcast: return construct_broadcast_mds(net, spec, opts);
      case CodeKind::dispersion: return construct_dispersion_mds(net, spec, family, opts);
      case CodeKind::generic: return construct_generic_mds(net, spec, opts);
    }
    throw InvalidInput("unknown kind");
  }();
  Json out;
  out["code"] = code_to_json(r.code, extended);
  out["warnings"] = r.warnings;
  out["realized_bound"] = r.tight_bound;
  out["path_families"] = plan_to_json(r.plan);
  return out.dump();
}

std::string random_code(const std::string& network, const std::string& field, std::uint64_t seed) {
  const Network net = load_network(network);
  return code_to_json(construct_random(net, load_field(field), seed)).dump();
}

std::string analyze_code(const std::string& network, const std::string& code_text,
                         const std::vector<std::string>& targets,
                         const std::vector<std::vector<std::string>>& collections,
                         const std::vector<std::vector<std::string>>& channel_sets, std::optional<int> max_weight) {
  const Network net = load_network(network);
  const LnecCode code = code_from_json(net, parse_json(code_text, "<code>"));
  AnalyzeOptions opts;
  opts.max_weight = max_weight;
  std::vector<Target> wanted;
  for (const auto& t : targets) wanted.push_back(Target::node(net.node_index(t)));
  for (const auto& c : collections) {
    opts.collections.push_back(node_indices(net, c));
    wanted.push_back(Target::nodes(opts.collections.back()));
  }
  for (const auto& xi : channel_sets) {
    opts.channel_sets.push_back(channel_indices(net, xi));
    wanted.push_back(Target::channels(opts.channel_sets.back()));
  }
  return report_to_json(code, analyze(code, wanted, opts)).dump();
}

std::vector<Element> transmit_to(const std::string& network, const std::string& code_text, const std::string& node,
                                 const std::vector<Element>& x, const std::map<std::string, Element>& errors) {
  const Network net = load_network(network);
  const LnecCode code = code_from_json(net, parse_json(code_text, "<code>"));
  Vector z(net.num_channels(), 0);
  for (const auto& [id, v] : errors) z[net.channel_index(id)] = v;
  return received_at(code, transmit(code, x, z), Target::node(net.node_index(node)));
}

std::string decode(const std::string& network, const std::string& code_text, const std::string& node,
                   const std::vector<Element>& received) {
  const Network net = load_network(network);
  const LnecCode code = code_from_json(net, parse_json(code_text, "<code>"));
  return decode_to_json(code, decode_min_distance(code, net.node_index(node), received)).dump();
}

std::string bounds(const std::string& network, std::optional<int> rate) {
  const Network net = load_network(network);
  return bounds_to_json(field_size_bounds(rate ? net.with_rate(*rate) : net)).dump();
}

}  // namespace

PYBIND11_MODULE(_lnec, m) {
  m.doc() = "Linear network error-correction codes";
  m.attr("__version__") = LNEC_VERSION;

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<FieldTooSmall>(m, "FieldTooSmall", PyExc_RuntimeError);
  py::register_exception<SizeGuardExceeded>(m, "SizeGuardExceeded", PyExc_RuntimeError);
  py::register_exception<Infeasible>(m, "Infeasible", PyExc_RuntimeError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_AssertionError);

  m.def("field_op", [](const std::string& field, Element a, Element b, const std::string& op) {
    const Field f(load_field(field));
    if (!f.contains(a) || !f.contains(b)) throw InvalidInput("operand outside " + f.name());
    const FieldOp kind = op == "add" ? FieldOp::add : op == "sub" ? FieldOp::sub : op == "mul" ? FieldOp::mul
                         : op == "div" ? FieldOp::div : throw InvalidInput("unknown op '" + op + "'");
    return field_op(f, a, b, kind);
  });
  m.def("mat_rank", [](const std::string& field, const std::vector<Vector>& rows) {
    return mat_rank(Field(load_field(field)), Matrix::from_rows(rows));
  });
  m.def("topo_order", [](const std::string& network) { return topo_order(load_network(network)); });
  m.def("min_cut", [](const std::string& network, const std::vector<std::string>& nodes) {
    const Network net = load_network(network);
    return min_cut_nodeset(net, node_indices(net, nodes));
  });
  m.def("pattern_rank", [](const std::string& network, const std::vector<std::string>& rho, const std::string& node) {
    const Network net = load_network(network);
    return pattern_rank(net, channel_indices(net, rho), Target::node(net.node_index(node)));
  });
  m.def("construct", &construct, py::arg("network"), py::arg("kind"), py::arg("field"), py::arg("method") = "det",
        py::arg("seed") = py::none(), py::arg("collections") = std::vector<std::vector<std::string>>{},
        py::arg("extended") = false);
  m.def("random_code", &random_code);
  m.def("analyze", &analyze_code, py::arg("network"), py::arg("code"),
        py::arg("targets") = std::vector<std::string>{},
        py::arg("collections") = std::vector<std::vector<std::string>>{},
        py::arg("channel_sets") = std::vector<std::vector<std::string>>{}, py::arg("max_weight") = py::none());
  m.def("transmit", &transmit_to);
  m.def("decode", &decode);
  m.def("bounds", &bounds, py::arg("network"), py::arg("rate") = py::none());
}
