#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "lnec/analyze.hpp"
#include "lnec/code.hpp"
#include "lnec/construct.hpp"
#include "lnec/decode.hpp"

namespace lnec {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become InvalidInput naming line and column.
Json parse_json(const std::string& text, const std::string& source_name);
std::string read_text_file(const std::string& path);
Json read_json_file(const std::string& path);

Json field_to_json(const FieldSpec& spec);
FieldSpec field_from_json(const Json& j);
/// "p", "p,m" or "p,m,modulus" with the modulus as an integer bit pattern
/// (e.g. "2,4,0x13").
FieldSpec parse_field_arg(const std::string& s);

Json network_to_json(const Network& net, const std::optional<FieldSpec>& field = std::nullopt);
Network network_from_json(const Json& j);
/// The optional "field" member of a network document.
std::optional<FieldSpec> network_field(const Json& j);

Json code_to_json(const LnecCode& code, bool with_extended = false);
LnecCode code_from_json(const Network& net, const Json& j);

Json target_to_json(const Network& net, const Target& t);
Json distance_to_json(const Network& net, const DistanceReport& d);
Json report_to_json(const LnecCode& code, const CodeReport& report);
Json bounds_to_json(const FieldSizeReport& report);
Json decode_to_json(const LnecCode& code, const DecodeResult& r);
Json plan_to_json(const std::vector<PlanRecord>& plan);

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(const std::string& data);

/// Parses "1,2,3" into field elements.
Vector parse_vector(const std::string& s);

}  // namespace lnec
