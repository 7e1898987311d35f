#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lnec/analyze.hpp"
#include "lnec/code.hpp"

namespace lnec {

/// One use of the network: message X, error vector Z, and every channel output.
struct Transmission {
  Vector x;        // length w
  Vector z;        // length |E|, canonical order
  Vector outputs;  // U~_e for every channel, canonical order
};

/// Runs the channel recursion U~_e = sum_d k_{d,e} U~_d + Z_e and checks it
/// against (X, Z) times the extended kernels.
Transmission transmit(const LnecCode& code, std::span<const Element> x, std::span<const Element> z);

/// Outputs of the channels feeding a target, in canonical order.
Vector received_at(const LnecCode& code, const Transmission& tx, const Target& target);

enum class DecodeStatus { unique, ambiguous, failure };
const char* to_string(DecodeStatus s);

struct DecodeResult {
  DecodeStatus status = DecodeStatus::failure;
  Vector x;                // estimated message (unique / first ambiguous candidate)
  ErrorPattern pattern;    // estimated minimal error pattern
  Vector error_values;     // Z on `pattern`, same order
  int weight = 0;
  int radius = 0;          // floor((d - 1) / 2)
  int distance = 0;
};

struct DecodeOptions {
  /// Refuse when more than this many error patterns would have to be tried.
  std::uint64_t max_patterns = 2'000'000;
  AnalyzeOptions analyze;
};

/// Minimum-distance decoding at a node with dim Phi = w.
DecodeResult decode_min_distance(const LnecCode& code, std::size_t node, std::span<const Element> received,
                                 const DecodeOptions& opts = {});

/// floor((d_min - 1) / 2); throws Infeasible when the distance is undefined.
int correction_capability(const LnecCode& code, const Target& target, const AnalyzeOptions& opts = {});

}  // namespace lnec
