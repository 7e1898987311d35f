#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "lnec/field.hpp"
#include "lnec/matrix.hpp"
#include "lnec/network.hpp"

namespace lnec {

/// Per-node local encoding kernels K_i.
///
/// K_i has one row per channel of In(i) (or per message channel d_1'..d_w'
/// at the source) and one column per channel of Out(i), both in canonical
/// order. Nodes without outgoing channels carry an empty matrix.
struct LocalKernels {
  std::vector<Matrix> node;

  static LocalKernels zero(const Network& net);
  /// k_{d,e}: `row` indexes In(tail(e)) (or the message channels at the source).
  Element coeff(const Network& net, std::size_t row, std::size_t e) const;
  void set(const Network& net, std::size_t row, std::size_t e, Element value);
};

/// Position of channel e within Out(tail(e)).
std::size_t out_position(const Network& net, std::size_t e);

/// Extended global kernels via the per-channel recursion, in canonical order.
/// Result has w + |E| rows and one column per channel.
Matrix extend_kernels(const Network& net, const Field& field, const LocalKernels& k);

/// The same kernels from the transfer-matrix formula A~ (I - F)^-1.
Matrix transfer_matrix(const Network& net, const Field& field, const LocalKernels& k);

enum class Restriction { proj, keep, complement };

/// Restricts an extended kernel (length w + |E|) to the coordinates
/// In(s) ∪ rho: `proj` drops the others, `keep` zeroes them, `complement`
/// zeroes In(s) ∪ rho instead.
Vector restrict_pattern(std::span<const Element> kernel, int rate, const ErrorPattern& rho, Restriction kind);

class LnecCode {
 public:
  /// Validates kernel shapes and entries, then fills the extended-kernel cache.
  LnecCode(std::shared_ptr<const Network> net, Field field, LocalKernels kernels);
  LnecCode(const Network& net, Field field, LocalKernels kernels)
      : LnecCode(std::make_shared<const Network>(net), std::move(field), std::move(kernels)) {}

  const Network& network() const { return *net_; }
  std::shared_ptr<const Network> network_ptr() const { return net_; }
  const Field& field() const { return field_; }
  int rate() const { return net_->rate(); }
  const LocalKernels& kernels() const { return kernels_; }

  /// Columns are the extended kernels f~_e in canonical order.
  const Matrix& extended() const { return extended_; }
  Vector kernel(std::size_t e) const { return extended_.column(e); }

 private:
  std::shared_ptr<const Network> net_;
  Field field_;
  LocalKernels kernels_;
  Matrix extended_;
};

/// Decoding matrix of a target split into its message rows F and error rows G.
struct DecodingView {
  Target target;
  std::vector<std::size_t> columns;  // canonical channel indices
  Matrix f;                          // w x |columns|
  Matrix g;                          // |E| x |columns|

  Matrix full() const { return vstack(f, g); }
};

DecodingView decoding_view(const LnecCode& code, const Target& target);

/// Phi(target): the F block (rank = dim Phi).
const Matrix& message_space(const DecodingView& view);
/// Delta(target, rho): the G rows indexed by rho.
Matrix error_space(const DecodingView& view, const ErrorPattern& rho);

}  // namespace lnec
