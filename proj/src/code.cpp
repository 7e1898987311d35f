#include "lnec/code.hpp"

#include <algorithm>

#include "lnec/error.hpp"

namespace lnec {

LocalKernels LocalKernels::zero(const Network& net) {
  LocalKernels k;
  for (std::size_t i = 0; i < net.num_nodes(); ++i) {
    const std::size_t rows = i == net.source() ? static_cast<std::size_t>(net.rate()) : net.in(i).size();
    k.node.emplace_back(net.out(i).empty() ? 0 : rows, net.out(i).size());
  }
  return k;
}

std::size_t out_position(const Network& net, std::size_t e) {
  const auto& out = net.out(net.tail(e));
  return static_cast<std::size_t>(std::find(out.begin(), out.end(), e) - out.begin());
}

Element LocalKernels::coeff(const Network& net, std::size_t row, std::size_t e) const {
  return node.at(net.tail(e))(row, out_position(net, e));
}

void LocalKernels::set(const Network& net, std::size_t row, std::size_t e, Element value) {
  node.at(net.tail(e))(row, out_position(net, e)) = value;
}

namespace {

void check_shapes(const Network& net, const Field& field, const LocalKernels& k) {
  if (k.node.size() != net.num_nodes()) throw DimensionError("local kernels: one matrix per node expected");
  for (std::size_t i = 0; i < net.num_nodes(); ++i) {
    const Matrix& m = k.node[i];
    const std::size_t rows = i == net.source() ? static_cast<std::size_t>(net.rate()) : net.in(i).size();
    if (net.out(i).empty()) {
      if (m.cols() != 0) throw DimensionError("local kernel of '" + net.node_id(i) + "' should be empty");
      continue;
    }
    if (m.rows() != rows || m.cols() != net.out(i).size())
      throw DimensionError("local kernel of '" + net.node_id(i) + "' has shape " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
                           std::to_string(net.out(i).size()));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (!field.contains(m(r, c)))
          throw InvalidInput("local kernel of '" + net.node_id(i) + "' has an entry outside " + field.name());
  }
}

}  // namespace

Matrix extend_kernels(const Network& net, const Field& field, const LocalKernels& k) {
  check_shapes(net, field, k);
  const std::size_t w = static_cast<std::size_t>(net.rate());
  const std::size_t n = w + net.num_channels();
  std::vector<Vector> f(net.num_channels());
  for (std::size_t e = 0; e < net.num_channels(); ++e) {
    Vector v(n, 0);
    const std::size_t i = net.tail(e);
    const std::size_t col = out_position(net, e);
    const Matrix& ki = k.node[i];
    if (i == net.source()) {
      for (std::size_t r = 0; r < w; ++r) v[r] = ki(r, col);
    } else {
      const auto& in = net.in(i);
      for (std::size_t r = 0; r < in.size(); ++r) {
        const Element c = ki(r, col);
        if (c == 0) continue;
        const Vector& fd = f[in[r]];
        for (std::size_t j = 0; j < n; ++j)
          if (fd[j] != 0) v[j] = field.add(v[j], field.mul(c, fd[j]));
      }
    }
    v[w + e] = field.add(v[w + e], 1);
    f[e] = std::move(v);
  }
  Matrix m(n, net.num_channels());
  for (std::size_t e = 0; e < f.size(); ++e)
    for (std::size_t j = 0; j < n; ++j) m(j, e) = f[e][j];
  return m;
}

Matrix transfer_matrix(const Network& net, const Field& field, const LocalKernels& k) {
  check_shapes(net, field, k);
  const std::size_t w = static_cast<std::size_t>(net.rate());
  const std::size_t ne = net.num_channels();

  Matrix a(w, ne);
  for (const std::size_t e : net.out(net.source()))
    for (std::size_t r = 0; r < w; ++r) a(r, e) = k.coeff(net, r, e);

  // System matrix: F(d, e) = k_{d,e} for adjacent pairs. Strictly upper
  // triangular in canonical order.
  Matrix sys(ne, ne);
  for (std::size_t e = 0; e < ne; ++e) {
    const std::size_t i = net.tail(e);
    if (i == net.source()) continue;
    const auto& in = net.in(i);
    for (std::size_t r = 0; r < in.size(); ++r) sys(in[r], e) = k.coeff(net, r, e);
  }

  // (I - F) N = I, so N = I + F N; solve rows from the bottom up.
  Matrix inv(ne, ne);
  for (std::size_t d = ne; d-- > 0;) {
    inv(d, d) = 1;
    for (std::size_t x = d + 1; x < ne; ++x) {
      const Element c = sys(d, x);
      if (c == 0) continue;
      for (std::size_t j = 0; j < ne; ++j) inv(d, j) = field.add(inv(d, j), field.mul(c, inv(x, j)));
    }
  }

  Matrix a_ext = vstack(a, Matrix::identity(ne));
  if (ne == 0) a_ext = Matrix(w, 0);
  return multiply(field, a_ext, inv);
}

Vector restrict_pattern(std::span<const Element> kernel, int rate, const ErrorPattern& rho, Restriction kind) {
  const std::size_t w = static_cast<std::size_t>(rate);
  std::vector<bool> inside(kernel.size(), false);
  for (std::size_t i = 0; i < w && i < kernel.size(); ++i) inside[i] = true;
  for (const std::size_t e : rho) {
    if (w + e >= kernel.size()) throw DimensionError("restrict_pattern: pattern channel out of range");
    inside[w + e] = true;
  }
  Vector out;
  switch (kind) {
    case Restriction::proj:
      for (std::size_t j = 0; j < kernel.size(); ++j)
        if (inside[j]) out.push_back(kernel[j]);
      break;
    case Restriction::keep:
    case Restriction::complement:
      out.assign(kernel.begin(), kernel.end());
      for (std::size_t j = 0; j < kernel.size(); ++j)
        if (inside[j] != (kind == Restriction::keep)) out[j] = 0;
      break;
  }
  return out;
}

LnecCode::LnecCode(std::shared_ptr<const Network> net, Field field, LocalKernels kernels)
    : net_(std::move(net)), field_(std::move(field)), kernels_(std::move(kernels)) {
  extended_ = extend_kernels(*net_, field_, kernels_);
}

DecodingView decoding_view(const LnecCode& code, const Target& target) {
  const Network& net = code.network();
  if (target.members.empty()) throw InvalidInput("decoding view target is empty");
  DecodingView view;
  view.target = target;
  view.columns = target_channels(net, target);
  const Matrix cols = code.extended().select_columns(view.columns);
  const std::size_t w = static_cast<std::size_t>(code.rate());
  view.f = cols.row_block(0, w);
  view.g = cols.row_block(w, cols.rows());
  return view;
}

const Matrix& message_space(const DecodingView& view) { return view.f; }

Matrix error_space(const DecodingView& view, const ErrorPattern& rho) { return view.g.select_rows(rho); }

}  // namespace lnec
