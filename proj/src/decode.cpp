#include "lnec/decode.hpp"

#include <algorithm>
#include <numeric>

#include "lnec/error.hpp"

namespace lnec {

const char* to_string(DecodeStatus s) {
  switch (s) {
    case DecodeStatus::unique: return "unique";
    case DecodeStatus::ambiguous: return "ambiguous";
    case DecodeStatus::failure: return "failure";
  }
  return "?";
}

Transmission transmit(const LnecCode& code, std::span<const Element> x, std::span<const Element> z) {
  const Network& net = code.network();
  const Field& field = code.field();
  const std::size_t w = static_cast<std::size_t>(code.rate());
  if (x.size() != w) throw DimensionError("message length " + std::to_string(x.size()) + ", expected " + std::to_string(w));
  if (z.size() != net.num_channels())
    throw DimensionError("error vector length " + std::to_string(z.size()) + ", expected " +
                         std::to_string(net.num_channels()));
  for (const Element v : x)
    if (!field.contains(v)) throw InvalidInput("message symbol outside " + field.name());
  for (const Element v : z)
    if (!field.contains(v)) throw InvalidInput("error symbol outside " + field.name());

  Transmission tx{Vector(x.begin(), x.end()), Vector(z.begin(), z.end()), Vector(net.num_channels(), 0)};
  for (std::size_t e = 0; e < net.num_channels(); ++e) {
    const std::size_t i = net.tail(e);
    Element u = z[e];
    if (i == net.source()) {
      for (std::size_t r = 0; r < w; ++r) u = field.add(u, field.mul(code.kernels().coeff(net, r, e), x[r]));
    } else {
      const auto& in = net.in(i);
      for (std::size_t r = 0; r < in.size(); ++r)
        u = field.add(u, field.mul(code.kernels().coeff(net, r, e), tx.outputs[in[r]]));
    }
    tx.outputs[e] = u;
  }

  Vector xz(tx.x);
  xz.insert(xz.end(), tx.z.begin(), tx.z.end());
  if (vec_mat(field, xz, code.extended()) != tx.outputs)
    throw InvariantViolation("channel recursion disagrees with the extended kernels");
  return tx;
}

Vector received_at(const LnecCode& code, const Transmission& tx, const Target& target) {
  Vector r;
  for (const std::size_t k : target_channels(code.network(), target)) r.push_back(tx.outputs.at(k));
  return r;
}

int correction_capability(const LnecCode& code, const Target& target, const AnalyzeOptions& opts) {
  const DistanceReport d = min_distance(code, target, opts);
  if (!d.complete) throw SizeGuardExceeded("distance not determined within the weight cap");
  return (d.d_by_size - 1) / 2;
}

DecodeResult decode_min_distance(const LnecCode& code, std::size_t node, std::span<const Element> received,
                                 const DecodeOptions& opts) {
  const Network& net = code.network();
  const Field& field = code.field();
  const std::size_t w = static_cast<std::size_t>(code.rate());
  const Target target = Target::node(node);
  const DecodingView view = decoding_view(code, target);
  if (received.size() != view.columns.size())
    throw DimensionError("received vector length " + std::to_string(received.size()) + ", expected " +
                         std::to_string(view.columns.size()));
  for (const Element v : received)
    if (!field.contains(v)) throw InvalidInput("received symbol outside " + field.name());
  if (mat_rank(field, view.f) < w) throw Infeasible("undecodable target '" + net.node_id(node) + "': dim Phi < w");

  DecodeResult res;
  const DistanceReport d = min_distance(code, target, opts.analyze);
  if (!d.complete) throw SizeGuardExceeded("distance not determined within the weight cap");
  res.distance = d.d_by_size;
  res.radius = (d.d_by_size - 1) / 2;

  std::vector<std::size_t> cand;
  for (std::size_t k = 0; k < net.num_channels(); ++k) {
    const auto row = view.g.row(k);
    if (std::any_of(row.begin(), row.end(), [](Element x) { return x != 0; })) cand.push_back(k);
  }
  std::uint64_t patterns = 0;
  bool sat = false;
  for (int k = 0; k <= res.radius; ++k) patterns += binomial_sat(cand.size(), static_cast<std::uint64_t>(k), sat);
  if (sat || patterns > opts.max_patterns)
    throw SizeGuardExceeded("decoding would try " + std::to_string(patterns) + " error patterns");

  // For each weight, solve (X, Z_rho) [F; G_rho] = received on every pattern.
  // The first weight with a solution is minimal, so all its solutions use the
  // whole pattern; distinct messages there make the decision ambiguous.
  for (int k = 0; k <= res.radius; ++k) {
    const std::size_t kk = static_cast<std::size_t>(k);
    if (kk > cand.size()) break;
    std::vector<std::size_t> pick(kk);
    std::iota(pick.begin(), pick.end(), 0);
    bool found = false;
    bool ambiguous = false;
    for (;;) {
      ErrorPattern rho;
      for (const std::size_t i : pick) rho.push_back(cand[i]);
      const Matrix m = vstack(view.f, error_space(view, rho));
      const LeftSolution sol = solve_left(field, m, received);
      if (sol.consistent) {
        Vector x(sol.particular.begin(), sol.particular.begin() + static_cast<long>(w));
        for (std::size_t r = 0; r < sol.kernel.rows(); ++r)
          for (std::size_t j = 0; j < w; ++j)
            if (sol.kernel(r, j) != 0) ambiguous = true;
        if (!found) {
          res.x = std::move(x);
          res.pattern = rho;
          res.error_values.assign(sol.particular.begin() + static_cast<long>(w), sol.particular.end());
          found = true;
        } else if (x != res.x) {
          ambiguous = true;
        }
      }
      std::size_t i = kk;
      while (i > 0 && pick[i - 1] == cand.size() - kk + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < kk; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (found) {
      res.weight = k;
      res.status = ambiguous ? DecodeStatus::ambiguous : DecodeStatus::unique;
      if (res.status == DecodeStatus::unique) {
        Vector xz(res.x);
        xz.insert(xz.end(), res.error_values.begin(), res.error_values.end());
        if (vec_mat(field, xz, vstack(view.f, error_space(view, res.pattern))) !=
            Vector(received.begin(), received.end()))
          throw InvariantViolation("decoded message does not reproduce the received vector");
      }
      return res;
    }
  }
  res.status = DecodeStatus::failure;
  return res;
}

}  // namespace lnec
