#include "lnec/field.hpp"

#include <array>
#include <bit>
#include <sstream>

#include "lnec/error.hpp"

namespace lnec {
namespace {

// Default moduli for GF(2^m). m = 4 and m = 8 follow the usual conventions
// (x^4+x+1 and the AES polynomial); the rest are standard primitive trinomials
// and pentanomials.
constexpr std::array<std::uint32_t, 17> kDefaultBinaryModuli = {
    0,       0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x89,   0x11B,
    0x211,   0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B};

int degree(std::uint32_t poly) { return poly == 0 ? -1 : 31 - std::countl_zero(poly); }

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
  const int db = degree(b);
  for (int da = degree(a); da >= db; da = degree(a)) a ^= b << (da - db);
  return a;
}

// Carry-less product of a and b reduced by `modulus` (degree m).
std::uint32_t binary_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, std::uint32_t m) {
  std::uint32_t r = 0;
  while (b != 0) {
    if (b & 1U) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1U << m)) a ^= modulus;
  }
  return r;
}

std::uint32_t bits_from_coefficients(const std::vector<std::uint32_t>& coeffs) {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] > 1) throw InvalidInput("binary modulus coefficients must be 0 or 1");
    if (coeffs[i] == 1) bits |= 1U << i;
  }
  return bits;
}

std::vector<std::uint32_t> coefficients_from_bits(std::uint32_t bits, std::uint32_t m) {
  std::vector<std::uint32_t> coeffs(m + 1);
  for (std::uint32_t i = 0; i <= m; ++i) coeffs[i] = (bits >> i) & 1U;
  return coeffs;
}

void validate(const FieldSpec& spec) {
  if (!is_prime(spec.p)) throw InvalidInput("field characteristic " + std::to_string(spec.p) + " is not prime");
  if (spec.p >= (1U << 16)) throw InvalidInput("prime fields are supported for p < 65536");
  if (spec.m == 0) throw InvalidInput("field degree must be at least 1");
  if (spec.m == 1) {
    if (!spec.modulus.empty() && spec.modulus.size() != 2)
      throw InvalidInput("a prime field takes no modulus (or a degree-1 one)");
    return;
  }
  if (spec.p != 2) throw InvalidInput("extension fields are only supported in characteristic 2");
  if (spec.m > 16) throw InvalidInput("GF(2^m) is supported for m <= 16");
  if (spec.modulus.size() != spec.m + 1)
    throw InvalidInput("modulus must list m + 1 coefficients, lowest degree first");
  const std::uint32_t bits = bits_from_coefficients(spec.modulus);
  if (degree(bits) != static_cast<int>(spec.m)) throw InvalidInput("modulus must be monic of degree m");
  if (!binary_poly_irreducible(bits)) throw InvalidInput("modulus is reducible over GF(2)");
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool binary_poly_irreducible(std::uint32_t poly_bits) {
  const int m = degree(poly_bits);
  if (m < 1) return false;
  // Any factorization has a factor of degree <= m/2.
  for (int d = 1; 2 * d <= m; ++d)
    for (std::uint32_t f = 1U << d; f < (2U << d); ++f)
      if (poly_mod(poly_bits, f) == 0) return false;
  return true;
}

std::uint32_t default_binary_modulus(std::uint32_t m) {
  if (m < 1 || m > 16) throw InvalidInput("GF(2^m) is supported for 1 <= m <= 16");
  return kDefaultBinaryModuli[m];
}

std::uint64_t FieldSpec::order() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) q *= p;
  return q;
}

FieldSpec FieldSpec::prime(std::uint32_t p) { return FieldSpec{p, 1, {}}; }

FieldSpec FieldSpec::binary(std::uint32_t m) {
  if (m == 1) return prime(2);
  return binary(m, default_binary_modulus(m));
}

FieldSpec FieldSpec::binary(std::uint32_t m, std::uint32_t modulus_bits) {
  if (m == 1) return prime(2);
  return FieldSpec{2, m, coefficients_from_bits(modulus_bits, m)};
}

std::optional<FieldSpec> FieldSpec::of_order(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  if (q < (1U << 16) && is_prime(static_cast<std::uint32_t>(q))) return prime(static_cast<std::uint32_t>(q));
  if (std::has_single_bit(q) && q <= (1U << 16)) return binary(static_cast<std::uint32_t>(std::countr_zero(q)));
  return std::nullopt;
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
  if (spec_.m == 1) spec_.modulus.clear();
  q_ = static_cast<std::uint32_t>(spec_.order());
  binary_ = spec_.p == 2;

  auto tables = std::make_shared<Tables>();
  const std::uint32_t n = q_ - 1;
  tables->exp.assign(2 * static_cast<std::size_t>(n) + 1, 0);
  tables->log.assign(q_, 0);

  const std::uint32_t modulus_bits = spec_.m > 1 ? bits_from_coefficients(spec_.modulus) : 0;
  auto raw_mul = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    if (spec_.m > 1) return binary_mulmod(a, b, modulus_bits, spec_.m);
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % q_);
  };

  // Find a generator of the multiplicative group and fill the tables from it.
  bool found = q_ == 2;
  if (q_ == 2) tables->exp[0] = 1;
  for (std::uint32_t g = 2; !found && g < q_; ++g) {
    std::uint32_t x = 1;
    std::uint32_t i = 0;
    for (; i < n; ++i) {
      if (i > 0 && x == 1) break;
      tables->exp[i] = x;
      x = raw_mul(x, g);
    }
    found = i == n && x == 1;
  }
  if (!found) throw InvalidInput("no multiplicative generator found; modulus is not irreducible");
  for (std::uint32_t i = 0; i < n; ++i) {
    tables->exp[i + n] = tables->exp[i];
    tables->log[tables->exp[i]] = i;
  }
  tables_ = std::move(tables);
}

std::string Field::name() const {
  std::ostringstream os;
  if (spec_.m == 1)
    os << "GF(" << spec_.p << ")";
  else
    os << "GF(" << spec_.p << "^" << spec_.m << ")";
  return os.str();
}

Element Field::inv(Element a) const {
  if (a == 0) throw DivisionByZero();
  const std::uint32_t n = q_ - 1;
  return tables_->exp[(n - tables_->log[a]) % n];
}

Element Field::div(Element a, Element b) const { return mul(a, inv(b)); }

std::optional<Element> Field::checked_div(Element a, Element b) const {
  if (b == 0) return std::nullopt;
  return div(a, b);
}

Element Field::pow(Element a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t n = q_ - 1;
  return tables_->exp[(static_cast<std::uint64_t>(tables_->log[a]) * (e % n)) % n];
}

std::optional<Element> field_op(const Field& field, Element a, Element b, FieldOp op) {
  switch (op) {
    case FieldOp::add:
      return field.add(a, b);
    case FieldOp::sub:
      return field.sub(a, b);
    case FieldOp::mul:
      return field.mul(a, b);
    case FieldOp::div:
      return field.checked_div(a, b);
  }
  return std::nullopt;
}

}  // namespace lnec
