#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lnec {

/// Integer encoding of a field element: a residue for prime fields, the
/// coefficient bit pattern (bit i = coefficient of x^i) for GF(2^m).
using Element = std::uint32_t;

/// Description of a finite field GF(p^m).
///
/// Supported: GF(p) for prime p < 2^16, and GF(2^m) for 1 <= m <= 16.
/// `modulus` holds the coefficients of the defining polynomial, lowest degree
/// first, length m + 1; it is empty for prime fields.
struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  std::vector<std::uint32_t> modulus;

  std::uint64_t order() const;
  bool operator==(const FieldSpec&) const = default;

  static FieldSpec prime(std::uint32_t p);
  /// GF(2^m) with the default modulus for that degree.
  static FieldSpec binary(std::uint32_t m);
  static FieldSpec binary(std::uint32_t m, std::uint32_t modulus_bits);
  /// Smallest supported field of exactly this order, if any.
  static std::optional<FieldSpec> of_order(std::uint64_t q);
};

/// Default defining polynomial for GF(2^m) as a bit pattern (bit m set).
std::uint32_t default_binary_modulus(std::uint32_t m);

/// Exhaustive irreducibility test of a binary polynomial given as bits.
bool binary_poly_irreducible(std::uint32_t poly_bits);

bool is_prime(std::uint32_t n);

enum class FieldOp { add, sub, mul, div };

/// Arithmetic in one concrete finite field.
///
/// A Field is a cheap handle onto immutable log/antilog tables; copies share
/// them, so passing a Field by value is fine.
class Field {
 public:
  explicit Field(FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t order() const { return q_; }
  std::uint32_t characteristic() const { return spec_.p; }
  bool contains(Element a) const { return a < q_; }
  std::string name() const;

  Element add(Element a, Element b) const {
    if (binary_) return a ^ b;
    const Element s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Element neg(Element a) const {
    if (binary_ || a == 0) return a;
    return q_ - a;
  }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    return tables_->exp[tables_->log[a] + tables_->log[b]];
  }
  /// Throws DivisionByZero when a == 0.
  Element inv(Element a) const;
  /// Throws DivisionByZero when b == 0.
  Element div(Element a, Element b) const;
  std::optional<Element> checked_div(Element a, Element b) const;
  Element pow(Element a, std::uint64_t e) const;

  bool operator==(const Field& other) const { return spec_ == other.spec_; }

 private:
  struct Tables {
    std::vector<Element> exp;  // length 2(q-1), exp[i] = g^i
    std::vector<std::uint32_t> log;
  };

  FieldSpec spec_;
  std::uint32_t q_;
  bool binary_;
  std::shared_ptr<const Tables> tables_;
};

/// Single entry point for the four field operations. Division by zero yields
/// std::nullopt instead of throwing.
std::optional<Element> field_op(const Field& field, Element a, Element b, FieldOp op);

}  // namespace lnec
