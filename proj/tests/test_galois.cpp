#include <random>

#include "doctest.h"
#include "lnec/error.hpp"
#include "lnec/matrix.hpp"
#include "oracles.hpp"

using namespace lnec;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, std::uint32_t q) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng() % q;
  return m;
}

std::vector<oracle::Vec> rows_of(const Matrix& m) {
  std::vector<oracle::Vec> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).begin(), m.row(r).end());
  return out;
}

oracle::Gf oracle_for(const Field& f) {
  return {f.spec().p, f.spec().m, f.spec().m > 1 ? default_binary_modulus(f.spec().m) : 0};
}

}  // namespace

TEST_CASE("field examples") {
  const Field gf5(FieldSpec::prime(5));
  CHECK(gf5.mul(3, 4) == 2);
  CHECK(gf5.div(1, 2) == 3);
  CHECK(field_op(gf5, 1, 0, FieldOp::div) == std::nullopt);
  CHECK_THROWS_AS(gf5.inv(0), DivisionByZero);

  const Field gf16(FieldSpec::binary(4));
  CHECK(gf16.spec().modulus == std::vector<std::uint32_t>{1, 1, 0, 0, 1});
  CHECK(gf16.mul(0x02, 0x08) == 0x03);
  CHECK(oracle::Gf{2, 4, 0x13}.mul(0x02, 0x08) == 0x03);
  CHECK(default_binary_modulus(8) == 0x11B);
}

TEST_CASE("field arithmetic matches schoolbook oracle") {
  for (const FieldSpec spec : {FieldSpec::prime(2), FieldSpec::prime(3), FieldSpec::prime(7), FieldSpec::prime(13),
                               FieldSpec::binary(2), FieldSpec::binary(3), FieldSpec::binary(4), FieldSpec::binary(8)}) {
    const Field f(spec);
    const oracle::Gf o = oracle_for(f);
    CAPTURE(f.name());
    for (Element a = 0; a < f.order(); ++a)
      for (Element b = 0; b < f.order(); ++b) {
        REQUIRE(f.add(a, b) == o.add(a, b));
        REQUIRE(f.sub(a, b) == o.sub(a, b));
        REQUIRE(f.mul(a, b) == o.mul(a, b));
        if (b != 0) REQUIRE(f.mul(f.div(a, b), b) == a);
      }
  }
  const Field big(FieldSpec::prime(65521));
  const oracle::Gf o{65521, 1, 0};
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Element a = rng() % 65521, b = rng() % 65521;
    REQUIRE(big.mul(a, b) == o.mul(a, b));
  }
  const Field gf2_16(FieldSpec::binary(16));
  const oracle::Gf o16{2, 16, default_binary_modulus(16)};
  for (int i = 0; i < 2000; ++i) {
    const Element a = rng() % 65536, b = rng() % 65536;
    REQUIRE(gf2_16.mul(a, b) == o16.mul(a, b));
  }
}

TEST_CASE("field axioms hold exhaustively up to order 16") {
  for (std::uint64_t q = 2; q <= 16; ++q) {
    const auto spec = FieldSpec::of_order(q);
    if (!spec) continue;
    const Field f(*spec);
    CAPTURE(f.name());
    for (Element a = 0; a < q; ++a) {
      if (a != 0) REQUIRE(f.mul(a, f.inv(a)) == 1);
      REQUIRE(f.add(a, f.neg(a)) == 0);
      for (Element b = 0; b < q; ++b) {
        REQUIRE(f.add(a, b) == f.add(b, a));
        REQUIRE(f.mul(a, b) == f.mul(b, a));
        for (Element c = 0; c < q; ++c) {
          REQUIRE(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
          REQUIRE(f.add(a, f.add(b, c)) == f.add(f.add(a, b), c));
          REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("field specs are validated") {
  CHECK_THROWS_AS(Field(FieldSpec::prime(4)), InvalidInput);
  CHECK_THROWS_AS(Field(FieldSpec::prime(65537)), InvalidInput);
  CHECK_THROWS_AS(Field(FieldSpec::binary(4, 0x15)), InvalidInput);  // x^4+x^2+1 = (x^2+x+1)^2
  CHECK_NOTHROW(Field(FieldSpec::binary(4, 0x19)));
  CHECK(binary_poly_irreducible(0x13));
  CHECK_FALSE(binary_poly_irreducible(0x15));
  CHECK(FieldSpec::of_order(9) == std::nullopt);
  CHECK(FieldSpec::of_order(16)->m == 4);
}

TEST_CASE("rank examples") {
  const Field gf2(FieldSpec::prime(2));
  const Field gf5(FieldSpec::prime(5));
  CHECK(mat_rank(gf2, Matrix::identity(3)) == 3);
  CHECK(mat_rank(gf5, Matrix::from_rows({{1, 1, 1}})) == 1);
  CHECK(mat_rank(gf2, Matrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}})) == 2);
}

TEST_CASE("rank agrees with row-space size and transpose") {
  std::mt19937 rng(11);
  for (const std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const Field f(*FieldSpec::of_order(q));
    const oracle::Gf o = oracle_for(f);
    for (int it = 0; it < 60; ++it) {
      const Matrix m = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 4, q);
      REQUIRE(mat_rank(f, m) == oracle::rank_by_count(o, rows_of(m), m.cols()));
      REQUIRE(mat_rank(f, m) == mat_rank(f, m.transpose()));
    }
  }
}

TEST_CASE("intersection and subspace-sum examples") {
  const Field gf2(FieldSpec::prime(2)), gf3(FieldSpec::prime(3)), gf5(FieldSpec::prime(5));
  CHECK_FALSE(spaces_intersect_nontrivially(gf2, Matrix::from_rows({{1, 0}}), Matrix::from_rows({{0, 1}})));
  CHECK(spaces_intersect_nontrivially(gf5, Matrix::from_rows({{1, 1, 1}}), Matrix::identity(3)));
  CHECK(spaces_intersect_nontrivially(gf3, Matrix::from_rows({{1, 1, 0}}), Matrix::from_rows({{1, 0, 0}, {0, 1, 0}})));
  CHECK_THROWS_AS(spaces_intersect_nontrivially(gf3, Matrix::from_rows({{1, 1}}), Matrix::identity(3)), DimensionError);

  const Matrix u = Matrix::from_rows({{1, 0, 0}}), w = Matrix::from_rows({{0, 1, 0}});
  CHECK(member_of_subspace_sum(gf2, Vector{0, 0, 0}, u, w));
  CHECK_FALSE(member_of_subspace_sum(gf2, Vector{0, 0, 1}, u, w));
  CHECK(member_of_subspace_sum(gf3, Vector{1, 2, 0}, u, w));
  CHECK_THROWS_AS(member_of_subspace_sum(gf3, Vector{1, 2}, u, w), DimensionError);
}

TEST_CASE("intersection and membership agree with enumeration") {
  std::mt19937 rng(5);
  for (const std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const Field f(*FieldSpec::of_order(q));
    const oracle::Gf o = oracle_for(f);
    for (int it = 0; it < 80; ++it) {
      const std::size_t n = 1 + rng() % 4;
      const Matrix a = random_matrix(rng, 1 + rng() % 2, n, q);
      const Matrix b = random_matrix(rng, 1 + rng() % 2, n, q);
      const auto sa = oracle::rowspace(o, rows_of(a), n), sb = oracle::rowspace(o, rows_of(b), n);
      bool meet = false;
      for (const auto& v : sa)
        if (std::any_of(v.begin(), v.end(), [](auto x) { return x != 0; }) && sb.count(v)) meet = true;
      REQUIRE(spaces_intersect_nontrivially(f, a, b) == meet);

      const auto sum = oracle::rowspace(o, rows_of(vstack(a, b)), n);
      const Matrix v = random_matrix(rng, 1, n, q);
      const oracle::Vec vv(v.row(0).begin(), v.row(0).end());
      REQUIRE(member_of_subspace_sum(f, vv, a, b) == (sum.count(vv) == 1));
    }
  }
}

TEST_CASE("solve_left and nullspace") {
  const Field gf7(FieldSpec::prime(7));
  std::mt19937 rng(3);
  for (int it = 0; it < 100; ++it) {
    const Matrix m = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 4, 7);
    const Matrix x = random_matrix(rng, 1, m.rows(), 7);
    const Vector target = vec_mat(gf7, x.row(0), m);
    const LeftSolution sol = solve_left(gf7, m, target);
    REQUIRE(sol.consistent);
    REQUIRE(vec_mat(gf7, sol.particular, m) == target);
    REQUIRE(sol.kernel.rows() == m.rows() - mat_rank(gf7, m));
    for (std::size_t r = 0; r < sol.kernel.rows(); ++r)
      REQUIRE(vec_mat(gf7, sol.kernel.row(r), m) == Vector(m.cols(), 0));
    const Matrix ns = nullspace(gf7, m);
    REQUIRE(ns.rows() == m.cols() - mat_rank(gf7, m));
    if (!ns.empty()) REQUIRE(multiply(gf7, m, ns.transpose()) == Matrix(m.rows(), ns.rows()));
  }
  CHECK_FALSE(solve_left(gf7, Matrix::from_rows({{1, 0}}), Vector{0, 1}).consistent);
}
