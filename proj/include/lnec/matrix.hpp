#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "lnec/field.hpp"

namespace lnec {

using Vector = std::vector<Element>;

/// Dense row-major matrix of field elements. The matrix carries no field;
/// every arithmetic routine takes the Field explicitly.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n);
  /// All rows must have the same length; `cols` is used when `rows` is empty.
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols = 0);
  static Matrix from_rows(std::initializer_list<std::initializer_list<Element>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Element operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector column(std::size_t c) const;

  void append_row(std::span<const Element> values);

  Matrix transpose() const;
  Matrix select_rows(std::span<const std::size_t> indices) const;
  Matrix select_columns(std::span<const std::size_t> indices) const;
  /// Rows [begin, end).
  Matrix row_block(std::size_t begin, std::size_t end) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

/// `top` above `bottom`; column counts must agree.
Matrix vstack(const Matrix& top, const Matrix& bottom);

Matrix multiply(const Field& field, const Matrix& a, const Matrix& b);
/// Row vector times matrix.
Vector vec_mat(const Field& field, std::span<const Element> x, const Matrix& m);
Element dot(const Field& field, std::span<const Element> a, std::span<const Element> b);

/// Reduced row echelon form with first-nonzero pivoting; returns the pivot columns.
std::vector<std::size_t> rref_in_place(const Field& field, Matrix& m);

std::size_t mat_rank(const Field& field, const Matrix& m);

/// Basis (as rows) of the right null space {x : m x = 0}.
Matrix nullspace(const Field& field, const Matrix& m);

/// True iff rowspace(a) and rowspace(b) share a nonzero vector.
bool spaces_intersect_nontrivially(const Field& field, const Matrix& a, const Matrix& b);

/// True iff v lies in rowspace(u) + rowspace(w).
bool member_of_subspace_sum(const Field& field, std::span<const Element> v, const Matrix& u, const Matrix& w);

/// Affine solution set of x * m = target for a row vector x.
struct LeftSolution {
  bool consistent = false;
  Vector particular;  // one solution (length m.rows())
  Matrix kernel;      // rows span {x : x * m = 0}
};
LeftSolution solve_left(const Field& field, const Matrix& m, std::span<const Element> target);

/// Incrementally maintained row space in reduced echelon form, used for
/// fast membership tests against a fixed subspace.
class Subspace {
 public:
  Subspace(Field field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

  std::size_t ambient_dim() const { return dim_; }
  std::size_t dimension() const { return basis_.size(); }

  /// Reduce v against the basis; the result is zero iff v is in the space.
  Vector reduce(std::span<const Element> v) const;
  bool contains(std::span<const Element> v) const;
  /// Adds v; returns false if v was already in the space.
  bool insert(std::span<const Element> v);

 private:
  Field field_;
  std::size_t dim_;
  std::vector<Vector> basis_;  // each row normalized with 1 at its pivot
  std::vector<std::size_t> pivots_;
};

}  // namespace lnec
