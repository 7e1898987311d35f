#include "lnec/matrix.hpp"

#include <algorithm>

#include "lnec/error.hpp"

namespace lnec {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("ragged rows in matrix literal");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Element>> rows) {
  std::vector<Vector> v;
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::append_row(std::span<const Element> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw DimensionError("appended row has the wrong length");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
  Matrix m(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= rows_) throw DimensionError("row index out of range");
    std::copy_n(row(indices[i]).begin(), cols_, m.row(i).begin());
  }
  return m;
}

Matrix Matrix::select_columns(std::span<const std::size_t> indices) const {
  Matrix m(rows_, indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] >= cols_) throw DimensionError("column index out of range");
    for (std::size_t r = 0; r < rows_; ++r) m(r, j) = (*this)(r, indices[j]);
  }
  return m;
}

Matrix Matrix::row_block(std::size_t begin, std::size_t end) const {
  if (begin > end || end > rows_) throw DimensionError("row block out of range");
  Matrix m(end - begin, cols_);
  std::copy(data_.begin() + begin * cols_, data_.begin() + end * cols_, m.data_.begin());
  return m;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) throw DimensionError("vstack: column counts differ");
  Matrix m = top;
  for (std::size_t r = 0; r < bottom.rows(); ++r) m.append_row(bottom.row(r));
  return m;
}

Matrix multiply(const Field& field, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Element x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = field.add(c(i, j), field.mul(x, b(k, j)));
    }
  return c;
}

Vector vec_mat(const Field& field, std::span<const Element> x, const Matrix& m) {
  if (x.size() != m.rows()) throw DimensionError("vec_mat: length mismatch");
  Vector y(m.cols(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    const auto r = m.row(i);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = field.add(y[j], field.mul(x[i], r[j]));
  }
  return y;
}

Element dot(const Field& field, std::span<const Element> a, std::span<const Element> b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  Element s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = field.add(s, field.mul(a[i], b[i]));
  return s;
}

std::vector<std::size_t> rref_in_place(const Field& field, Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t p = lead;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != lead)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(lead, j));
    const Element inv = field.inv(m(lead, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(lead, j) = field.mul(m(lead, j), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || m(r, c) == 0) continue;
      const Element factor = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = field.sub(m(r, j), field.mul(factor, m(lead, j)));
    }
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

std::size_t mat_rank(const Field& field, const Matrix& m) {
  Matrix work = m;
  return rref_in_place(field, work).size();
}

Matrix nullspace(const Field& field, const Matrix& m) {
  Matrix work = m;
  const auto pivots = rref_in_place(field, work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix basis(0, m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector x(m.cols(), 0);
    x[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = field.neg(work(i, free));
    basis.append_row(x);
  }
  return basis;
}

bool spaces_intersect_nontrivially(const Field& field, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols() && a.rows() > 0 && b.rows() > 0)
    throw DimensionError("spaces_intersect_nontrivially: vectors of different length");
  if (a.rows() == 0 || b.rows() == 0) return false;
  return mat_rank(field, a) + mat_rank(field, b) > mat_rank(field, vstack(a, b));
}

bool member_of_subspace_sum(const Field& field, std::span<const Element> v, const Matrix& u, const Matrix& w) {
  const std::size_t n = v.size();
  if ((u.rows() > 0 && u.cols() != n) || (w.rows() > 0 && w.cols() != n))
    throw DimensionError("member_of_subspace_sum: vectors of different length");
  Matrix uw = vstack(u, w);
  if (uw.rows() == 0) uw = Matrix(0, n);
  const std::size_t base = mat_rank(field, uw);
  uw.append_row(v);
  return mat_rank(field, uw) == base;
}

LeftSolution solve_left(const Field& field, const Matrix& m, std::span<const Element> target) {
  if (target.size() != m.cols()) throw DimensionError("solve_left: target length mismatch");
  // x m = t  <=>  m^T x^T = t^T; eliminate on the augmented transpose.
  const std::size_t n = m.rows();
  Matrix aug(m.cols(), n + 1);
  for (std::size_t r = 0; r < m.cols(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(c, r);
    aug(r, n) = target[r];
  }
  const auto pivots = rref_in_place(field, aug);
  LeftSolution sol;
  sol.consistent = pivots.empty() || pivots.back() < n;
  sol.kernel = nullspace(field, m.transpose());
  if (sol.kernel.rows() == 0) sol.kernel = Matrix(0, n);
  if (!sol.consistent) return sol;
  sol.particular.assign(n, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) sol.particular[pivots[i]] = aug(i, n);
  return sol;
}

Vector Subspace::reduce(std::span<const Element> v) const {
  if (v.size() != dim_) throw DimensionError("Subspace: vector of the wrong length");
  Vector r(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Element f = r[pivots_[i]];
    if (f == 0) continue;
    const auto& b = basis_[i];
    for (std::size_t j = 0; j < dim_; ++j)
      if (b[j] != 0) r[j] = field_.sub(r[j], field_.mul(f, b[j]));
  }
  return r;
}

bool Subspace::contains(std::span<const Element> v) const {
  const auto r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](Element x) { return x == 0; });
}

bool Subspace::insert(std::span<const Element> v) {
  Vector r = reduce(v);
  const auto it = std::find_if(r.begin(), r.end(), [](Element x) { return x != 0; });
  if (it == r.end()) return false;
  const std::size_t pivot = static_cast<std::size_t>(it - r.begin());
  const Element inv = field_.inv(r[pivot]);
  for (auto& x : r) x = field_.mul(x, inv);
  for (auto& b : basis_) {
    const Element f = b[pivot];
    if (f == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      if (r[j] != 0) b[j] = field_.sub(b[j], field_.mul(f, r[j]));
  }
  basis_.push_back(std::move(r));
  pivots_.push_back(pivot);
  return true;
}

}  // namespace lnec
