#include "gwexcess/matrix.hpp"

#include <utility>

#include "gwexcess/errors.hpp"

namespace gwexcess {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
  data_.assign(rows * cols, field_.zero());
}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

Matrix Matrix::from_ints(Field field, const std::vector<std::vector<long long>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw InvalidArgument("ragged matrix literal");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_columns(Field field, std::size_t rows, const std::vector<Vector>& cols) {
  Matrix m(field, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw InvalidArgument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::column(std::size_t j) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& e : data_)
    if (!e.is_zero()) return false;
  return true;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix m(field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
  Matrix m(field_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

Matrix Matrix::hstack(const Matrix& right) const {
  if (right.rows_ != rows_) throw InvalidArgument("hstack: row count mismatch");
  Matrix m(field_, rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) m(i, cols_ + j) = right(i, j);
  }
  return m;
}

Matrix Matrix::vstack(const Matrix& below) const {
  if (below.cols_ != cols_) throw InvalidArgument("vstack: column count mismatch");
  Matrix m(field_, rows_ + below.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < below.rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(rows_ + i, j) = below(i, j);
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.field_ != b.field_) throw FieldMismatch("matrix product over different fields");
  if (a.cols_ != b.rows_) throw InvalidArgument("matrix product: shape mismatch");
  Matrix c(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Elem& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols_ != v.size()) throw InvalidArgument("matrix-vector: shape mismatch");
  Vector out(a.rows_, a.field_.zero());
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j)
      if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] += a(i, j) * v[j];
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("sum: shape mismatch");
  Matrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("difference: shape mismatch");
  Matrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RrefResult rref(const Matrix& m) {
  Matrix r = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    std::size_t piv = row;
    while (piv < r.rows() && r(piv, col).is_zero()) ++piv;
    if (piv == r.rows()) continue;
    if (piv != row) {
      for (std::size_t j = col; j < r.cols(); ++j) std::swap(r(piv, j), r(row, j));
    }
    const Elem inv = r(row, col).inv();
    for (std::size_t j = col; j < r.cols(); ++j) r(row, j) *= inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col).is_zero()) continue;
      const Elem c = r(i, col);
      for (std::size_t j = col; j < r.cols(); ++j) {
        if (!r(row, j).is_zero()) r(i, j) -= c * r(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  const std::size_t rk = pivots.size();
  return RrefResult{std::move(r), std::move(pivots), rk};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel_basis(const Matrix& m) {
  const RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : rr.pivots) is_pivot[p] = true;
  std::vector<Vector> cols;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), m.field().zero());
    v[free] = m.field().one();
    for (std::size_t k = 0; k < rr.pivots.size(); ++k) v[rr.pivots[k]] = -rr.reduced(k, free);
    cols.push_back(std::move(v));
  }
  return Matrix::from_columns(m.field(), m.cols(), cols);
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw InvalidArgument("solve: dimension mismatch");
  Matrix aug(m.field(), m.rows(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i) aug(i, 0) = b[i];
  const RrefResult rr = rref(m.hstack(aug));
  if (!rr.pivots.empty() && rr.pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols(), m.field().zero());
  for (std::size_t k = 0; k < rr.pivots.size(); ++k) x[rr.pivots[k]] = rr.reduced(k, m.cols());
  return x;
}

Elem determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
  Matrix r = m;
  Elem det = m.field().one();
  const std::size_t n = r.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && r(piv, col).is_zero()) ++piv;
    if (piv == n) return m.field().zero();
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(r(piv, j), r(col, j));
      det = -det;
    }
    det *= r(col, col);
    const Elem inv = r(col, col).inv();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (r(i, col).is_zero()) continue;
      const Elem c = r(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) r(i, j) -= c * r(col, j);
    }
  }
  return det;
}

Congruence congruence_diagonalize(const Matrix& g) {
  if (!g.is_symmetric()) throw InvalidArgument("congruence_diagonalize: matrix is not symmetric");
  if (g.field().characteristic() == 2) {
    throw InvalidArgument("congruence_diagonalize: characteristic 2");
  }
  const std::size_t n = g.rows();
  Matrix a = g;
  Matrix p = Matrix::identity(g.field(), n);

  // Elementary congruence: row/col j += c * row/col k, tracked in P's columns.
  auto add_multiple = [&](std::size_t j, std::size_t k, const Elem& c) {
    for (std::size_t t = 0; t < n; ++t) a(j, t) += c * a(k, t);
    for (std::size_t t = 0; t < n; ++t) a(t, j) += c * a(t, k);
    for (std::size_t t = 0; t < n; ++t) p(t, j) += c * p(t, k);
  };
  auto swap_index = [&](std::size_t j, std::size_t k) {
    for (std::size_t t = 0; t < n; ++t) std::swap(a(j, t), a(k, t));
    for (std::size_t t = 0; t < n; ++t) std::swap(a(t, j), a(t, k));
    for (std::size_t t = 0; t < n; ++t) std::swap(p(t, j), p(t, k));
  };

  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t j = k + 1;
      while (j < n && a(j, j).is_zero()) ++j;
      if (j < n) {
        swap_index(k, j);
      } else {
        j = k + 1;
        while (j < n && a(k, j).is_zero()) ++j;
        if (j == n) continue;  // row k is zero in the working block
        add_multiple(k, j, g.field().one());
      }
    }
    const Elem inv = a(k, k).inv();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      add_multiple(i, k, -(a(i, k) * inv));
    }
  }
  return Congruence{std::move(p), std::move(a)};
}

Matrix column_space_basis(const Matrix& a) {
  const RrefResult rr = rref(a.transpose());
  std::vector<Vector> cols;
  for (std::size_t k = 0; k < rr.rank; ++k) cols.push_back(rr.reduced.row(k));
  return Matrix::from_columns(a.field(), a.rows(), cols);
}

}  // namespace gwexcess
