#pragma once

// Dense matrices over a Field, plus the handful of exact elimination routines
// the rest of the library is built on.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gwexcess/field.hpp"

namespace gwexcess {

using Vector = std::vector<Elem>;

class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols);

  static Matrix identity(Field field, std::size_t n);
  static Matrix from_ints(Field field, const std::vector<std::vector<long long>>& rows);
  // Columns given as vectors of equal length `rows`.
  static Matrix from_columns(Field field, std::size_t rows, const std::vector<Vector>& cols);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Elem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  Matrix transpose() const;
  bool is_symmetric() const;
  bool is_zero() const;

  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_cols(std::span<const std::size_t> idx) const;
  Matrix hstack(const Matrix& right) const;
  Matrix vstack(const Matrix& below) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  Field field_;
  std::size_t rows_, cols_;
  std::vector<Elem> data_;
};

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank;
};

// Reduced row echelon form with unit pivots. The pivot in each column is the
// first nonzero entry at or below the current row.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
// Columns span the right kernel; one column per free variable, with that free
// variable set to 1 and the others to 0.
Matrix kernel_basis(const Matrix& m);
// Some x with m*x = b (free variables set to 0), or nullopt when b is not in
// the column space.
std::optional<Vector> solve(const Matrix& m, const Vector& b);
Elem determinant(const Matrix& m);

struct Congruence {
  Matrix P;  // invertible
  Matrix D;  // diagonal, equal to P^T G P
};

// Symmetric Gaussian elimination. Leading positions are processed in index
// order; a zero pivot is replaced by the first later nonzero diagonal entry
// (row/column swap), and failing that by adding row/column j to k for the
// first j with G_kj != 0. Requires characteristic != 2 and symmetric input.
Congruence congruence_diagonalize(const Matrix& g);

// Independent spanning set of the columns, in rref form (one column per
// nonzero row of rref(A^T)).
Matrix column_space_basis(const Matrix& a);

}  // namespace gwexcess
