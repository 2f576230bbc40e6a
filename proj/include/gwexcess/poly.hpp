#pragma once

// Sparse multivariate polynomials over a Field, graded monomial bases and
// small matrices of polynomials.
//
// Monomial order everywhere is graded lexicographic with x0 > x1 > ...; the
// graded basis of degree d lists monomials from largest to smallest.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gwexcess/field.hpp"
#include "gwexcess/matrix.hpp"

namespace gwexcess {

class Monomial {
 public:
  explicit Monomial(std::vector<unsigned> exps);
  static Monomial one(std::size_t nvars) { return Monomial(std::vector<unsigned>(nvars, 0)); }
  static Monomial variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return exps_.size(); }
  unsigned degree() const { return degree_; }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<unsigned>& exponents() const { return exps_; }

  bool divides(const Monomial& other) const;
  friend Monomial operator*(const Monomial& a, const Monomial& b);
  // a / b; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

 private:
  std::vector<unsigned> exps_;
  unsigned degree_;
};

// Strict "a comes before b" in graded-lex order with x0 > x1 > ... .
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Poly {
 public:
  using Terms = std::map<Monomial, Elem, GrlexGreater>;

  Poly(Field field, std::size_t nvars);
  static Poly constant(Field field, std::size_t nvars, const Elem& c);
  static Poly variable(Field field, std::size_t nvars, std::size_t i);
  static Poly term(Field field, const Monomial& m, const Elem& c);
  // Linear form sum c_i x_i.
  static Poly linear(Field field, const std::vector<long long>& coeffs);

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  // The common degree of all terms; nullopt for the zero polynomial and for
  // inhomogeneous polynomials.
  std::optional<unsigned> homogeneous_degree() const;
  bool is_homogeneous() const { return is_zero() || homogeneous_degree().has_value(); }
  // Largest term degree, 0 for the zero polynomial.
  unsigned total_degree() const;
  Elem coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Elem& c);

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Elem& c, const Poly& a);
  Poly operator-() const;
  Poly& operator+=(const Poly& b);
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly pow(unsigned e) const;
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly partial_derivative(std::size_t i) const;
  // Replace x_i by values[i]; every value must have the same variable count.
  Poly substitute(const std::vector<Poly>& values) const;
  // Evaluate at a point whose coordinates may live in an extension of the
  // coefficient field.
  Elem evaluate(const Vector& point) const;
  // Same polynomial with coefficients pushed into an extension field.
  Poly change_field(const Field& target) const;

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  void check_compatible(const Poly& b) const;

  Field field_;
  std::size_t nvars_;
  Terms terms_;
};

class PolyMatrix {
 public:
  PolyMatrix(Field field, std::size_t nvars, std::size_t rows, std::size_t cols);

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Poly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  PolyMatrix transpose() const;
  PolyMatrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  // Drop the listed rows and columns (0-based).
  PolyMatrix remove(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  PolyMatrix substitute(const std::vector<Poly>& values) const;
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

 private:
  Field field_;
  std::size_t nvars_, rows_, cols_;
  std::vector<Poly> data_;
};

// Cofactor expansion along the row with the fewest stored terms. The 0x0
// determinant is 1.
Poly det(const PolyMatrix& m);
// Determinant after removing the given rows and columns (0-based).
Poly minor(const PolyMatrix& m, const std::vector<std::size_t>& rows,
           const std::vector<std::size_t>& cols);
// det(d f_i / d x_j) for n polynomials in n variables.
Poly jacobian_determinant(const std::vector<Poly>& f);

std::size_t binomial(std::size_t n, std::size_t k);

// Ordered basis of the degree-d forms in nvars variables.
class GradedBasis {
 public:
  GradedBasis(std::size_t nvars, unsigned degree);
  std::size_t nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }
  std::size_t size() const { return monomials_.size(); }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const Monomial& operator[](std::size_t k) const { return monomials_[k]; }
  std::size_t index_of(const Monomial& m) const;

 private:
  std::size_t nvars_;
  unsigned degree_;
  std::vector<Monomial> monomials_;
  std::map<Monomial, std::size_t, GrlexGreater> index_;
};

// Shared, immutable basis instances (thread safe).
const GradedBasis& graded_basis(std::size_t nvars, unsigned degree);

// Coordinates of a form of degree d (or of zero) in graded_basis(nvars, d).
Vector coefficient_vector(const Poly& f, unsigned degree);
Poly from_coefficients(const Field& field, std::size_t nvars, unsigned degree, const Vector& v);

}  // namespace gwexcess
