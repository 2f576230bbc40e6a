#pragma once

// Per-degree linear algebra for homogeneous ideals. Every object here lives in
// one graded piece R_d of k[x_0..x_{n-1}] and is written in the coordinates of
// graded_basis(nvars, d).

#include <cstddef>
#include <optional>
#include <vector>

#include "gwexcess/matrix.hpp"
#include "gwexcess/poly.hpp"

namespace gwexcess {

// A subspace of R_d. The columns of `basis` are independent coefficient
// vectors; they are kept in reduced column-echelon form so that two equal
// subspaces have equal bases.
class GradedSubspace {
 public:
  GradedSubspace(Field field, std::size_t nvars, unsigned degree);
  // Span of arbitrary (possibly dependent) columns.
  static GradedSubspace span(Field field, std::size_t nvars, unsigned degree, const Matrix& columns);
  static GradedSubspace whole(Field field, std::size_t nvars, unsigned degree);

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }
  std::size_t ambient_dim() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  std::vector<Poly> basis_polys() const;

  bool contains(const Vector& v) const;
  bool contains(const Poly& f) const;
  bool contains(const GradedSubspace& other) const;
  // A matrix whose kernel is exactly this subspace (rows = codimension).
  Matrix annihilator() const;

  friend bool operator==(const GradedSubspace& a, const GradedSubspace& b);
  friend bool operator!=(const GradedSubspace& a, const GradedSubspace& b) { return !(a == b); }

 private:
  Field field_;
  std::size_t nvars_;
  unsigned degree_;
  Matrix basis_;
};

class GradedIdeal {
 public:
  // Zero generators are dropped; inhomogeneous ones are rejected.
  GradedIdeal(Field field, std::size_t nvars, std::vector<Poly> generators);
  // (x_0, ..., x_{n-1})^e.
  static GradedIdeal power_of_maximal(Field field, std::size_t nvars, unsigned e);

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Poly>& generators() const { return gens_; }
  unsigned max_generator_degree() const;

 private:
  Field field_;
  std::size_t nvars_;
  std::vector<Poly> gens_;
};

// Matrix of multiplication by a form g of degree e, R_d -> R_{d+e}.
Matrix multiplication_matrix(const Poly& g, unsigned d);

GradedSubspace ideal_piece(const GradedIdeal& j, unsigned d);
std::size_t quotient_dim(const GradedIdeal& j, unsigned d);

// Three forms of a common degree k in three variables generate an ideal of
// finite colength iff the quotient vanishes in degree 3(k-1)+1.
bool artinian_test(const std::vector<Poly>& f);

// det(a_ij) for the splitting f_i = sum_j a_ij x_j that assigns each monomial
// to its largest variable index. Throws InadmissibleInput when the forms are
// not Artinian and InternalInconsistency if E lands in the ideal anyway.
Poly socle_element(const std::vector<Poly>& f);
// The splitting matrix used by socle_element.
PolyMatrix peeling_matrix(const std::vector<Poly>& f);

// (J : I)_d: forms f of degree d with f*g in J for every generator g of I.
GradedSubspace ideal_quotient_piece(const GradedIdeal& j, const GradedIdeal& i, unsigned d);

struct SaturationPiece {
  GradedSubspace piece;
  unsigned exponent;  // first e with (J : m^e)_d == (J : m^{e+1})_d
};

// (J : m^e)_d for e = 1, 2, ... until two consecutive values agree. The
// default bound is 1 + max generator degree + d; exceeding it throws
// BudgetExhausted.
SaturationPiece saturation_piece(const GradedIdeal& j, unsigned d,
                                 std::optional<unsigned> stab_bound = std::nullopt);

}  // namespace gwexcess
