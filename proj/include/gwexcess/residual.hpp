#pragma once

// Residual intersections degree by degree: the split J -> (I = J : m^inf,
// K = J : I), freeness of J/KJ over R/K, homology of the modified Koszul
// complex, and the multiplication form I/J x I/J -> I^2/JI.

#include <cstddef>
#include <string>
#include <vector>

#include "gwexcess/gw.hpp"
#include "gwexcess/ideals.hpp"

namespace gwexcess {

// The ideal generated by all products of e generators of `i` (R for e <= 0).
GradedIdeal ideal_power(const GradedIdeal& i, int e);
GradedIdeal ideal_product(const GradedIdeal& a, const GradedIdeal& b);

// Columns of big.basis() that are independent modulo `small`, scanned left to
// right.
std::vector<std::size_t> complement_columns(const GradedSubspace& big, const GradedSubspace& small);

struct SplitIdeal {
  std::vector<GradedSubspace> I;        // I[d], d = 0..D
  std::vector<GradedSubspace> K;        // K[d]
  std::vector<Poly> I_generators;       // basis vectors of I_d not in R_1 I_{d-1}
  std::vector<unsigned> saturation_exponents;
  GradedIdeal I_ideal() const;
};
SplitIdeal split_ideal(const GradedIdeal& j, unsigned max_degree);

// For each d <= D: every relation sum x_i a_i in (KJ)_d has all x_i in K.
// `k[d]` must cover the degrees d - deg a_i that occur. Throws
// InvalidArgument if the a_i do not span J_d.
struct FreenessReport {
  bool free;
  std::vector<unsigned> failing_degrees;
};
FreenessReport conormal_freeness_check(const GradedIdeal& j, const std::vector<GradedSubspace>& k,
                                       const std::vector<Poly>& a, unsigned max_degree);

// Terms C_lo..C_hi; for each internal degree d, dims[d][n - lo] and the
// differential d_n : C_n -> C_{n-1} as diff[d][n - lo] (empty for n = lo).
struct GradedComplex {
  std::string descriptor;
  int lo, hi;
  std::vector<std::vector<std::size_t>> dims;
  std::vector<std::vector<Matrix>> diff;
};

// Kos'_n = I^{t+1-n} (x) Lambda^n <e_1..e_s>, deg e_i = deg a_i, with the
// Koszul differential e_i -> a_i. Throws InternalInconsistency if a
// differential leaves the subcomplex or d^2 != 0.
GradedComplex kos_prime(const std::vector<Poly>& a, const GradedIdeal& i, int t, unsigned max_degree);

// homology[d][n] = dim H_n in internal degree d.
struct HomologyTable {
  std::vector<std::vector<std::size_t>> homology;
  std::vector<std::vector<std::size_t>> term_dims;
};
HomologyTable complex_homology(const GradedComplex& c);
HomologyTable kos_prime_homology(const std::vector<Poly>& a, const GradedIdeal& i, int t, unsigned max_degree);

struct ModuleForm {
  std::vector<Poly> quotient_basis;  // representatives of a basis of I/J
  std::vector<Poly> target_basis;    // representatives of a basis of I^2/JI
  // gram[u][v] = coordinates of quotient_basis[u] * quotient_basis[v].
  std::vector<std::vector<Vector>> gram;
  std::vector<std::size_t> quotient_dims;  // dim (I/J)_d
  std::vector<std::size_t> target_dims;    // dim (I^2/JI)_d
};
// Throws BudgetExhausted unless I/J and I^2/JI are seen to vanish in some
// degree above their generating degrees, within max_degree.
ModuleForm mult_form(const GradedIdeal& j, const GradedIdeal& i, unsigned max_degree);

struct ScalarForm {
  Matrix gram;
  GWClass cls;
  std::size_t radical_dim;
  bool nondegenerate;
};
// lambda has one entry per target basis element.
ScalarForm scalarize(const ModuleForm& form, const Vector& lambda);

}  // namespace gwexcess
