#pragma once

// Virtual classes in the Grothendieck-Witt group of a field of odd or zero
// characteristic.
//
// A class is stored as  sum <p_i> - sum <n_j> + h*H  with H = <1> + <-1>,
// every p_i, n_j a canonical square-class representative and h a signed
// count of hyperbolic planes.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gwexcess/field.hpp"
#include "gwexcess/matrix.hpp"

namespace gwexcess {

enum class Comparison { equal, unequal, unknown };
std::string to_string(Comparison c);

struct GWInvariants {
  long long rank;
  Elem disc;  // square-class representative
  bool disc_is_square;
  long long hyperbolic_copies;
};

class GWClass {
 public:
  explicit GWClass(Field field);
  static GWClass diagonal(Field field, const std::vector<Elem>& entries);
  static GWClass hyperbolic(Field field, long long copies);

  const Field& field() const { return field_; }
  const std::vector<Elem>& positive() const { return pos_; }
  const std::vector<Elem>& negative() const { return neg_; }
  long long hyperbolic_count() const { return hyp_; }

  long long rank() const;
  Elem disc() const;
  // Over the rationals: (#positive reps - #negative reps) of the diagonal
  // entries, with the formal negative part subtracted.
  long long signature() const;
  GWInvariants invariants() const;

  // Finite fields: the anisotropic part of the Witt class determined by
  // (rank, disc); zero, one or two entries. Rationals: the diagonal left over
  // by witt_reduce.
  GWClass anisotropic_part() const;

  GWClass operator+(const GWClass& b) const;
  GWClass operator-() const;
  GWClass operator-(const GWClass& b) const { return *this + (-b); }
  GWClass& operator+=(const GWClass& b) { return *this = *this + b; }

  std::string to_string() const;

 private:
  void normalize();

  Field field_;
  std::vector<Elem> pos_, neg_;
  long long hyp_ = 0;

  friend GWClass witt_reduce(const GWClass& a);
  friend GWClass scale_unit(const Elem& u, const GWClass& a);
};

// The multiset of diagonal entries is compared as stored, without any
// reduction; see is_equal for the mathematical comparison.
bool identical(const GWClass& a, const GWClass& b);

// Cancels <a> appearing in both parts, and collects <a> + <-a> pairs inside
// either part into hyperbolic copies.
GWClass witt_reduce(const GWClass& a);
GWClass scale_unit(const Elem& u, const GWClass& a);
Comparison is_equal(const GWClass& a, const GWClass& b);

struct GramClass {
  GWClass cls;
  std::size_t radical_dim;
};
GramClass from_gram(const Matrix& g);

// Trace form along F_{p^m} / F_p using the power basis of the stored modulus.
GWClass transfer(const GWClass& c);
// Gram matrix of <a> pushed to the prime field: Tr(a t^{i+j}).
Matrix transfer_gram(const Elem& a);

}  // namespace gwexcess
