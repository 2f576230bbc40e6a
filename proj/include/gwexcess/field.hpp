#pragma once

// Exact scalar fields: prime fields F_p, extensions F_{p^m} = F_p[t]/(g(t))
// and the rationals. A Field is a cheap shared handle onto an immutable
// descriptor; an Elem always carries the handle of the field it lives in.

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace gwexcess {

enum class FieldKind { prime_finite, extension_finite, rationals };

class Elem;

class Field {
 public:
  // Throws InvalidArgument unless p is a prime below 2^32.
  static Field prime(std::uint64_t p);
  static Field rationals();
  // `modulus` is monic of degree m >= 2, ascending coefficients, and must be
  // irreducible over F_p (checked). Degree one collapses to the prime field.
  static Field extension(std::uint64_t p, std::vector<std::uint64_t> modulus);

  FieldKind kind() const;
  bool is_finite() const { return kind() != FieldKind::rationals; }
  std::uint64_t characteristic() const;
  unsigned degree() const;
  // Ascending coefficients; empty unless extension_finite.
  const std::vector<std::uint64_t>& modulus() const;
  // Number of elements; finite fields only.
  mpz_class order() const;
  // Prime subfield (the field itself for prime fields and the rationals).
  Field prime_subfield() const;

  Elem zero() const;
  Elem one() const;
  Elem from_int(long long v) const;
  Elem from_mpz(const mpz_class& v) const;
  Elem from_rational(const mpq_class& v) const;
  // Extension element from ascending coefficients over F_p (reduced mod g).
  Elem from_coeffs(const std::vector<long long>& coeffs) const;
  // Finite fields: the element whose coefficient vector spells `index` in
  // base p, lowest degree first. Inverse of Elem::index().
  Elem from_index(std::uint64_t index) const;
  // Image of a prime-subfield element.
  Elem embed(const Elem& base) const;

  // The least (by index) nonzero non-square; finite fields only.
  Elem nonresidue() const;

  std::string name() const;

  friend bool operator==(const Field& a, const Field& b);
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

  struct Impl;

 private:
  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;

  friend class Elem;
};

class Elem {
 public:
  using Rep = std::variant<std::uint64_t, std::vector<std::uint64_t>, mpq_class>;

  Elem(Field field, Rep rep);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  // Prime fields: residue in [0, p).
  std::uint64_t residue() const;
  // Extension fields: ascending coefficients of length m.
  const std::vector<std::uint64_t>& coeffs() const;
  // Rationals.
  const mpq_class& rational() const;
  // Finite fields: sum of c_i p^i. Requires the field order to fit 64 bits.
  std::uint64_t index() const;
  // Prime fields: the representative in (-p/2, p/2]; handy for printing.
  long long signed_residue() const;

  Elem operator-() const;
  Elem inv() const;
  Elem pow(const mpz_class& e) const;
  Elem pow(long long e) const { return pow(mpz_class(static_cast<long>(e))); }

  friend Elem operator+(const Elem& a, const Elem& b);
  friend Elem operator-(const Elem& a, const Elem& b);
  friend Elem operator*(const Elem& a, const Elem& b);
  friend Elem operator/(const Elem& a, const Elem& b);
  Elem& operator+=(const Elem& b) { return *this = *this + b; }
  Elem& operator-=(const Elem& b) { return *this = *this - b; }
  Elem& operator*=(const Elem& b) { return *this = *this * b; }

  friend bool operator==(const Elem& a, const Elem& b);
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }
  // Total order on representatives (index for finite fields, value for Q).
  friend bool canonical_less(const Elem& a, const Elem& b);

  std::string to_string() const;

 private:
  Field field_;
  Rep rep_;
};

bool is_square(const Elem& a);
// 1 for squares, Field::nonresidue() otherwise (finite fields); the signed
// squarefree part of num*den over Q.
Elem square_class(const Elem& a);
// Trace of F_{p^m} over F_p, returned as an element of the prime field.
Elem field_trace(const Elem& a);
// Frobenius a -> a^p.
Elem frobenius(const Elem& a);

// Deterministic-from-seed extension of degree m over F_p with a certified
// irreducible modulus. m == 1 returns the prime field.
Field build_extension(std::uint64_t p, unsigned m, std::uint64_t seed);

bool is_prime(std::uint64_t n);

namespace upoly {

// Dense polynomials over F_p, ascending coefficients, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

void trim(Poly& a);
Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
Poly mod(const Poly& a, const Poly& m, std::uint64_t p);
Poly gcd(Poly a, Poly b, std::uint64_t p);
Poly powmod(const Poly& a, const mpz_class& e, const Poly& m, std::uint64_t p);
// Rabin's test.
bool is_irreducible(const Poly& f, std::uint64_t p);

}  // namespace upoly

}  // namespace gwexcess
