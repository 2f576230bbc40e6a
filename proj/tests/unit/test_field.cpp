#include <doctest.h>

#include <set>

#include "gwexcess/errors.hpp"
#include "gwexcess/field.hpp"

using namespace gwexcess;

namespace {

// Squares of F_p by exhausting x -> x^2.
std::set<std::uint64_t> squares_mod(std::uint64_t p) {
  std::set<std::uint64_t> s;
  for (std::uint64_t x = 1; x < p; ++x) s.insert(x * x % p);
  return s;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  const Field f31 = Field::prime(31);
  CHECK((f31.from_int(15) * f31.from_int(15)).residue() == 8);
  CHECK(f31.from_int(-1).residue() == 30);
  const Field f61 = Field::prime(61);
  CHECK(f61.one().inv() == f61.one());
  CHECK_THROWS_AS(f31.zero().inv(), DivisionByZero);
  CHECK_THROWS_AS(f31.one() + f61.one(), FieldMismatch);
  for (long long a = 1; a < 31; ++a) CHECK((f31.from_int(a) * f31.from_int(a).inv()).is_one());
}

TEST_CASE("extension arithmetic in F9") {
  const Field f9 = Field::extension(3, {1, 0, 1});
  const Elem t = f9.from_coeffs({0, 1});
  CHECK(t * t == f9.from_int(-1));
  CHECK(f9.order() == 9);
  for (std::uint64_t i = 1; i < 9; ++i) {
    const Elem a = f9.from_index(i);
    CHECK(a.index() == i);
    CHECK((a * a.inv()).is_one());
    CHECK(a.pow(8).is_one());
  }
  CHECK_THROWS(Field::extension(3, {2, 0, 1}));  // t^2 - 1 is reducible
}

TEST_CASE("rational arithmetic") {
  const Field q = Field::rationals();
  const Elem a = q.from_rational(mpq_class(3, 4));
  CHECK((a * a.inv()).is_one());
  CHECK((a + a).rational() == mpq_class(3, 2));
  CHECK(is_square(q.from_rational(mpq_class(9, 4))));
  CHECK_FALSE(is_square(q.from_int(-4)));
  CHECK(square_class(q.from_int(-12)).rational() == -3);
  CHECK(square_class(q.from_rational(mpq_class(2, 3))).rational() == 6);
}

TEST_CASE("square classes agree with exhaustion") {
  for (std::uint64_t p : {3u, 5u, 7u, 11u, 31u, 61u}) {
    const Field f = Field::prime(p);
    const auto sq = squares_mod(p);
    std::uint64_t least_nonsquare = 0;
    for (std::uint64_t x = 1; x < p; ++x)
      if (!sq.count(x)) {
        least_nonsquare = x;
        break;
      }
    CHECK(f.nonresidue().residue() == least_nonsquare);
    for (std::uint64_t x = 1; x < p; ++x) {
      CHECK(is_square(f.from_int(static_cast<long long>(x))) == (sq.count(x) == 1));
      const Elem c = square_class(f.from_int(static_cast<long long>(x)));
      CHECK(c.residue() == (sq.count(x) ? 1u : least_nonsquare));
    }
  }
  const Field f31 = Field::prime(31);
  CHECK(is_square(f31.from_int(70)));
  CHECK(square_class(f31.from_int(70)).is_one());
  CHECK_FALSE(is_square(f31.from_int(-1)));
  CHECK(square_class(Field::prime(5).from_int(3)).residue() == 2);
  CHECK_THROWS_AS(is_square(f31.zero()), InvalidArgument);
}

TEST_CASE("half the units of small extensions are squares") {
  for (auto [p, m] : {std::pair<std::uint64_t, unsigned>{3, 2}, {3, 3}, {5, 2}, {7, 2}, {11, 2}}) {
    const Field f = build_extension(p, m, 7);
    const std::uint64_t q = f.order().get_ui();
    std::set<std::uint64_t> sq;
    for (std::uint64_t i = 1; i < q; ++i) sq.insert((f.from_index(i) * f.from_index(i)).index());
    CHECK(sq.size() == (q - 1) / 2);
    std::size_t count = 0;
    for (std::uint64_t i = 1; i < q; ++i) {
      const bool s = is_square(f.from_index(i));
      CHECK(s == (sq.count(i) == 1));
      count += s;
    }
    CHECK(count == (q - 1) / 2);
  }
}

TEST_CASE("multiplicativity of squareness and square-class stability") {
  const Field f = build_extension(5, 2, 3);
  for (std::uint64_t i = 1; i < 25; ++i) {
    for (std::uint64_t j = 1; j < 25; ++j) {
      const Elem a = f.from_index(i), b = f.from_index(j);
      CHECK(is_square(a * b) == (is_square(a) == is_square(b)));
      CHECK(square_class(b * b * a) == square_class(a));
    }
  }
}

TEST_CASE("field trace") {
  const Field f9 = Field::extension(3, {1, 0, 1});
  const Elem t = f9.from_coeffs({0, 1});
  CHECK(field_trace(t).is_zero());
  CHECK(field_trace(f9.zero()).is_zero());
  CHECK(field_trace(f9.one()).residue() == 2);
  CHECK(field_trace(f9.from_int(2)).field() == Field::prime(3));

  const Field f = build_extension(5, 3, 11);
  const Field base = f.prime_subfield();
  for (std::uint64_t i = 0; i < 125; i += 7) {
    for (std::uint64_t j = 0; j < 125; j += 11) {
      for (long long c = 0; c < 5; ++c) {
        const Elem a = f.from_index(i), b = f.from_index(j);
        const Elem lhs = field_trace(f.from_int(c) * a + b);
        CHECK(lhs == base.from_int(c) * field_trace(a) + field_trace(b));
      }
    }
  }
  // Base elements trace to m * c.
  CHECK(field_trace(f.from_int(2)) == base.from_int(6));
}

TEST_CASE("frobenius is the p-th power and fixes the prime field") {
  const Field f = build_extension(3, 3, 1);
  for (std::uint64_t i = 0; i < 27; ++i) {
    const Elem a = f.from_index(i);
    CHECK(frobenius(a) == a.pow(3));
  }
  CHECK(frobenius(f.from_int(2)) == f.from_int(2));
}

TEST_CASE("build_extension") {
  CHECK(build_extension(3, 1, 0) == Field::prime(3));
  CHECK(build_extension(3, 1, 0).kind() == FieldKind::prime_finite);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Field f = build_extension(3, 2, seed);
    const auto& g = f.modulus();
    REQUIRE(g.size() == 3);
    CHECK(g[2] == 1);
    for (std::uint64_t x = 0; x < 3; ++x) CHECK((g[0] + g[1] * x + g[2] * x * x) % 3 != 0);
    CHECK(build_extension(3, 2, seed) == f);
  }
  CHECK_THROWS_AS(build_extension(4, 2, 0), InvalidArgument);
  CHECK_THROWS_AS(Field::prime(9), InvalidArgument);
}

TEST_CASE("irreducibility test against brute-force factor search") {
  // Degree-3 polynomials over F_3 are irreducible iff they have no root.
  for (std::uint64_t a = 0; a < 3; ++a)
    for (std::uint64_t b = 0; b < 3; ++b)
      for (std::uint64_t c = 1; c < 3; ++c) {
        upoly::Poly f{c, b, a, 1};
        bool root = false;
        for (std::uint64_t x = 0; x < 3; ++x) root |= (c + b * x + a * x * x + x * x * x) % 3 == 0;
        CHECK(upoly::is_irreducible(f, 3) == !root);
      }
}
