#include <doctest.h>

#include <random>

#include "gwexcess/errors.hpp"
#include "gwexcess/ideals.hpp"

using namespace gwexcess;

namespace {

struct Ring3 {
  Field f;
  Poly x, y, z;
  explicit Ring3(Field field)
      : f(field), x(Poly::variable(f, 3, 0)), y(Poly::variable(f, 3, 1)), z(Poly::variable(f, 3, 2)) {}
};

struct Ring2 {
  Field f;
  Poly x, y;
  explicit Ring2(Field field) : f(field), x(Poly::variable(f, 2, 0)), y(Poly::variable(f, 2, 1)) {}
  Poly c(long long v) const { return Poly::constant(f, 2, f.from_int(v)); }
};

// Degree-d monomials divisible by some a-th power of a variable: the graded
// piece of the monomial ideal (x^a, y^a, z^a) counted directly.
std::size_t monomial_ideal_dim(unsigned a, unsigned d) {
  std::size_t count = 0;
  for (const auto& m : graded_basis(3, d).monomials())
    if (m[0] >= a || m[1] >= a || m[2] >= a) ++count;
  return count;
}

GradedSubspace multiples_of(const Poly& g, unsigned d) {
  const unsigned e = *g.homogeneous_degree();
  if (e > d) return GradedSubspace(g.field(), g.nvars(), d);
  return GradedSubspace::span(g.field(), g.nvars(), d, multiplication_matrix(g, d - e));
}

}  // namespace

TEST_CASE("graded pieces of a monomial complete intersection") {
  const Ring3 r(Field::prime(31));
  const GradedIdeal j(r.f, 3, {r.x.pow(3), r.y.pow(3), r.z.pow(3)});
  std::size_t total = 0;
  for (unsigned d = 0; d <= 9; ++d) {
    CHECK(ideal_piece(j, d).dim() == monomial_ideal_dim(3, d));
    total += quotient_dim(j, d);
  }
  CHECK(ideal_piece(j, 3).dim() == 3);
  CHECK(ideal_piece(j, 6).dim() == 27);
  CHECK(quotient_dim(j, 6) == 1);
  CHECK(quotient_dim(j, 7) == 0);
  CHECK(quotient_dim(j, 0) == 1);
  CHECK(ideal_piece(j, 2).dim() == 0);
  CHECK(total == 27);
}

TEST_CASE("artinian test") {
  const Ring3 r(Field::prime(31));
  CHECK(artinian_test({r.x.pow(3), r.y.pow(3), r.z.pow(3)}));
  CHECK_FALSE(artinian_test({r.x.pow(3), r.x.pow(2) * r.y, r.x.pow(2) * r.z}));
  CHECK_FALSE(artinian_test({r.x.pow(3), Poly(r.f, 3), r.z.pow(3)}));
  CHECK_THROWS_AS(artinian_test({r.x.pow(3), r.y.pow(2), r.z.pow(3)}), InvalidArgument);
}

TEST_CASE("socle element and the Jacobian identity for cubes") {
  const Ring3 r(Field::rationals());
  const std::vector<Poly> f{r.x.pow(3), r.y.pow(3), r.z.pow(3)};
  const Poly e = socle_element(f);
  CHECK(e == r.x.pow(2) * r.y.pow(2) * r.z.pow(2));
  CHECK(jacobian_determinant(f) == r.f.from_int(27) * e);

  const Ring3 r3(Field::prime(3));
  CHECK(jacobian_determinant({r3.x.pow(3), r3.y.pow(3), r3.z.pow(3)}).is_zero());
  CHECK_THROWS_AS(socle_element({r.x.pow(3), r.x.pow(2) * r.y, r.x.pow(2) * r.z}), InadmissibleInput);
}

TEST_CASE("socle element of random artinian cubics spans the top degree") {
  std::mt19937_64 rng(21);
  const Field f = Field::prime(11);
  int tried = 0;
  for (int t = 0; t < 10; ++t) {
    std::vector<Poly> g;
    for (int i = 0; i < 3; ++i) {
      Poly h(f, 3);
      for (const auto& m : graded_basis(3, 3).monomials())
        h.add_term(m, f.from_int(static_cast<long long>(rng() % 11)));
      g.push_back(h);
    }
    if (!artinian_test(g)) continue;
    ++tried;
    const GradedIdeal j(f, 3, g);
    std::size_t total = 0;
    for (unsigned d = 0; d <= 7; ++d) total += quotient_dim(j, d);
    CHECK(total == 27);
    CHECK(quotient_dim(j, 6) == 1);
    const Poly e = socle_element(g);
    CHECK_FALSE(ideal_piece(j, 6).contains(e));
    // Jacobian identity modulo the ideal.
    CHECK(ideal_piece(j, 6).contains(jacobian_determinant(g) - f.from_int(27) * e));
  }
  CHECK(tried > 5);
}

TEST_CASE("ideal quotients") {
  const Ring2 r(Field::prime(31));
  const GradedIdeal j(r.f, 2, {r.x * r.y, r.x.pow(3)});
  const GradedIdeal i(r.f, 2, {r.x});
  const GradedSubspace k1 = ideal_quotient_piece(j, i, 1);
  CHECK(k1.dim() == 1);
  CHECK(k1.contains(r.y));
  CHECK(ideal_quotient_piece(j, i, 2) == GradedSubspace::whole(r.f, 2, 2));
  CHECK(ideal_quotient_piece(j, i, 0).dim() == 0);

  const GradedIdeal unit(r.f, 2, {r.c(1)});
  for (unsigned d = 0; d <= 6; ++d) {
    CHECK(ideal_quotient_piece(j, unit, d) == ideal_piece(j, d));
    CHECK(ideal_quotient_piece(j, i, d).contains(ideal_piece(j, d)));
  }
}

TEST_CASE("saturation of (xy, x^3) is (x)") {
  const Ring2 r(Field::prime(31));
  const GradedIdeal j(r.f, 2, {r.x * r.y, r.x.pow(3)});
  const auto s1 = saturation_piece(j, 1);
  CHECK(s1.piece.dim() == 1);
  CHECK(s1.piece.contains(r.x));
  for (unsigned d = 1; d <= 10; ++d) CHECK(saturation_piece(j, d).piece == multiples_of(r.x, d));
  CHECK(saturation_piece(j, 0).piece.dim() == 0);

  // Saturating the saturation changes nothing.
  const GradedIdeal sat(r.f, 2, {r.x});
  for (unsigned d = 0; d <= 6; ++d) CHECK(saturation_piece(sat, d).piece == multiples_of(r.x, d));
}

TEST_CASE("saturation of an artinian ideal fills the top degrees") {
  const Ring3 r(Field::prime(7));
  const GradedIdeal j(r.f, 3, {r.x.pow(3), r.y.pow(3), r.z.pow(3)});
  for (unsigned d = 5; d <= 8; ++d) CHECK(saturation_piece(j, d).piece == GradedSubspace::whole(r.f, 3, d));
  CHECK_THROWS_AS(saturation_piece(j, 5, 0u), BudgetExhausted);
}
