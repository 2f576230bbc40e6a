#include <doctest.h>

#include <random>

#include "gwexcess/errors.hpp"
#include "gwexcess/poly.hpp"

using namespace gwexcess;

namespace {

Poly random_form(const Field& f, std::size_t nvars, unsigned d, std::mt19937_64& rng) {
  Poly r(f, nvars);
  for (const auto& m : graded_basis(nvars, d).monomials())
    r.add_term(m, f.from_int(static_cast<long long>(rng() % f.characteristic())));
  return r;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  const Field f = Field::prime(31);
  const Poly x = Poly::variable(f, 2, 0), y = Poly::variable(f, 2, 1);
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK((x * Poly(f, 2)).is_zero());
  CHECK(((x * x) * y).homogeneous_degree() == 3u);
  CHECK_FALSE((x + x * y).homogeneous_degree().has_value());

  const Field f3 = Field::prime(3);
  const Poly a = Poly::variable(f3, 2, 0), b = Poly::variable(f3, 2, 1);
  CHECK((a + b).pow(3) == a.pow(3) + b.pow(3));
}

TEST_CASE("partial derivatives") {
  const Field q = Field::rationals();
  const Poly x = Poly::variable(q, 2, 0), y = Poly::variable(q, 2, 1);
  CHECK(x.pow(3).partial_derivative(0) == q.from_int(3) * x.pow(2));
  CHECK(y.pow(2).partial_derivative(0).is_zero());
  const Field f3 = Field::prime(3);
  CHECK(Poly::variable(f3, 1, 0).pow(3).partial_derivative(0).is_zero());
}

TEST_CASE("determinants of polynomial matrices") {
  const Field f = Field::prime(61);
  PolyMatrix m(f, 3, 3, 3);
  for (std::size_t i = 0; i < 3; ++i) m(i, i) = Poly::variable(f, 3, i);
  CHECK(det(m) == Poly::variable(f, 3, 0) * Poly::variable(f, 3, 1) * Poly::variable(f, 3, 2));

  std::mt19937_64 rng(3);
  PolyMatrix r(f, 3, 3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = random_form(f, 3, 1, rng);
  PolyMatrix rep = r;
  for (std::size_t j = 0; j < 3; ++j) rep(2, j) = rep(0, j);
  CHECK(det(rep).is_zero());

  // Alternating and multilinear in rows.
  PolyMatrix swapped = r;
  for (std::size_t j = 0; j < 3; ++j) std::swap(swapped(0, j), swapped(1, j));
  CHECK(det(swapped) == -det(r));
  PolyMatrix scaled = r;
  for (std::size_t j = 0; j < 3; ++j) scaled(1, j) = f.from_int(7) * scaled(1, j);
  CHECK(det(scaled) == f.from_int(7) * det(r));
  const Poly d = det(r);
  CHECK(d.homogeneous_degree() == 3u);

  // The 0x0 determinant is 1; minors drop rows and columns.
  CHECK(det(PolyMatrix(f, 3, 0, 0)) == Poly::constant(f, 3, f.one()));
  CHECK(minor(m, {0}, {0}) == Poly::variable(f, 3, 1) * Poly::variable(f, 3, 2));
  CHECK_THROWS_AS(det(PolyMatrix(f, 3, 2, 3)), InvalidArgument);
}

TEST_CASE("graded bases") {
  const auto& b1 = graded_basis(3, 1);
  REQUIRE(b1.size() == 3);
  CHECK(b1[0] == Monomial::variable(3, 0));
  CHECK(b1[2] == Monomial::variable(3, 2));
  CHECK(graded_basis(3, 6).size() == 28);
  CHECK(graded_basis(6, 2).size() == 21);
  CHECK(graded_basis(3, 0).size() == 1);
  for (unsigned d = 0; d < 6; ++d) {
    const auto& b = graded_basis(4, d);
    CHECK(b.size() == binomial(d + 3, 3));
    for (std::size_t k = 0; k + 1 < b.size(); ++k) CHECK(GrlexGreater{}(b[k], b[k + 1]));
  }

  const Field f = Field::prime(31);
  const Poly x0 = Poly::variable(f, 3, 0), x1 = Poly::variable(f, 3, 1), x2 = Poly::variable(f, 3, 2);
  const Vector v = coefficient_vector(x0 * x1 + f.from_int(2) * x2 * x2, 2);
  const auto& b2 = graded_basis(3, 2);
  for (std::size_t k = 0; k < b2.size(); ++k) {
    if (b2[k] == Monomial({1, 1, 0}))
      CHECK(v[k].residue() == 1);
    else if (b2[k] == Monomial({0, 0, 2}))
      CHECK(v[k].residue() == 2);
    else
      CHECK(v[k].is_zero());
  }
  CHECK_THROWS_AS(coefficient_vector(x0, 2), InvalidArgument);

  std::mt19937_64 rng(1);
  for (unsigned d = 0; d < 5; ++d) {
    const Poly g = random_form(f, 3, d, rng);
    CHECK(from_coefficients(f, 3, d, coefficient_vector(g, d)) == g);
  }
}

TEST_CASE("substitution and evaluation") {
  const Field f = Field::prime(31);
  const Poly x = Poly::variable(f, 2, 0), y = Poly::variable(f, 2, 1);
  CHECK((x * x + y * y).evaluate({f.from_int(3), f.from_int(4)}).residue() == 25);

  // x3 * (x0 + x1) restricted to x3 = 0 vanishes.
  const Poly q = Poly::variable(f, 4, 3) * (Poly::variable(f, 4, 0) + Poly::variable(f, 4, 1));
  std::vector<Poly> sub{Poly::variable(f, 4, 0), Poly::variable(f, 4, 1), Poly::variable(f, 4, 2),
                        Poly(f, 4)};
  CHECK(q.substitute(sub).is_zero());

  // x0^2 x2 in chart 2: x0 -> (+1) x0, x2 -> 1, in the two chart variables.
  const Field q3 = Field::rationals();
  const Poly g = Poly::variable(q3, 3, 0).pow(2) * Poly::variable(q3, 3, 2);
  const Poly u = Poly::variable(q3, 2, 0), w = Poly::variable(q3, 2, 1);
  const Poly chart = g.substitute({u, w, Poly::constant(q3, 2, q3.one())});
  CHECK(chart == u * u);

  // Evaluation in an extension.
  const Field f9 = Field::extension(3, {1, 0, 1});
  const Field f3 = Field::prime(3);
  const Poly h = Poly::variable(f3, 1, 0).pow(2) + Poly::constant(f3, 1, f3.one());
  CHECK(h.evaluate({f9.from_coeffs({0, 1})}).is_zero());
}

TEST_CASE("jacobian determinant") {
  const Field q = Field::rationals();
  const Poly x = Poly::variable(q, 2, 0), y = Poly::variable(q, 2, 1);
  CHECK(jacobian_determinant({x * y, x + y}) == y - x);
}
