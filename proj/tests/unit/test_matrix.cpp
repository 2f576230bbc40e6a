#include <doctest.h>

#include <random>

#include "gwexcess/errors.hpp"
#include "gwexcess/matrix.hpp"

using namespace gwexcess;

namespace {

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Matrix m(f, r, c);
  const auto p = f.characteristic();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(static_cast<long long>(rng() % p));
  return m;
}

Matrix random_symmetric(const Field& f, std::size_t n, std::mt19937_64& rng, unsigned zero_bias) {
  Matrix m(f, n, n);
  const auto p = f.characteristic();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const long long v = rng() % zero_bias == 0 ? static_cast<long long>(rng() % p) : 0;
      m(i, j) = m(j, i) = f.from_int(v);
    }
  return m;
}

bool is_diagonal(const Matrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && !d(i, j).is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("rref basics") {
  const Field f = Field::prime(31);
  const auto id = Matrix::identity(f, 4);
  const auto r = rref(id);
  CHECK(r.reduced == id);
  CHECK(r.rank == 4);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(rank(Matrix(f, 3, 5)) == 0);
  CHECK(rank(Matrix::from_ints(f, {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel and solve") {
  const Field f5 = Field::prime(5);
  CHECK(kernel_basis(Matrix::identity(f5, 3)).cols() == 0);
  CHECK(kernel_basis(Matrix(f5, 2, 4)).cols() == 4);
  const Matrix k = kernel_basis(Matrix::from_ints(f5, {{1, 1}}));
  REQUIRE(k.cols() == 1);
  CHECK(k(0, 0) == -k(1, 0));

  const Vector b{f5.from_int(1), f5.from_int(2)};
  CHECK(*solve(Matrix::identity(f5, 2), b) == b);
  CHECK_FALSE(solve(Matrix(f5, 2, 2), b).has_value());
  CHECK((*solve(Matrix::from_ints(f5, {{2}}), {f5.one()}))[0].residue() == 3);
}

TEST_CASE("rref, kernel and solve are consistent on random inputs") {
  std::mt19937_64 rng(5);
  for (std::uint64_t p : {3u, 7u, 31u}) {
    const Field f = Field::prime(p);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
      Matrix m = random_matrix(f, r, c, rng);
      if (trial % 3 == 0 && r > 1) {
        for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) + m(0, j);
      }
      const Matrix k = kernel_basis(m);
      CHECK(k.cols() == c - rank(m));
      CHECK((m * k).is_zero());
      CHECK(rank(k) == k.cols());
      Vector x(c, f.zero());
      for (auto& e : x) e = f.from_int(static_cast<long long>(rng() % p));
      const Vector b = m * x;
      auto sol = solve(m, b);
      REQUIRE(sol.has_value());
      CHECK(m * *sol == b);
    }
  }
}

TEST_CASE("determinant matches cofactor expansion on 3x3") {
  std::mt19937_64 rng(9);
  const Field f = Field::prime(61);
  for (int t = 0; t < 30; ++t) {
    const Matrix m = random_matrix(f, 3, 3, rng);
    const Elem cof = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                     m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                     m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    CHECK(determinant(m) == cof);
  }
}

TEST_CASE("congruence diagonalization on fixed inputs") {
  const Field f5 = Field::prime(5);
  const Matrix h = Matrix::from_ints(f5, {{0, 1}, {1, 0}});
  const auto [p, d] = congruence_diagonalize(h);
  CHECK(p.transpose() * h * p == d);
  CHECK(is_diagonal(d));
  CHECK(d(0, 0) == f5.from_int(2));
  // disc class of a hyperbolic plane is that of -1
  CHECK(square_class(d(0, 0) * d(1, 1)) == square_class(f5.from_int(-1)));

  const Matrix z(f5, 3, 3);
  const auto zd = congruence_diagonalize(z);
  CHECK(zd.D.is_zero());
  CHECK(zd.P == Matrix::identity(f5, 3));

  CHECK_THROWS_AS(congruence_diagonalize(Matrix::from_ints(f5, {{1, 2}, {3, 1}})), InvalidArgument);
  CHECK_THROWS_AS(congruence_diagonalize(Matrix::identity(Field::prime(2), 2)), InvalidArgument);
}

TEST_CASE("congruence diagonalization on random symmetric matrices") {
  std::mt19937_64 rng(17);
  for (std::uint64_t p : {3u, 5u, 31u}) {
    const Field f = Field::prime(p);
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 1 + rng() % 8;
      const Matrix g = random_symmetric(f, n, rng, 1 + t % 4);
      const auto [pm, d] = congruence_diagonalize(g);
      CHECK(pm.transpose() * g * pm == d);
      CHECK(is_diagonal(d));
      CHECK(determinant(pm) != f.zero());
      CHECK(rank(d) == rank(g));
    }
  }
}

TEST_CASE("column space basis") {
  const Field f = Field::prime(7);
  const Matrix a = Matrix::from_ints(f, {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
  const Matrix b = column_space_basis(a);
  CHECK(b.cols() == 2);
  CHECK(rank(a.hstack(b)) == 2);
}
