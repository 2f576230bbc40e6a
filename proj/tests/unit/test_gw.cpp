#include <doctest.h>

#include <map>
#include <random>

#include "gwexcess/errors.hpp"
#include "gwexcess/gw.hpp"

using namespace gwexcess;

namespace {

GWClass diag(const Field& f, std::initializer_list<long long> v) {
  std::vector<Elem> e;
  for (long long x : v) e.push_back(f.from_int(x));
  return GWClass::diagonal(f, e);
}

// How often a diagonal form over F_p takes each value, by exhausting F_p^r.
std::map<std::uint64_t, std::size_t> value_distribution(const std::vector<std::uint64_t>& d, std::uint64_t p) {
  std::map<std::uint64_t, std::size_t> dist;
  std::vector<std::uint64_t> v(d.size(), 0);
  for (;;) {
    std::uint64_t q = 0;
    for (std::size_t i = 0; i < d.size(); ++i) q = (q + d[i] * v[i] % p * v[i]) % p;
    ++dist[q];
    std::size_t k = 0;
    while (k < v.size() && ++v[k] == p) v[k++] = 0;
    if (k == v.size()) break;
  }
  return dist;
}

}  // namespace

TEST_CASE("invariants of small classes") {
  const Field f31 = Field::prime(31);
  const GWClass c = diag(f31, {-9, -7, -10, -1});
  const auto inv = c.invariants();
  CHECK(inv.rank == 4);
  CHECK(inv.disc_is_square);
  CHECK(is_equal(c, GWClass::hyperbolic(f31, 2)) == Comparison::equal);
  CHECK(inv.hyperbolic_copies == 2);

  const GWClass h = diag(f31, {1, -1});
  CHECK(h.invariants().rank == 2);
  CHECK(h.disc() == square_class(f31.from_int(-1)));
  CHECK(h.invariants().hyperbolic_copies == 1);

  const GWClass zero(f31);
  CHECK(zero.rank() == 0);
  CHECK(zero.disc().is_one());

  const GWClass ns = diag(f31, {-2, 3, -14, 4});
  CHECK_FALSE(ns.invariants().disc_is_square);
  CHECK(is_equal(ns, GWClass::hyperbolic(f31, 2)) == Comparison::unequal);
  CHECK(ns.invariants().hyperbolic_copies == 1);
  CHECK(ns.anisotropic_part().rank() == 2);
  CHECK(is_equal(ns.anisotropic_part() + GWClass::hyperbolic(f31, 1), ns) == Comparison::equal);
}

TEST_CASE("witt reduction and group operations") {
  const Field f7 = Field::prime(7);
  const GWClass h = witt_reduce(diag(f7, {1, -1}));
  CHECK(h.hyperbolic_count() == 1);
  CHECK(h.positive().empty());

  const GWClass a = diag(f7, {1, 3, 5, 6});
  CHECK(identical(scale_unit(f7.from_int(9), a), a));
  const GWClass z = witt_reduce(a + (-a));
  CHECK(z.rank() == 0);
  CHECK(z.positive().empty());
  CHECK(z.negative().empty());
  CHECK(z.hyperbolic_count() == 0);

  const GWClass virt = GWClass::hyperbolic(f7, 8) - diag(f7, {1, 3});
  CHECK(virt.rank() == 14);
  CHECK(virt.to_string() == "8H - <1> - <3>");
  CHECK_THROWS_AS(a + diag(Field::prime(5), {1}), FieldMismatch);
  CHECK_THROWS_AS(GWClass(Field::prime(2)), InvalidArgument);
}

TEST_CASE("discriminant is multiplicative and rank additive") {
  std::mt19937_64 rng(2);
  const Field f = Field::prime(13);
  for (int t = 0; t < 50; ++t) {
    std::vector<Elem> ea, eb;
    for (std::size_t k = rng() % 5; k > 0; --k) ea.push_back(f.from_int(1 + static_cast<long long>(rng() % 12)));
    for (std::size_t k = rng() % 5; k > 0; --k) eb.push_back(f.from_int(1 + static_cast<long long>(rng() % 12)));
    const GWClass a = GWClass::diagonal(f, ea), b = GWClass::diagonal(f, eb);
    CHECK((a + b).disc() == square_class(a.disc() * b.disc()));
    CHECK((a + b).rank() == a.rank() + b.rank());
    const Elem u = f.from_int(1 + static_cast<long long>(rng() % 12));
    const auto i1 = scale_unit(u * u, a).invariants(), i0 = a.invariants();
    CHECK(i1.rank == i0.rank);
    CHECK(i1.disc == i0.disc);
  }
}

TEST_CASE("equality over F_q agrees with value distributions") {
  for (std::uint64_t p : {3u, 5u, 7u}) {
    const Field f = Field::prime(p);
    const std::uint64_t g = f.nonresidue().residue();
    for (std::size_t r = 1; r <= 3; ++r) {
      // All diagonal forms with entries in {1, g}.
      std::vector<std::vector<std::uint64_t>> forms;
      for (unsigned mask = 0; mask < (1u << r); ++mask) {
        std::vector<std::uint64_t> d;
        for (std::size_t i = 0; i < r; ++i) d.push_back((mask >> i) & 1 ? g : 1);
        forms.push_back(d);
      }
      for (const auto& a : forms) {
        for (const auto& b : forms) {
          std::vector<Elem> ea, eb;
          for (auto x : a) ea.push_back(f.from_int(static_cast<long long>(x)));
          for (auto x : b) eb.push_back(f.from_int(static_cast<long long>(x)));
          const bool same = value_distribution(a, p) == value_distribution(b, p);
          const Comparison c = is_equal(GWClass::diagonal(f, ea), GWClass::diagonal(f, eb));
          CHECK((c == Comparison::equal) == same);
        }
      }
    }
  }
}

TEST_CASE("equality over the rationals is partial") {
  const Field q = Field::rationals();
  CHECK(is_equal(diag(q, {1}), diag(q, {-1})) == Comparison::unequal);
  CHECK(is_equal(diag(q, {2, 3}), diag(q, {3, 8})) == Comparison::equal);
  CHECK(is_equal(diag(q, {1, 1}), diag(q, {2, 2})) == Comparison::unknown);
  CHECK(is_equal(diag(q, {5, -5, 7}), diag(q, {7, 1, -1})) == Comparison::equal);
  CHECK(witt_reduce(diag(q, {5, -5, 7})).hyperbolic_count() == 1);
}

TEST_CASE("from_gram") {
  const Field f = Field::prime(31);
  const auto z = from_gram(Matrix(f, 3, 3));
  CHECK(z.cls.rank() == 0);
  CHECK(z.radical_dim == 3);
  const auto d = from_gram(Matrix::from_ints(f, {{5}}));
  CHECK(d.cls.positive() == std::vector<Elem>{square_class(f.from_int(5))});
  CHECK_THROWS_AS(from_gram(Matrix::from_ints(f, {{1, 2}, {0, 1}})), InvalidArgument);
}

TEST_CASE("transfer") {
  const Field f9 = Field::extension(3, {1, 0, 1});
  const Field f3 = Field::prime(3);
  CHECK(transfer_gram(f9.one()) == Matrix::from_ints(f3, {{2, 0}, {0, -2}}));
  const GWClass t = transfer(GWClass::diagonal(f9, {f9.one()}));
  CHECK(t.field() == f3);
  CHECK(is_equal(t, GWClass::hyperbolic(f3, 1)) == Comparison::equal);
  CHECK(transfer(GWClass(f9)).rank() == 0);

  std::mt19937_64 rng(8);
  for (auto [p, m] : {std::pair<std::uint64_t, unsigned>{3, 2}, {3, 3}, {5, 2}, {7, 3}}) {
    const Field f = build_extension(p, m, rng());
    const std::uint64_t q = f.order().get_ui();
    for (int trial = 0; trial < 8; ++trial) {
      const Elem a = f.from_index(1 + rng() % (q - 1));
      const Elem b = f.from_index(1 + rng() % (q - 1));
      const GWClass ca = GWClass::diagonal(f, {a}), cb = GWClass::diagonal(f, {b});
      CHECK(transfer(ca).rank() == static_cast<long long>(m));
      const GWClass sum = transfer(ca + cb), parts = transfer(ca) + transfer(cb);
      CHECK(is_equal(sum, parts) == Comparison::equal);
      CHECK(transfer(ca - cb).rank() == 0);
      CHECK(transfer(GWClass::hyperbolic(f, 1)).rank() == 2 * static_cast<long long>(m));
      // The Gram matrix of the trace form, rebuilt from the definition.
      const Matrix g = transfer_gram(a);
      Elem tpow = f.one();
      const Elem tgen = f.from_coeffs({0, 1});
      for (unsigned k = 0; k < 2 * m - 1; ++k, tpow *= tgen) {
        for (unsigned i = 0; i < m; ++i) {
          if (k < i || k - i >= m) continue;
          Elem s = f.zero(), c = a * tpow;
          for (unsigned e = 0; e < m; ++e, c = c.pow(static_cast<long long>(p))) s += c;
          CHECK(g(i, k - i) == f.prime_subfield().from_index(s.index()));
        }
      }
    }
  }
}
