#include <doctest.h>

#include <random>

#include "gwexcess/errors.hpp"
#include "gwexcess/residual.hpp"

using namespace gwexcess;

namespace {

struct XY {
  Field f = Field::prime(31);
  Poly x = Poly::variable(f, 2, 0), y = Poly::variable(f, 2, 1);
  GradedIdeal ideal(std::vector<Poly> g) const { return GradedIdeal(f, 2, std::move(g)); }
};

std::vector<GradedSubspace> pieces(const GradedIdeal& i, unsigned D) {
  std::vector<GradedSubspace> out;
  for (unsigned d = 0; d <= D; ++d) out.push_back(ideal_piece(i, d));
  return out;
}

}  // namespace

TEST_CASE("split of (xy, x^3)") {
  const XY r;
  const GradedIdeal j = r.ideal({r.x * r.y, r.x.pow(3)});
  const SplitIdeal s = split_ideal(j, 10);
  const GradedIdeal i_ref = r.ideal({r.x}), k_ref = r.ideal({r.y, r.x.pow(2)});
  for (unsigned d = 0; d <= 10; ++d) {
    CAPTURE(d);
    CHECK(s.I[d] == ideal_piece(i_ref, d));
    CHECK(s.K[d] == ideal_piece(k_ref, d));
    CHECK(s.I[d].contains(ideal_piece(j, d)));
    CHECK(s.K[d].contains(ideal_piece(j, d)));
    // K * I lands in J.
    for (unsigned e = 0; e <= d; ++e)
      for (const auto& kp : s.K[e].basis_polys())
        for (const auto& ip : s.I[d - e].basis_polys()) CHECK(ideal_piece(j, d).contains(kp * ip));
  }
  REQUIRE(s.I_generators.size() == 1);
  CHECK(s.I_generators[0] == r.x);
}

TEST_CASE("split of a saturated ideal") {
  const XY r;
  for (const GradedIdeal& j : {r.ideal({r.x}), r.ideal({r.x * r.y}), r.ideal({r.x * r.x - r.y * r.y})}) {
    const SplitIdeal s = split_ideal(j, 6);
    for (unsigned d = 0; d <= 6; ++d) {
      CHECK(s.I[d] == ideal_piece(j, d));
      CHECK(s.K[d] == GradedSubspace::whole(r.f, 2, d));
    }
  }
}

TEST_CASE("saturation of an Artinian ideal") {
  const Field f = Field::prime(7);
  std::vector<Poly> g;
  for (std::size_t k = 0; k < 3; ++k) g.push_back(Poly::variable(f, 3, k).pow(3));
  const GradedIdeal j(f, 3, g);
  const SplitIdeal s = split_ideal(j, 7);
  for (unsigned d = 5; d <= 7; ++d) CHECK(s.I[d] == GradedSubspace::whole(f, 3, d));
}

TEST_CASE("conormal freeness") {
  const XY r;
  const std::vector<Poly> a{r.x * r.y, r.x.pow(3)};
  const GradedIdeal j = r.ideal(a);
  const SplitIdeal s = split_ideal(j, 10);
  const FreenessReport ok = conormal_freeness_check(j, s.K, a, 10);
  CHECK(ok.free);
  CHECK(ok.failing_degrees.empty());

  // Regular sequence with K = J.
  const std::vector<Poly> b{r.x.pow(2), r.y.pow(3)};
  const GradedIdeal jb = r.ideal(b);
  CHECK(conormal_freeness_check(jb, pieces(jb, 12), b, 12).free);

  // K = (y) is too small: x^2 * (xy) - y * (x^3) = 0 with x^2 not in K.
  const FreenessReport bad = conormal_freeness_check(j, pieces(r.ideal({r.y}), 10), a, 10);
  CHECK_FALSE(bad.free);
  CHECK(std::find(bad.failing_degrees.begin(), bad.failing_degrees.end(), 4u) != bad.failing_degrees.end());

  CHECK_THROWS_AS(conormal_freeness_check(j, s.K, {r.x * r.y}, 10), InvalidArgument);
}

TEST_CASE("modified Koszul homology") {
  const XY r;
  const std::vector<Poly> a{r.x * r.y, r.x.pow(3)};
  const GradedIdeal i = r.ideal({r.x});
  const HomologyTable h = kos_prime_homology(a, i, 1, 10);
  const GradedIdeal i2 = r.ideal({r.x.pow(2)}), ji = r.ideal({r.x.pow(2) * r.y, r.x.pow(4)});
  for (unsigned d = 0; d <= 10; ++d) {
    CAPTURE(d);
    CHECK(h.homology[d][1] == 0);
    CHECK(h.homology[d][2] == 0);
    CHECK(h.homology[d][0] == ideal_piece(i2, d).dim() - ideal_piece(ji, d).dim());
  }

  // t = -1 is the ordinary Koszul complex; a regular sequence is exact.
  const Field f = Field::prime(5);
  std::vector<Poly> reg;
  for (std::size_t k = 0; k < 3; ++k) reg.push_back(Poly::variable(f, 3, k).pow(2));
  const GradedIdeal jr(f, 3, reg);
  const HomologyTable hk = kos_prime_homology(reg, GradedIdeal(f, 3, {Poly::variable(f, 3, 0)}), -1, 8);
  for (unsigned d = 0; d <= 8; ++d) {
    for (std::size_t n = 1; n <= 3; ++n) CHECK(hk.homology[d][n] == 0);
    CHECK(hk.homology[d][0] == quotient_dim(jr, d));
    CHECK(hk.term_dims[d][0] == binomial(d + 2, 2));
  }

  // One generator: H_0 = I^{t+1} / x I^t.
  const GradedIdeal m = r.ideal({r.x, r.y});
  const HomologyTable h1 = kos_prime_homology({r.x}, m, 2, 8);
  const GradedIdeal m3 = ideal_power(m, 3), xm2 = r.ideal({r.x.pow(3), r.x.pow(2) * r.y, r.x * r.y.pow(2)});
  for (unsigned d = 0; d <= 8; ++d) CHECK(h1.homology[d][0] == ideal_piece(m3, d).dim() - ideal_piece(xm2, d).dim());
}

TEST_CASE("Koszul differentials square to zero") {
  const Field f = Field::prime(11);
  std::mt19937_64 rng(3);
  std::vector<Poly> a;
  for (int k = 0; k < 3; ++k) {
    Poly p(f, 3);
    for (const auto& mono : graded_basis(3, 2).monomials()) p.add_term(mono, f.from_int(static_cast<long long>(rng() % 11)));
    a.push_back(p);
  }
  const GradedComplex c = kos_prime(a, GradedIdeal(f, 3, a), 1, 6);
  for (std::size_t d = 0; d < c.diff.size(); ++d)
    for (std::size_t n = 2; n < c.diff[d].size(); ++n)
      if (c.dims[d][n] && c.dims[d][n - 2]) CHECK((c.diff[d][n - 1] * c.diff[d][n]).is_zero());
}

TEST_CASE("multiplication form of (xy, x^3)") {
  const XY r;
  const GradedIdeal j = r.ideal({r.x * r.y, r.x.pow(3)});
  const ModuleForm mf = mult_form(j, r.ideal({r.x}), 10);
  REQUIRE(mf.quotient_basis == std::vector<Poly>{r.x, r.x.pow(2)});
  REQUIRE(mf.target_basis == std::vector<Poly>{r.x.pow(2), r.x.pow(3)});
  const Elem one = r.f.one(), zero = r.f.zero();
  CHECK(mf.gram[0][0] == Vector{one, zero});
  CHECK(mf.gram[0][1] == Vector{zero, one});
  CHECK(mf.gram[1][0] == Vector{zero, one});
  CHECK(mf.gram[1][1] == Vector{zero, zero});

  std::mt19937_64 rng(20);
  for (int t = 0; t < 20; ++t) {
    const Elem l2 = r.f.from_int(static_cast<long long>(rng() % 31));
    const Elem l3 = r.f.from_int(static_cast<long long>(1 + rng() % 30));
    const ScalarForm sf = scalarize(mf, {l2, l3});
    CHECK(sf.nondegenerate);
    CHECK(sf.gram(1, 1).is_zero());
    CHECK(is_equal(sf.cls, GWClass::hyperbolic(r.f, 1)) == Comparison::equal);
  }
  const ScalarForm z = scalarize(mf, {zero, zero});
  CHECK(z.radical_dim == 2);
  const ScalarForm deg = scalarize(mf, {r.f.from_int(4), zero});
  CHECK_FALSE(deg.nondegenerate);
  CHECK(deg.radical_dim == 1);
  CHECK(deg.cls.rank() == 1);
}

TEST_CASE("multiplication form with I = R") {
  const XY r;
  const GradedIdeal j = r.ideal({r.x.pow(2), r.y.pow(2)});
  const ModuleForm mf = mult_form(j, r.ideal({Poly::constant(r.f, 2, r.f.one())}), 6);
  CHECK(mf.quotient_basis == mf.target_basis);
  REQUIRE(mf.quotient_basis.size() == 4);
  for (std::size_t u = 0; u < 4; ++u)
    for (std::size_t v = 0; v < 4; ++v) {
      CHECK(mf.gram[u][v] == mf.gram[v][u]);
      // Coordinates recombine to the product modulo J.
      Poly s(r.f, 2);
      for (std::size_t k = 0; k < 4; ++k) s += mf.gram[u][v][k] * mf.target_basis[k];
      const Poly diff = mf.quotient_basis[u] * mf.quotient_basis[v] - s;
      if (!diff.is_zero()) CHECK(ideal_piece(j, *diff.homogeneous_degree()).contains(diff));
    }
  CHECK_THROWS_AS(mult_form(r.ideal({r.x * r.y}), r.ideal({r.x}), 6), BudgetExhausted);
}
