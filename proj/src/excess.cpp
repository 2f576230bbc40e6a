#include "gwexcess/excess.hpp"

#include <algorithm>
#include <numeric>

#include "gwexcess/errors.hpp"

namespace gwexcess {

namespace {

Poly linear_form(const Field& f, const Elem& c0, const Elem& c1, const Elem& c2) {
  Poly p(f, 3);
  p.add_term(Monomial::variable(3, 0), c0);
  p.add_term(Monomial::variable(3, 1), c1);
  p.add_term(Monomial::variable(3, 2), c2);
  return p;
}

// 3-variable form lifted into k[x_0..x_{nvars-1}].
Poly lift(const Poly& g, std::size_t nvars) {
  std::vector<Poly> vars;
  for (std::size_t i = 0; i < 3; ++i) vars.push_back(Poly::variable(g.field(), nvars, i));
  return g.substitute(vars);
}

unsigned socle_degree(unsigned n) { return 3 * (n - 3); }

}  // namespace

void validate(const ExcessInput& in) {
  if (in.field.characteristic() == 2) throw InvalidArgument("characteristic 2 is not supported");
  if (in.n < 3 || in.n % 2 == 0) throw InvalidArgument("n must be odd and at least 3");
  if (in.M.field() != in.field) throw FieldMismatch("M is over a different field");
  if (in.M.rows() != in.n || in.M.cols() != in.n - 2 || in.M.nvars() != 3) {
    throw InvalidArgument("M must be n x (n-2) with entries in three variables");
  }
  for (std::size_t i = 0; i < in.M.rows(); ++i)
    for (std::size_t v = 0; v < in.M.cols(); ++v) {
      const Poly& e = in.M(i, v);
      if (!e.is_zero() && e.homogeneous_degree() != 1u) {
        throw InvalidArgument("entry of M is not a linear form");
      }
    }
}

ExcessInput make_input(Field field, unsigned n,
                       const std::vector<std::vector<std::vector<long long>>>& entries) {
  if (n < 2 || entries.size() != n) throw InvalidArgument("M must have n rows");
  PolyMatrix M(field, 3, n, n - 2);
  for (std::size_t i = 0; i < n; ++i) {
    if (entries[i].size() != n - 2) throw InvalidArgument("M must have n-2 columns");
    for (std::size_t v = 0; v < n - 2; ++v) {
      const auto& c = entries[i][v];
      if (c.size() != 3) throw InvalidArgument("linear forms need three coefficients");
      M(i, v) = linear_form(field, field.from_int(c[0]), field.from_int(c[1]), field.from_int(c[2]));
    }
  }
  ExcessInput in{field, n, M};
  validate(in);
  return in;
}

PolyMatrix quadrics_to_M(const std::vector<Poly>& q) {
  const std::size_t n = q.size();
  if (n < 3) throw InvalidArgument("need at least three quadrics");
  const Field& field = q.front().field();
  PolyMatrix M(field, 3, n, n - 2);
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i].nvars() != n + 1 || q[i].field() != field) {
      throw InvalidArgument("quadrics must live in n+1 variables over one field");
    }
    if (!q[i].is_zero() && q[i].homogeneous_degree() != 2u) {
      throw InvalidArgument("quadric " + std::to_string(i + 1) + " is not homogeneous of degree 2");
    }
    for (const auto& [mono, c] : q[i].terms()) {
      std::vector<std::size_t> plane, rest;
      for (std::size_t k = 0; k <= n; ++k)
        for (unsigned e = 0; e < mono[k]; ++e) (k < 3 ? plane : rest).push_back(k);
      if (rest.empty()) {
        throw InadmissibleInput("quadric " + std::to_string(i + 1) + " does not vanish on the plane");
      }
      if (plane.size() == 1) M(i, rest[0] - 3).add_term(Monomial::variable(3, plane[0]), c);
    }
  }
  return M;
}

std::vector<Poly> quadrics_from_M(const PolyMatrix& M) {
  const std::size_t n = M.rows();
  std::vector<Poly> q;
  for (std::size_t i = 0; i < n; ++i) {
    Poly qi(M.field(), n + 1);
    for (std::size_t v = 0; v < M.cols(); ++v) qi += lift(M(i, v), n + 1) * Poly::variable(M.field(), n + 1, v + 3);
    q.push_back(qi);
  }
  return q;
}

PrincipalMinors principal_minors(const ExcessInput& in) {
  const std::size_t k = in.n - 2;
  std::vector<std::size_t> cols(k);
  std::iota(cols.begin(), cols.end(), 0);
  auto rows_from = [&](std::size_t start) {
    std::vector<std::size_t> r(k);
    std::iota(r.begin(), r.end(), start);
    return r;
  };
  PrincipalMinors pm{in.M.select(rows_from(0), cols), in.M.select(rows_from(1), cols),
                     in.M.select(rows_from(2), cols), {}};
  pm.f = {det(pm.N0), det(pm.N1), det(pm.N2)};
  return pm;
}

CoverCheck cover_check(const std::vector<Poly>& f) {
  CoverCheck c{true, {}, ""};
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i].is_zero()) c.vanished.push_back(i);
  if (!c.vanished.empty()) {
    c.ok = false;
    c.diagnosis = "vanishing principal minor(s):";
    for (auto i : c.vanished) c.diagnosis += " f" + std::to_string(i);
    return c;
  }
  if (!artinian_test(f)) {
    c.ok = false;
    c.diagnosis = "f0, f1, f2 have a common zero in P^2";
  }
  return c;
}

Vector trace_functional(const std::vector<Poly>& f, const Poly& e) {
  const auto k = e.homogeneous_degree();
  if (!k) throw InvalidArgument("socle element must be a nonzero form");
  const Field& field = e.field();
  const GradedSubspace piece = ideal_piece(GradedIdeal(field, 3, f), *k);
  const std::size_t dim = piece.ambient_dim();
  if (piece.dim() + 1 != dim) {
    throw InadmissibleInput("quotient in the socle degree has dimension " +
                            std::to_string(dim - piece.dim()));
  }
  Matrix a = piece.basis().transpose();
  Matrix erow(field, 1, dim);
  const Vector ev = coefficient_vector(e, *k);
  for (std::size_t j = 0; j < dim; ++j) erow(0, j) = ev[j];
  a = a.vstack(erow);
  Vector rhs(dim, field.zero());
  rhs.back() = field.one();
  auto lambda = solve(a, rhs);
  if (!lambda) throw InternalInconsistency("socle element lies in the ideal");
  return *lambda;
}

Elem apply_functional(const Vector& lambda, const Poly& g, unsigned degree) {
  const Vector v = coefficient_vector(g, degree);
  if (v.size() != lambda.size()) throw InvalidArgument("functional on a different graded piece");
  Elem s = g.field().zero();
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) s += lambda[k] * v[k];
  return s;
}

Poly excess_minor(const PolyMatrix& M, std::size_t i, std::size_t j, std::size_t k, std::size_t v) {
  return minor(M, {i, j, k}, {v});
}

std::vector<DomainIndex> bprime_domain(const ExcessInput& in) {
  std::vector<DomainIndex> d;
  for (std::size_t v = 0; v < in.n - 2; ++v)
    for (const auto& a : graded_basis(3, in.m() - 1).monomials()) d.push_back({v, a});
  return d;
}

Matrix bprime(const ExcessInput& in, const Vector& lambda) {
  validate(in);
  const std::size_t n = in.n;
  const Field& f = in.field;
  std::vector<Poly> left, right;
  for (std::size_t v = 0; v < n - 2; ++v) {
    left.push_back(excess_minor(in.M, 0, n - 2, n - 1, v));
    right.push_back(excess_minor(in.M, 0, 1, n - 1, v));
  }
  const auto dom = bprime_domain(in);
  Matrix b(f, dom.size(), dom.size());
  for (std::size_t a = 0; a < dom.size(); ++a) {
    for (std::size_t c = 0; c < dom.size(); ++c) {
      const auto& [v, alpha] = dom[a];
      const auto& [l, beta] = dom[c];
      Poly g = Poly::term(f, alpha * beta, (v + l) % 2 ? -f.one() : f.one()) * left[v] * right[l];
      if (!g.is_zero() && g.homogeneous_degree() != socle_degree(n)) {
        throw InternalInconsistency("pairing numerator has the wrong degree");
      }
      b(a, c) = apply_functional(lambda, g, socle_degree(n));
    }
  }
  return b;
}

Matrix bprime_n5(const ExcessInput& in, const Vector& lambda) {
  validate(in);
  if (in.n != 5) throw InvalidArgument("bprime_n5 needs n = 5");
  const Field& f = in.field;
  auto sign = [&](std::size_t i) { return i % 2 ? -f.one() : f.one(); };
  std::vector<Poly> F, G;
  for (std::size_t i = 3; i <= 5; ++i) {
    // Rows {1,4,5} and {1,2,5}; column i is the one multiplying x_i.
    F.push_back(sign(i) * det(in.M.remove({0, 3, 4}, {i - 3})));
    G.push_back(sign(i) * det(in.M.remove({0, 1, 4}, {i - 3})));
  }
  const auto& lin = graded_basis(3, 1).monomials();
  Matrix b(f, 9, 9);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t c = 0; c < 3; ++c) {
          const Poly g = Poly::term(f, lin[a] * lin[c], f.one()) * F[i] * G[j];
          b(3 * i + a, 3 * j + c) = apply_functional(lambda, g, 6);
        }
  return b;
}

Matrix transpose_image(const ExcessInput& in) {
  const auto dom = bprime_domain(in);
  std::vector<Vector> cols;
  if (in.m() >= 2) {
    const auto& target = graded_basis(3, in.m() - 1);
    for (std::size_t i = 0; i < in.n; ++i) {
      for (const auto& g : graded_basis(3, in.m() - 2).monomials()) {
        Vector col(dom.size(), in.field.zero());
        for (std::size_t v = 0; v < in.n - 2; ++v) {
          const Poly prod = in.M(i, v) * Poly::term(in.field, g, in.field.one());
          const Vector c = coefficient_vector(prod, in.m() - 1);
          for (std::size_t k = 0; k < target.size(); ++k) col[v * target.size() + k] = c[k];
        }
        cols.push_back(std::move(col));
      }
    }
  }
  return Matrix::from_columns(in.field, dom.size(), cols);
}

QuotientForm quotient_form(const Matrix& bp, const Matrix& image,
                           const std::optional<std::vector<std::size_t>>& order) {
  const std::size_t n = bp.rows();
  if (!bp.is_symmetric()) throw InternalInconsistency("B' is not symmetric");
  if (image.rows() != n) throw InvalidArgument("image vectors have the wrong length");
  if (!(bp * image).is_zero() || !(image.transpose() * bp).is_zero()) {
    throw InternalInconsistency("B' does not vanish on the image of M^T");
  }
  std::vector<std::size_t> ord(n);
  std::iota(ord.begin(), ord.end(), 0);
  if (order) {
    std::vector<std::size_t> sorted = *order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != ord) throw InvalidArgument("domain order is not a permutation");
    ord = *order;
  }
  std::vector<bool> pivot(n, false);
  if (image.cols() > 0) {
    const RrefResult rr = rref(image.transpose().select_cols(ord));
    for (std::size_t p : rr.pivots) pivot[p] = true;
  }
  QuotientForm q{Matrix(bp.field(), 0, 0), {}};
  for (std::size_t k = 0; k < n; ++k)
    if (!pivot[k]) q.basis.push_back(ord[k]);
  q.B = bp.select_rows(q.basis).select_cols(q.basis);
  return q;
}

long long expected_euler_rank(unsigned n) {
  return static_cast<long long>(binomial(n, 2) + n + 1);
}

long long expected_b_rank(unsigned n) {
  const unsigned m = (n - 1) / 2;
  return static_cast<long long>((n - 2) * binomial(m + 1, 2)) - static_cast<long long>(n * binomial(m, 2));
}

GWClass a1_euler_number(const GWClass& b, unsigned n) {
  const long long diff = expected_euler_rank(n) - b.rank();
  if (diff < 0 || diff % 2 != 0) {
    throw InternalInconsistency("rank of B has the wrong parity or size: " + std::to_string(b.rank()));
  }
  return b + GWClass::hyperbolic(b.field(), diff / 2);
}

GWClass theorem_rhs(const GWClass& euler, unsigned n) {
  return GWClass::hyperbolic(euler.field(), 1LL << (n - 1)) - euler;
}

ExcessReport run_excess(const ExcessInput& in, const ExcessOptions& opt) {
  validate(in);
  const PrincipalMinors pm = principal_minors(in);
  const CoverCheck cover = cover_check(pm.f);
  if (!cover.ok) throw InadmissibleInput(cover.diagnosis);

  const unsigned top = socle_degree(in.n);
  const GradedIdeal ideal(in.field, 3, pm.f);
  std::vector<std::size_t> dims;
  std::size_t total = 0;
  for (unsigned d = 0; d <= top + 1; ++d) {
    dims.push_back(quotient_dim(ideal, d));
    total += dims.back();
  }
  const Poly e = socle_element(pm.f);
  const Poly jac = jacobian_determinant(pm.f);
  const bool jac_ok =
      ideal_piece(ideal, top).contains(jac - in.field.from_int(static_cast<long long>(total)) * e);

  const Vector lambda = trace_functional(pm.f, e);
  const Matrix bp = bprime(in, lambda);
  if (!bp.is_symmetric()) throw InternalInconsistency("B' is not symmetric");
  const Matrix image = transpose_image(in);
  const QuotientForm qf = quotient_form(bp, image, opt.domain_order);
  const GramClass gb = from_gram(qf.B);
  if (gb.radical_dim != 0) throw InternalInconsistency("B is degenerate");
  const GramClass gbp = from_gram(bp);
  const GWClass euler = a1_euler_number(gb.cls, in.n);

  return ExcessReport{in,
                      pm.f,
                      cover,
                      dims,
                      e,
                      jac_ok,
                      lambda,
                      bp,
                      qf.B,
                      qf.basis,
                      rank(image),
                      gb.cls,
                      gbp.radical_dim,
                      euler,
                      expected_euler_rank(in.n),
                      theorem_rhs(euler, in.n)};
}

std::uint64_t random_index(std::uint64_t q, std::mt19937_64& rng) {
  const std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % q);
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= bound);
  return r % q;
}

Elem random_element(const Field& f, std::mt19937_64& rng) {
  if (!f.is_finite()) throw InvalidArgument("random elements need a finite field");
  const mpz_class order = f.order();
  if (!order.fits_ulong_p()) throw InvalidArgument("field too large for random sampling");
  return f.from_index(random_index(order.get_ui(), rng));
}

namespace {

std::uint64_t field_size(const Field& f) {
  if (!f.is_finite()) throw InvalidArgument("random draws need a finite field");
  const mpz_class order = f.order();
  if (!order.fits_ulong_p()) throw InvalidArgument("field too large for random sampling");
  return order.get_ui();
}

PolyMatrix M_from_indices(const Field& f, unsigned n, const std::vector<std::uint64_t>& idx) {
  PolyMatrix M(f, 3, n, n - 2);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t v = 0; v < n - 2; ++v, k += 3) {
      M(i, v) = linear_form(f, f.from_index(idx[k]), f.from_index(idx[k + 1]), f.from_index(idx[k + 2]));
    }
  return M;
}

bool admissible(const ExcessInput& in) { return cover_check(principal_minors(in).f).ok; }

}  // namespace

QuadricDraw draw_quadric_indices(std::uint64_t q, unsigned n, std::mt19937_64& rng) {
  QuadricDraw d{n, {}, {}};
  d.linear.resize(static_cast<std::size_t>(n) * (n - 2) * 3);
  for (auto& c : d.linear) c = random_index(q, rng);
  d.quadratic.resize(static_cast<std::size_t>(n) * (n - 2) * (n - 1) / 2);
  for (auto& c : d.quadratic) c = random_index(q, rng);
  return d;
}

std::vector<Poly> quadrics_from_draw(const Field& f, const QuadricDraw& d) {
  const unsigned n = d.n;
  std::vector<Poly> q = quadrics_from_M(M_from_indices(f, n, d.linear));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 3; j <= n; ++j)
      for (std::size_t l = j; l <= n; ++l) {
        std::vector<unsigned> e(n + 1, 0);
        ++e[j];
        ++e[l];
        q[i].add_term(Monomial(e), f.from_index(d.quadratic[k++]));
      }
  return q;
}

RandomInput random_admissible_input(const Field& f, unsigned n, std::uint64_t seed,
                                    std::size_t max_attempts) {
  if (n < 3 || n % 2 == 0) throw InvalidArgument("n must be odd and at least 3");
  const std::uint64_t q = field_size(f);
  std::mt19937_64 rng(seed);
  for (std::size_t a = 1; a <= max_attempts; ++a) {
    std::vector<std::uint64_t> idx(static_cast<std::size_t>(n) * (n - 2) * 3);
    for (auto& c : idx) c = random_index(q, rng);
    ExcessInput in{f, n, M_from_indices(f, n, idx)};
    if (admissible(in)) return RandomInput{std::move(in), a};
  }
  throw BudgetExhausted("no admissible M in " + std::to_string(max_attempts) + " attempts");
}

std::vector<Poly> draw_quadrics(const Field& f, unsigned n, std::mt19937_64& rng) {
  return quadrics_from_draw(f, draw_quadric_indices(field_size(f), n, rng));
}

RandomQuadrics random_admissible_quadrics(const Field& f, unsigned n, std::uint64_t seed,
                                          std::size_t max_attempts) {
  if (n < 3 || n % 2 == 0) throw InvalidArgument("n must be odd and at least 3");
  std::mt19937_64 rng(seed);
  for (std::size_t a = 1; a <= max_attempts; ++a) {
    std::vector<Poly> q = draw_quadrics(f, n, rng);
    if (admissible(ExcessInput{f, n, quadrics_to_M(q)})) return RandomQuadrics{std::move(q), a};
  }
  throw BudgetExhausted("no admissible quadrics in " + std::to_string(max_attempts) + " attempts");
}

}  // namespace gwexcess
