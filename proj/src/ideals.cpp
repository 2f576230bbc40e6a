#include "gwexcess/ideals.hpp"

#include <algorithm>

#include "gwexcess/errors.hpp"

namespace gwexcess {

GradedSubspace::GradedSubspace(Field field, std::size_t nvars, unsigned degree)
    : field_(field), nvars_(nvars), degree_(degree),
      basis_(field, graded_basis(nvars, degree).size(), 0) {}

GradedSubspace GradedSubspace::span(Field field, std::size_t nvars, unsigned degree,
                                    const Matrix& columns) {
  GradedSubspace s(field, nvars, degree);
  if (columns.rows() != s.ambient_dim()) throw InvalidArgument("span: wrong column length");
  if (columns.cols() > 0) s.basis_ = column_space_basis(columns);
  return s;
}

GradedSubspace GradedSubspace::whole(Field field, std::size_t nvars, unsigned degree) {
  GradedSubspace s(field, nvars, degree);
  s.basis_ = Matrix::identity(field, s.ambient_dim());
  return s;
}

std::vector<Poly> GradedSubspace::basis_polys() const {
  std::vector<Poly> out;
  for (std::size_t k = 0; k < dim(); ++k)
    out.push_back(from_coefficients(field_, nvars_, degree_, basis_.column(k)));
  return out;
}

bool GradedSubspace::contains(const Vector& v) const {
  if (v.size() != ambient_dim()) throw InvalidArgument("contains: wrong vector length");
  return solve(basis_, v).has_value();
}

bool GradedSubspace::contains(const Poly& f) const {
  return contains(coefficient_vector(f, degree_));
}

bool GradedSubspace::contains(const GradedSubspace& other) const {
  if (other.degree_ != degree_ || other.nvars_ != nvars_) return false;
  if (other.dim() == 0) return true;
  return rank(basis_.hstack(other.basis_)) == dim();
}

Matrix GradedSubspace::annihilator() const {
  return kernel_basis(basis_.transpose()).transpose();
}

bool operator==(const GradedSubspace& a, const GradedSubspace& b) {
  return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.degree_ == b.degree_ &&
         a.basis_ == b.basis_;
}

GradedIdeal::GradedIdeal(Field field, std::size_t nvars, std::vector<Poly> generators)
    : field_(std::move(field)), nvars_(nvars) {
  for (auto& g : generators) {
    if (g.field() != field_ || g.nvars() != nvars_) {
      throw InvalidArgument("ideal generator from a different ring");
    }
    if (g.is_zero()) continue;
    if (!g.homogeneous_degree()) throw InvalidArgument("ideal generator is not homogeneous");
    gens_.push_back(std::move(g));
  }
}

GradedIdeal GradedIdeal::power_of_maximal(Field field, std::size_t nvars, unsigned e) {
  std::vector<Poly> gens;
  for (const auto& m : graded_basis(nvars, e).monomials()) gens.push_back(Poly::term(field, m, field.one()));
  return GradedIdeal(field, nvars, std::move(gens));
}

unsigned GradedIdeal::max_generator_degree() const {
  unsigned d = 0;
  for (const auto& g : gens_) d = std::max(d, *g.homogeneous_degree());
  return d;
}

Matrix multiplication_matrix(const Poly& g, unsigned d) {
  const auto e = g.homogeneous_degree();
  if (!e) throw InvalidArgument("multiplication_matrix needs a nonzero form");
  const auto& src = graded_basis(g.nvars(), d);
  std::vector<Vector> cols;
  cols.reserve(src.size());
  for (const auto& m : src.monomials()) {
    cols.push_back(coefficient_vector(g * Poly::term(g.field(), m, g.field().one()), d + *e));
  }
  return Matrix::from_columns(g.field(), graded_basis(g.nvars(), d + *e).size(), cols);
}

GradedSubspace ideal_piece(const GradedIdeal& j, unsigned d) {
  std::vector<Vector> cols;
  for (const auto& g : j.generators()) {
    const unsigned e = *g.homogeneous_degree();
    if (e > d) continue;
    for (const auto& m : graded_basis(j.nvars(), d - e).monomials()) {
      cols.push_back(coefficient_vector(g * Poly::term(j.field(), m, j.field().one()), d));
    }
  }
  const std::size_t n = graded_basis(j.nvars(), d).size();
  return GradedSubspace::span(j.field(), j.nvars(), d, Matrix::from_columns(j.field(), n, cols));
}

std::size_t quotient_dim(const GradedIdeal& j, unsigned d) {
  return graded_basis(j.nvars(), d).size() - ideal_piece(j, d).dim();
}

namespace {

unsigned common_degree_of_three(const std::vector<Poly>& f) {
  if (f.size() != 3) throw InvalidArgument("expected three forms");
  std::optional<unsigned> k;
  for (const auto& g : f) {
    if (g.nvars() != 3) throw InvalidArgument("expected forms in three variables");
    const auto e = g.homogeneous_degree();
    if (!e) {
      if (g.is_zero()) return 0;
      throw InvalidArgument("expected homogeneous forms");
    }
    if (k && *k != *e) throw InvalidArgument("forms of different degrees");
    k = e;
  }
  return *k;
}

}  // namespace

bool artinian_test(const std::vector<Poly>& f) {
  const unsigned k = common_degree_of_three(f);
  for (const auto& g : f)
    if (g.is_zero()) return false;
  if (k == 0) return true;
  const GradedIdeal j(f.front().field(), 3, f);
  return quotient_dim(j, 3 * (k - 1) + 1) == 0;
}

PolyMatrix peeling_matrix(const std::vector<Poly>& f) {
  const unsigned k = common_degree_of_three(f);
  if (k == 0) throw InvalidArgument("peeling needs forms of positive degree");
  const Field& field = f.front().field();
  PolyMatrix a(field, 3, 3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (const auto& [m, c] : f[i].terms()) {
      std::size_t j = 2;
      while (m[j] == 0) --j;
      a(i, j).add_term(m / Monomial::variable(3, j), c);
    }
  }
  return a;
}

Poly socle_element(const std::vector<Poly>& f) {
  if (!artinian_test(f)) throw InadmissibleInput("forms do not cut out the empty set");
  const unsigned k = *f.front().homogeneous_degree();
  const Poly e = det(peeling_matrix(f));
  const GradedIdeal j(f.front().field(), 3, f);
  if (e.is_zero() || ideal_piece(j, 3 * (k - 1)).contains(e)) {
    throw InternalInconsistency("socle element lies in the ideal");
  }
  return e;
}

GradedSubspace ideal_quotient_piece(const GradedIdeal& j, const GradedIdeal& i, unsigned d) {
  if (j.field() != i.field() || j.nvars() != i.nvars()) {
    throw InvalidArgument("ideal quotient of ideals in different rings");
  }
  const std::size_t n = graded_basis(j.nvars(), d).size();
  Matrix stacked(j.field(), 0, n);
  for (const auto& g : i.generators()) {
    const unsigned e = *g.homogeneous_degree();
    const Matrix ann = ideal_piece(j, d + e).annihilator();
    if (ann.rows() == 0) continue;
    stacked = stacked.vstack(ann * multiplication_matrix(g, d));
  }
  return GradedSubspace::span(j.field(), j.nvars(), d, kernel_basis(stacked));
}

SaturationPiece saturation_piece(const GradedIdeal& j, unsigned d, std::optional<unsigned> stab_bound) {
  const unsigned bound = stab_bound.value_or(1 + j.max_generator_degree() + d);
  GradedSubspace prev =
      ideal_quotient_piece(j, GradedIdeal::power_of_maximal(j.field(), j.nvars(), 1), d);
  for (unsigned e = 1; e <= bound; ++e) {
    GradedSubspace next =
        ideal_quotient_piece(j, GradedIdeal::power_of_maximal(j.field(), j.nvars(), e + 1), d);
    if (next == prev) return SaturationPiece{std::move(prev), e};
    prev = std::move(next);
  }
  throw BudgetExhausted("saturation did not stabilize within " + std::to_string(bound) +
                        " steps in degree " + std::to_string(d));
}

}  // namespace gwexcess
