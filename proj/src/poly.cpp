#include "gwexcess/poly.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

#include "gwexcess/errors.hpp"

namespace gwexcess {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<unsigned> exps)
    : exps_(std::move(exps)), degree_(std::accumulate(exps_.begin(), exps_.end(), 0u)) {}

Monomial Monomial::variable(std::size_t nvars, std::size_t i) {
  std::vector<unsigned> e(nvars, 0);
  e.at(i) = 1;
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  std::vector<unsigned> e(a.exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.exps_[i];
  return Monomial(std::move(e));
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  if (!b.divides(a)) throw InvalidArgument("monomial division is not exact");
  std::vector<unsigned> e(a.exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= b.exps_[i];
  return Monomial(std::move(e));
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  return a.exponents() > b.exponents();
}

// ---------------------------------------------------------------- Poly

Poly::Poly(Field field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {}

Poly Poly::constant(Field field, std::size_t nvars, const Elem& c) {
  Poly p(field, nvars);
  p.add_term(Monomial::one(nvars), c);
  return p;
}

Poly Poly::variable(Field field, std::size_t nvars, std::size_t i) {
  Poly p(field, nvars);
  p.add_term(Monomial::variable(nvars, i), field.one());
  return p;
}

Poly Poly::term(Field field, const Monomial& m, const Elem& c) {
  Poly p(field, m.nvars());
  p.add_term(m, c);
  return p;
}

Poly Poly::linear(Field field, const std::vector<long long>& coeffs) {
  Poly p(field, coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    p.add_term(Monomial::variable(coeffs.size(), i), field.from_int(coeffs[i]));
  }
  return p;
}

std::optional<unsigned> Poly::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  const unsigned d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_)
    if (m.degree() != d) return std::nullopt;
  return d;
}

unsigned Poly::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

Elem Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? field_.zero() : it->second;
}

void Poly::add_term(const Monomial& m, const Elem& c) {
  if (m.nvars() != nvars_) throw InvalidArgument("monomial has the wrong variable count");
  if (c.field() != field_) throw FieldMismatch("coefficient over " + c.field().name());
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::check_compatible(const Poly& b) const {
  if (field_ != b.field_) throw FieldMismatch("polynomials over different fields");
  if (nvars_ != b.nvars_) throw InvalidArgument("polynomials in different rings");
}

Poly& Poly::operator+=(const Poly& b) {
  check_compatible(b);
  for (const auto& [m, c] : b.terms_) add_term(m, c);
  return *this;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r = a;
  r += b;
  return r;
}

Poly Poly::operator-() const {
  Poly r(field_, nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  Poly r(a.field_, a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly operator*(const Elem& c, const Poly& a) {
  Poly r(a.field_, a.nvars_);
  if (c.is_zero()) return r;
  for (const auto& [m, v] : a.terms_) r.terms_.emplace(m, c * v);
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly r = constant(field_, nvars_, field_.one());
  for (unsigned k = 0; k < e; ++k) r = r * *this;
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

Poly Poly::partial_derivative(std::size_t i) const {
  if (i >= nvars_) throw InvalidArgument("variable index out of range");
  Poly r(field_, nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    std::vector<unsigned> e = m.exponents();
    const long long k = e[i];
    e[i] -= 1;
    r.add_term(Monomial(std::move(e)), field_.from_int(k) * c);
  }
  return r;
}

Poly Poly::substitute(const std::vector<Poly>& values) const {
  if (values.size() != nvars_) throw InvalidArgument("substitute: one value per variable");
  if (values.empty()) return *this;
  const std::size_t target_vars = values.front().nvars();
  for (const auto& v : values) {
    if (v.nvars() != target_vars || v.field() != field_) {
      throw InvalidArgument("substitute: inconsistent values");
    }
  }
  // powers[i][k] = values[i]^k, filled lazily.
  std::vector<std::vector<Poly>> powers(nvars_);
  auto power = [&](std::size_t i, unsigned k) -> const Poly& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(constant(field_, target_vars, field_.one()));
    while (pw.size() <= k) pw.push_back(pw.back() * values[i]);
    return pw[k];
  };
  Poly r(field_, target_vars);
  for (const auto& [m, c] : terms_) {
    Poly t = constant(field_, target_vars, c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i] > 0) t = t * power(i, m[i]);
    r += t;
  }
  return r;
}

Elem Poly::evaluate(const Vector& point) const {
  if (point.size() != nvars_) throw InvalidArgument("evaluate: point has the wrong length");
  const Field target = point.empty() ? field_ : point.front().field();
  Elem sum = target.zero();
  for (const auto& [m, c] : terms_) {
    Elem t = target.embed(c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i] > 0) t *= point[i].pow(static_cast<long long>(m[i]));
    sum += t;
  }
  return sum;
}

Poly Poly::change_field(const Field& target) const {
  Poly r(target, nvars_);
  for (const auto& [m, c] : terms_) r.add_term(m, target.embed(c));
  return r;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  auto name = [&](std::size_t i) {
    return i < names.size() ? names[i] : "x" + std::to_string(i);
  };
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string coef = c.field().kind() == FieldKind::prime_finite
                           ? std::to_string(c.signed_residue())
                           : c.to_string();
    bool negative = !coef.empty() && coef[0] == '-';
    if (negative) coef = coef.substr(1);
    if (c.field().kind() == FieldKind::extension_finite && coef.find('+') != std::string::npos) {
      coef = "(" + coef + ")";
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit = coef == "1";
    if (!unit || m.degree() == 0) os << coef;
    bool need_star = !unit;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m[i] == 0) continue;
      if (need_star) os << "*";
      os << name(i);
      if (m[i] > 1) os << "^" << m[i];
      need_star = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(Field field, std::size_t nvars, std::size_t rows, std::size_t cols)
    : field_(field), nvars_(nvars), rows_(rows), cols_(cols) {
  data_.assign(rows * cols, Poly(field, nvars));
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(field_, nvars_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

PolyMatrix PolyMatrix::select(const std::vector<std::size_t>& rows,
                              const std::vector<std::size_t>& cols) const {
  PolyMatrix s(field_, nvars_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows.at(i), cols.at(j));
  return s;
}

PolyMatrix PolyMatrix::remove(const std::vector<std::size_t>& rows,
                              const std::vector<std::size_t>& cols) const {
  std::vector<std::size_t> keep_r, keep_c;
  for (std::size_t i = 0; i < rows_; ++i)
    if (std::find(rows.begin(), rows.end(), i) == rows.end()) keep_r.push_back(i);
  for (std::size_t j = 0; j < cols_; ++j)
    if (std::find(cols.begin(), cols.end(), j) == cols.end()) keep_c.push_back(j);
  return select(keep_r, keep_c);
}

PolyMatrix PolyMatrix::substitute(const std::vector<Poly>& values) const {
  const std::size_t target_vars = values.empty() ? nvars_ : values.front().nvars();
  PolyMatrix s(field_, target_vars, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) s.data_[k] = data_[k].substitute(values);
  return s;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.rows_ == b.rows_ &&
         a.cols_ == b.cols_ && a.data_ == b.data_;
}

namespace {

Poly det_rec(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Poly::constant(m.field(), m.nvars(), m.field().one());
  if (n == 1) return m(0, 0);
  std::size_t best = 0, best_terms = ~std::size_t{0};
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t t = 0;
    for (std::size_t j = 0; j < n; ++j) t += m(i, j).term_count();
    if (t < best_terms) {
      best = i;
      best_terms = t;
    }
  }
  Poly sum(m.field(), m.nvars());
  for (std::size_t j = 0; j < n; ++j) {
    if (m(best, j).is_zero()) continue;
    Poly cof = m(best, j) * det_rec(m.remove({best}, {j}));
    if ((best + j) % 2 == 1) cof = -cof;
    sum += cof;
  }
  return sum;
}

}  // namespace

Poly det(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("det of a non-square polynomial matrix");
  return det_rec(m);
}

Poly minor(const PolyMatrix& m, const std::vector<std::size_t>& rows,
           const std::vector<std::size_t>& cols) {
  return det(m.remove(rows, cols));
}

Poly jacobian_determinant(const std::vector<Poly>& f) {
  if (f.empty()) throw InvalidArgument("jacobian of an empty system");
  const std::size_t n = f.size();
  if (f.front().nvars() != n) throw InvalidArgument("jacobian needs n polynomials in n variables");
  PolyMatrix j(f.front().field(), n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) j(i, k) = f[i].partial_derivative(k);
  return det(j);
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---------------------------------------------------------------- GradedBasis

namespace {

void fill_monomials(std::size_t nvars, unsigned degree, std::size_t pos,
                    std::vector<unsigned>& cur, std::vector<Monomial>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = degree;
    out.emplace_back(cur);
    return;
  }
  for (unsigned e = degree + 1; e-- > 0;) {
    cur[pos] = e;
    fill_monomials(nvars, degree - e, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

GradedBasis::GradedBasis(std::size_t nvars, unsigned degree) : nvars_(nvars), degree_(degree) {
  if (nvars == 0) {
    if (degree == 0) monomials_.push_back(Monomial::one(0));
  } else {
    std::vector<unsigned> cur(nvars, 0);
    fill_monomials(nvars, degree, 0, cur, monomials_);
  }
  for (std::size_t k = 0; k < monomials_.size(); ++k) index_.emplace(monomials_[k], k);
}

std::size_t GradedBasis::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) throw InvalidArgument("monomial not in this graded piece");
  return it->second;
}

const GradedBasis& graded_basis(std::size_t nvars, unsigned degree) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, unsigned>, std::unique_ptr<GradedBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{nvars, degree}];
  if (!slot) slot = std::make_unique<GradedBasis>(nvars, degree);
  return *slot;
}

Vector coefficient_vector(const Poly& f, unsigned degree) {
  const GradedBasis& basis = graded_basis(f.nvars(), degree);
  Vector v(basis.size(), f.field().zero());
  for (const auto& [m, c] : f.terms()) {
    if (m.degree() != degree) {
      throw InvalidArgument("coefficient_vector: term of degree " + std::to_string(m.degree()) +
                            " in degree " + std::to_string(degree));
    }
    v[basis.index_of(m)] = c;
  }
  return v;
}

Poly from_coefficients(const Field& field, std::size_t nvars, unsigned degree, const Vector& v) {
  const GradedBasis& basis = graded_basis(nvars, degree);
  if (v.size() != basis.size()) throw InvalidArgument("from_coefficients: wrong vector length");
  Poly f(field, nvars);
  for (std::size_t k = 0; k < v.size(); ++k) f.add_term(basis[k], v[k]);
  return f;
}

}  // namespace gwexcess
