#include "gwexcess/field.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "gwexcess/errors.hpp"

namespace gwexcess {

struct Field::Impl {
  FieldKind kind;
  std::uint64_t p = 0;
  unsigned m = 1;
  std::vector<std::uint64_t> modulus;
  mpz_class order;
  // Rep of the least non-residue, filled once at construction.
  std::uint64_t nonresidue_index = 0;
};

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a == 0) throw DivisionByZero();
  long long t = 0, new_t = 1;
  long long r = static_cast<long long>(p), new_r = static_cast<long long>(a);
  while (new_r != 0) {
    long long q = r / new_r;
    std::tie(t, new_t) = std::pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::pair(new_r, r - q * new_r);
  }
  if (t < 0) t += static_cast<long long>(p);
  return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce_signed(long long v, std::uint64_t p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += static_cast<long long>(p);
  return static_cast<std::uint64_t>(r);
}

std::uint64_t reduce_mpz(const mpz_class& v, std::uint64_t p) {
  mpz_class r = v % mpz_class(static_cast<unsigned long>(p));
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

const std::vector<std::uint64_t>& as_vec(const Elem::Rep& r) {
  return std::get<std::vector<std::uint64_t>>(r);
}

void check_same(const Elem& a, const Elem& b) {
  if (a.field() != b.field()) {
    throw FieldMismatch("operands over " + a.field().name() + " and " +
                        b.field().name());
  }
}

// Squarefree part of |v| by trial division.
mpz_class squarefree_part(mpz_class v) {
  if (v < 0) v = -v;
  mpz_class result = 1;
  for (mpz_class d = 2; d * d <= v; ++d) {
    int e = 0;
    while (mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t())) {
      v /= d;
      ++e;
    }
    if (e % 2 == 1) result *= d;
  }
  result *= v;
  return result;
}

}  // namespace

namespace upoly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
    }
  }
  trim(r);
  return r;
}

namespace {

// Quotient and remainder of a by m (m nonzero).
std::pair<Poly, Poly> divmod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  if (m.empty()) throw DivisionByZero();
  if (a.size() < m.size()) return {{}, a};
  const std::uint64_t lead_inv = invmod(m.back(), p);
  Poly q(a.size() - m.size() + 1, 0);
  for (std::size_t k = a.size() - 1; k + 1 >= m.size(); --k) {
    const std::uint64_t c = mulmod(a[k], lead_inv, p);
    if (c != 0) {
      const std::size_t shift = k + 1 - m.size();
      q[shift] = c;
      for (std::size_t j = 0; j < m.size(); ++j) {
        a[shift + j] = submod(a[shift + j], mulmod(c, m[j], p), p);
      }
    }
    if (k == 0) break;
  }
  trim(a);
  trim(q);
  return {q, a};
}

Poly sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = submod(a[i], b[i], p);
  trim(a);
  return a;
}

}  // namespace

Poly mod(const Poly& a, const Poly& m, std::uint64_t p) {
  return divmod(a, m, p).second;
}

Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint64_t li = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, li, p);
  }
  return a;
}

Poly powmod(const Poly& a, const mpz_class& e, const Poly& m, std::uint64_t p) {
  Poly result{1};
  result = mod(result, m, p);
  Poly base = mod(a, m, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mod(mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(mul(result, base, p), m, p);
  }
  return result;
}

bool is_irreducible(const Poly& f_in, std::uint64_t p) {
  Poly f = f_in;
  trim(f);
  if (f.size() < 2) return false;
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  if (m == 1) return true;
  const Poly t{0, 1};
  const mpz_class pz(static_cast<unsigned long>(p));
  // t^(p^k) mod f for k = 0..m.
  std::vector<Poly> frob{mod(t, f, p)};
  for (unsigned k = 1; k <= m; ++k) frob.push_back(powmod(frob.back(), pz, f, p));
  if (sub(frob[m], mod(t, f, p), p).size() != 0) return false;
  for (unsigned r = 2; r <= m; ++r) {
    if (m % r != 0 || !is_prime(r)) continue;
    Poly g = sub(frob[m / r], t, p);
    if (gcd(g, f, p) != Poly{1}) return false;
  }
  return true;
}

}  // namespace upoly

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Field

namespace {

std::uint64_t find_nonresidue_index(const Field& f) {
  if (f.characteristic() == 2) return 0;
  const std::uint64_t limit =
      f.order().fits_ulong_p() ? f.order().get_ui() : ~std::uint64_t{0};
  for (std::uint64_t i = 1; i < limit; ++i) {
    if (!is_square(f.from_index(i))) return i;
  }
  return 0;
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 32) || !is_prime(p)) {
    throw InvalidArgument("not a prime below 2^32: " + std::to_string(p));
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = FieldKind::prime_finite;
  impl->p = p;
  impl->order = mpz_class(static_cast<unsigned long>(p));
  Field f(impl);
  impl->nonresidue_index = find_nonresidue_index(f);
  return f;
}

Field Field::rationals() {
  static const Field q = [] {
    auto impl = std::make_shared<Impl>();
    impl->kind = FieldKind::rationals;
    return Field(impl);
  }();
  return q;
}

Field Field::extension(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  if (p >= (std::uint64_t{1} << 32) || !is_prime(p)) {
    throw InvalidArgument("not a prime below 2^32: " + std::to_string(p));
  }
  for (auto& c : modulus) c %= p;
  upoly::trim(modulus);
  if (modulus.size() < 2 || modulus.back() != 1) {
    throw InvalidArgument("extension modulus must be monic of degree >= 1");
  }
  if (modulus.size() == 2) return prime(p);
  if (!upoly::is_irreducible(modulus, p)) {
    throw InvalidArgument("extension modulus is reducible over F_" +
                          std::to_string(p));
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = FieldKind::extension_finite;
  impl->p = p;
  impl->m = static_cast<unsigned>(modulus.size() - 1);
  impl->modulus = std::move(modulus);
  mpz_ui_pow_ui(impl->order.get_mpz_t(), p, impl->m);
  Field f(impl);
  impl->nonresidue_index = find_nonresidue_index(f);
  return f;
}

FieldKind Field::kind() const { return impl_->kind; }
std::uint64_t Field::characteristic() const { return impl_->p; }
unsigned Field::degree() const { return impl_->m; }
const std::vector<std::uint64_t>& Field::modulus() const { return impl_->modulus; }

mpz_class Field::order() const {
  if (!is_finite()) throw InvalidArgument("the rationals have no finite order");
  return impl_->order;
}

Field Field::prime_subfield() const {
  if (kind() == FieldKind::extension_finite) return prime(impl_->p);
  return *this;
}

Elem Field::zero() const { return from_int(0); }
Elem Field::one() const { return from_int(1); }

Elem Field::from_int(long long v) const {
  switch (kind()) {
    case FieldKind::prime_finite:
      return Elem(*this, reduce_signed(v, impl_->p));
    case FieldKind::extension_finite: {
      std::vector<std::uint64_t> c(impl_->m, 0);
      c[0] = reduce_signed(v, impl_->p);
      return Elem(*this, c);
    }
    case FieldKind::rationals:
      return Elem(*this, mpq_class(static_cast<long>(v)));
  }
  return Elem(*this, std::uint64_t{0});
}

Elem Field::from_mpz(const mpz_class& v) const {
  switch (kind()) {
    case FieldKind::prime_finite:
      return Elem(*this, reduce_mpz(v, impl_->p));
    case FieldKind::extension_finite: {
      std::vector<std::uint64_t> c(impl_->m, 0);
      c[0] = reduce_mpz(v, impl_->p);
      return Elem(*this, c);
    }
    case FieldKind::rationals:
      return Elem(*this, mpq_class(v));
  }
  return zero();
}

Elem Field::from_rational(const mpq_class& v) const {
  if (kind() == FieldKind::rationals) {
    mpq_class c = v;
    c.canonicalize();
    return Elem(*this, c);
  }
  return from_mpz(v.get_num()) / from_mpz(v.get_den());
}

Elem Field::from_coeffs(const std::vector<long long>& coeffs) const {
  if (kind() != FieldKind::extension_finite) {
    if (coeffs.size() > 1 &&
        std::any_of(coeffs.begin() + 1, coeffs.end(), [](long long c) { return c != 0; })) {
      throw InvalidArgument("coefficient vector longer than field degree");
    }
    return from_int(coeffs.empty() ? 0 : coeffs[0]);
  }
  upoly::Poly a;
  for (long long c : coeffs) a.push_back(reduce_signed(c, impl_->p));
  a = upoly::mod(a, impl_->modulus, impl_->p);
  a.resize(impl_->m, 0);
  return Elem(*this, a);
}

Elem Field::from_index(std::uint64_t index) const {
  switch (kind()) {
    case FieldKind::prime_finite:
      return Elem(*this, index % impl_->p);
    case FieldKind::extension_finite: {
      std::vector<std::uint64_t> c(impl_->m, 0);
      for (unsigned i = 0; i < impl_->m; ++i) {
        c[i] = index % impl_->p;
        index /= impl_->p;
      }
      return Elem(*this, c);
    }
    case FieldKind::rationals:
      break;
  }
  throw InvalidArgument("from_index requires a finite field");
}

Elem Field::embed(const Elem& base) const {
  if (base.field() == *this) return base;
  if (kind() != FieldKind::extension_finite || base.field() != prime_subfield()) {
    throw FieldMismatch("cannot embed " + base.field().name() + " into " + name());
  }
  std::vector<std::uint64_t> c(impl_->m, 0);
  c[0] = base.residue();
  return Elem(*this, c);
}

Elem Field::nonresidue() const {
  if (!is_finite() || impl_->nonresidue_index == 0) {
    throw InvalidArgument("no canonical non-residue in " + name());
  }
  return from_index(impl_->nonresidue_index);
}

std::string Field::name() const {
  switch (kind()) {
    case FieldKind::prime_finite:
      return "F" + std::to_string(impl_->p);
    case FieldKind::extension_finite: {
      std::ostringstream os;
      os << "F" << impl_->p << "[t]/(";
      bool first = true;
      for (std::size_t i = impl_->modulus.size(); i-- > 0;) {
        const std::uint64_t c = impl_->modulus[i];
        if (c == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || c != 1) os << c;
        if (i > 0) os << (c != 1 ? "*t" : "t");
        if (i > 1) os << "^" << i;
      }
      os << ")";
      return os.str();
    }
    case FieldKind::rationals:
      return "QQ";
  }
  return "?";
}

bool operator==(const Field& a, const Field& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->kind == b.impl_->kind && a.impl_->p == b.impl_->p &&
         a.impl_->modulus == b.impl_->modulus;
}

// ---------------------------------------------------------------- Elem

Elem::Elem(Field field, Rep rep) : field_(std::move(field)), rep_(std::move(rep)) {}

bool Elem::is_zero() const {
  switch (field_.kind()) {
    case FieldKind::prime_finite:
      return std::get<std::uint64_t>(rep_) == 0;
    case FieldKind::extension_finite: {
      const auto& v = as_vec(rep_);
      return std::all_of(v.begin(), v.end(), [](std::uint64_t c) { return c == 0; });
    }
    case FieldKind::rationals:
      return std::get<mpq_class>(rep_) == 0;
  }
  return false;
}

bool Elem::is_one() const { return *this == field_.one(); }

std::uint64_t Elem::residue() const {
  if (field_.kind() != FieldKind::prime_finite) {
    throw InvalidArgument("residue() needs a prime field element");
  }
  return std::get<std::uint64_t>(rep_);
}

const std::vector<std::uint64_t>& Elem::coeffs() const {
  if (field_.kind() != FieldKind::extension_finite) {
    throw InvalidArgument("coeffs() needs an extension field element");
  }
  return as_vec(rep_);
}

const mpq_class& Elem::rational() const {
  if (field_.kind() != FieldKind::rationals) {
    throw InvalidArgument("rational() needs a rational element");
  }
  return std::get<mpq_class>(rep_);
}

std::uint64_t Elem::index() const {
  switch (field_.kind()) {
    case FieldKind::prime_finite:
      return std::get<std::uint64_t>(rep_);
    case FieldKind::extension_finite: {
      const auto& v = as_vec(rep_);
      std::uint64_t idx = 0;
      for (std::size_t i = v.size(); i-- > 0;) idx = idx * field_.characteristic() + v[i];
      return idx;
    }
    case FieldKind::rationals:
      break;
  }
  throw InvalidArgument("index() requires a finite field");
}

long long Elem::signed_residue() const {
  const std::uint64_t r = residue();
  const std::uint64_t p = field_.characteristic();
  return r > p / 2 ? static_cast<long long>(r) - static_cast<long long>(p)
                   : static_cast<long long>(r);
}

Elem Elem::operator-() const { return field_.zero() - *this; }

Elem operator+(const Elem& a, const Elem& b) {
  check_same(a, b);
  const std::uint64_t p = a.field_.characteristic();
  switch (a.field_.kind()) {
    case FieldKind::prime_finite:
      return Elem(a.field_, addmod(std::get<std::uint64_t>(a.rep_),
                                   std::get<std::uint64_t>(b.rep_), p));
    case FieldKind::extension_finite: {
      auto v = as_vec(a.rep_);
      const auto& w = as_vec(b.rep_);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = addmod(v[i], w[i], p);
      return Elem(a.field_, std::move(v));
    }
    case FieldKind::rationals:
      return Elem(a.field_, mpq_class(std::get<mpq_class>(a.rep_) +
                                      std::get<mpq_class>(b.rep_)));
  }
  return a;
}

Elem operator-(const Elem& a, const Elem& b) {
  check_same(a, b);
  const std::uint64_t p = a.field_.characteristic();
  switch (a.field_.kind()) {
    case FieldKind::prime_finite:
      return Elem(a.field_, submod(std::get<std::uint64_t>(a.rep_),
                                   std::get<std::uint64_t>(b.rep_), p));
    case FieldKind::extension_finite: {
      auto v = as_vec(a.rep_);
      const auto& w = as_vec(b.rep_);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = submod(v[i], w[i], p);
      return Elem(a.field_, std::move(v));
    }
    case FieldKind::rationals:
      return Elem(a.field_, mpq_class(std::get<mpq_class>(a.rep_) -
                                      std::get<mpq_class>(b.rep_)));
  }
  return a;
}

Elem operator*(const Elem& a, const Elem& b) {
  check_same(a, b);
  const std::uint64_t p = a.field_.characteristic();
  switch (a.field_.kind()) {
    case FieldKind::prime_finite:
      return Elem(a.field_, mulmod(std::get<std::uint64_t>(a.rep_),
                                   std::get<std::uint64_t>(b.rep_), p));
    case FieldKind::extension_finite: {
      upoly::Poly prod = upoly::mod(upoly::mul(as_vec(a.rep_), as_vec(b.rep_), p),
                                    a.field_.modulus(), p);
      prod.resize(a.field_.degree(), 0);
      return Elem(a.field_, std::move(prod));
    }
    case FieldKind::rationals:
      return Elem(a.field_, mpq_class(std::get<mpq_class>(a.rep_) *
                                      std::get<mpq_class>(b.rep_)));
  }
  return a;
}

Elem Elem::inv() const {
  if (is_zero()) throw DivisionByZero();
  const std::uint64_t p = field_.characteristic();
  switch (field_.kind()) {
    case FieldKind::prime_finite:
      return Elem(field_, invmod(std::get<std::uint64_t>(rep_), p));
    case FieldKind::extension_finite: {
      // Extended Euclid in F_p[t]: find s with s*a = 1 mod g.
      upoly::Poly r0 = field_.modulus(), r1 = as_vec(rep_);
      upoly::trim(r1);
      upoly::Poly s0{}, s1{1};
      while (!r1.empty()) {
        auto [q, r] = upoly::divmod(r0, r1, p);
        upoly::Poly s = upoly::sub(s0, upoly::mul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
      }
      // r0 is a nonzero constant.
      const std::uint64_t ci = invmod(r0[0], p);
      for (auto& c : s0) c = mulmod(c, ci, p);
      s0 = upoly::mod(s0, field_.modulus(), p);
      s0.resize(field_.degree(), 0);
      return Elem(field_, std::move(s0));
    }
    case FieldKind::rationals:
      return Elem(field_, mpq_class(1 / std::get<mpq_class>(rep_)));
  }
  return *this;
}

Elem operator/(const Elem& a, const Elem& b) {
  check_same(a, b);
  return a * b.inv();
}

Elem Elem::pow(const mpz_class& e) const {
  if (e < 0) return inv().pow(mpz_class(-e));
  if (field_.kind() == FieldKind::rationals) {
    if (!e.fits_ulong_p()) throw InvalidArgument("exponent too large over QQ");
    const unsigned long k = e.get_ui();
    const mpq_class& v = std::get<mpq_class>(rep_);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), v.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), v.get_den_mpz_t(), k);
    return field_.from_rational(mpq_class(num, den));
  }
  Elem result = field_.one();
  const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = result * result;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = result * *this;
  }
  return result;
}

bool operator==(const Elem& a, const Elem& b) {
  return a.field_ == b.field_ && a.rep_ == b.rep_;
}

bool canonical_less(const Elem& a, const Elem& b) {
  check_same(a, b);
  if (a.field_.kind() == FieldKind::rationals) {
    return std::get<mpq_class>(a.rep_) < std::get<mpq_class>(b.rep_);
  }
  if (a.field_.kind() == FieldKind::prime_finite) {
    return std::get<std::uint64_t>(a.rep_) < std::get<std::uint64_t>(b.rep_);
  }
  // Compare as base-p numbers, most significant coefficient first.
  const auto& v = as_vec(a.rep_);
  const auto& w = as_vec(b.rep_);
  return std::lexicographical_compare(v.rbegin(), v.rend(), w.rbegin(), w.rend());
}

std::string Elem::to_string() const {
  switch (field_.kind()) {
    case FieldKind::prime_finite:
      return std::to_string(std::get<std::uint64_t>(rep_));
    case FieldKind::extension_finite: {
      const auto& v = as_vec(rep_);
      std::ostringstream os;
      bool first = true;
      for (std::size_t i = v.size(); i-- > 0;) {
        if (v[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || v[i] != 1) os << v[i];
        if (i > 0) os << (v[i] != 1 ? "*t" : "t");
        if (i > 1) os << "^" << i;
      }
      return first ? "0" : os.str();
    }
    case FieldKind::rationals:
      return std::get<mpq_class>(rep_).get_str();
  }
  return "?";
}

// ---------------------------------------------------------------- square classes

bool is_square(const Elem& a) {
  if (a.is_zero()) throw InvalidArgument("is_square of zero");
  const Field& f = a.field();
  if (f.kind() == FieldKind::rationals) {
    const mpq_class& v = a.rational();
    if (v < 0) return false;
    return mpz_perfect_square_p(v.get_num_mpz_t()) != 0 &&
           mpz_perfect_square_p(v.get_den_mpz_t()) != 0;
  }
  if (f.characteristic() == 2) return true;
  return a.pow(mpz_class((f.order() - 1) / 2)).is_one();
}

Elem square_class(const Elem& a) {
  if (a.is_zero()) throw InvalidArgument("square_class of zero");
  const Field& f = a.field();
  if (f.kind() == FieldKind::rationals) {
    const mpq_class& v = a.rational();
    mpz_class part = squarefree_part(v.get_num() * v.get_den());
    if (v < 0) part = -part;
    return f.from_mpz(part);
  }
  return is_square(a) ? f.one() : f.nonresidue();
}

Elem frobenius(const Elem& a) {
  return a.pow(mpz_class(static_cast<unsigned long>(a.field().characteristic())));
}

Elem field_trace(const Elem& a) {
  const Field& f = a.field();
  if (f.kind() != FieldKind::extension_finite) return a;
  Elem sum = f.zero();
  Elem conj = a;
  for (unsigned i = 0; i < f.degree(); ++i) {
    sum += conj;
    conj = frobenius(conj);
  }
  const auto& c = sum.coeffs();
  if (std::any_of(c.begin() + 1, c.end(), [](std::uint64_t x) { return x != 0; })) {
    throw InternalInconsistency("field trace left the prime field");
  }
  return f.prime_subfield().from_index(c[0]);
}

Field build_extension(std::uint64_t p, unsigned m, std::uint64_t seed) {
  if (!is_prime(p)) throw InvalidArgument("not a prime: " + std::to_string(p));
  if (m == 0) throw InvalidArgument("extension degree must be positive");
  if (m == 1) return Field::prime(p);
  std::mt19937_64 rng(seed);
  const std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % p);
  auto draw = [&] {
    std::uint64_t r;
    do {
      r = rng();
    } while (r >= bound);
    return r % p;
  };
  for (;;) {
    std::vector<std::uint64_t> g(m + 1, 0);
    for (unsigned i = 0; i < m; ++i) g[i] = draw();
    g[m] = 1;
    if (g[0] == 0) continue;
    if (upoly::is_irreducible(g, p)) return Field::extension(p, g);
  }
}

}  // namespace gwexcess
