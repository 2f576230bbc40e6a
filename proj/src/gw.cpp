#include "gwexcess/gw.hpp"

#include <algorithm>
#include <sstream>

#include "gwexcess/errors.hpp"

namespace gwexcess {

std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::equal:
      return "equal";
    case Comparison::unequal:
      return "unequal";
    case Comparison::unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

void check_field(const Field& f) {
  if (f.characteristic() == 2) throw InvalidArgument("bilinear forms in characteristic 2");
}

void sort_entries(std::vector<Elem>& v) {
  std::sort(v.begin(), v.end(), [](const Elem& a, const Elem& b) { return canonical_less(a, b); });
}

std::string entry_string(const Elem& e) {
  if (e.field().kind() == FieldKind::prime_finite) return std::to_string(e.signed_residue());
  return e.to_string();
}

// Removes <a> + <-a> pairs from v; returns the number removed.
long long collect_pairs(std::vector<Elem>& v) {
  long long pairs = 0;
  std::vector<bool> used(v.size(), false);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (used[i]) continue;
    const Elem target = square_class(-v[i]);
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (!used[j] && v[j] == target) {
        used[i] = used[j] = true;
        ++pairs;
        break;
      }
    }
  }
  std::vector<Elem> rest;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!used[i]) rest.push_back(v[i]);
  v = std::move(rest);
  return pairs;
}

}  // namespace

GWClass::GWClass(Field field) : field_(std::move(field)) { check_field(field_); }

GWClass GWClass::diagonal(Field field, const std::vector<Elem>& entries) {
  GWClass c(std::move(field));
  for (const auto& e : entries) {
    if (e.field() != c.field_) throw FieldMismatch("diagonal entry over " + e.field().name());
    if (e.is_zero()) throw InvalidArgument("zero diagonal entry in a GW class");
    c.pos_.push_back(e);
  }
  c.normalize();
  return c;
}

GWClass GWClass::hyperbolic(Field field, long long copies) {
  GWClass c(std::move(field));
  c.hyp_ = copies;
  return c;
}

void GWClass::normalize() {
  for (auto& e : pos_) e = square_class(e);
  for (auto& e : neg_) e = square_class(e);
  sort_entries(pos_);
  sort_entries(neg_);
}

long long GWClass::rank() const {
  return static_cast<long long>(pos_.size()) - static_cast<long long>(neg_.size()) + 2 * hyp_;
}

Elem GWClass::disc() const {
  Elem d = field_.one();
  for (const auto& e : pos_) d *= e;
  for (const auto& e : neg_) d = d / e;
  if (hyp_ % 2 != 0) d = -d;
  return square_class(d);
}

long long GWClass::signature() const {
  if (field_.kind() != FieldKind::rationals) throw InvalidArgument("signature needs the rationals");
  long long s = 0;
  for (const auto& e : pos_) s += e.rational() > 0 ? 1 : -1;
  for (const auto& e : neg_) s -= e.rational() > 0 ? 1 : -1;
  return s;
}

GWClass GWClass::anisotropic_part() const {
  if (!field_.is_finite()) {
    GWClass r = witt_reduce(*this);
    r.hyp_ = 0;
    return r;
  }
  const long long r = rank();
  const Elem d = disc();
  auto sign_pow = [&](long long h) { return (h % 2 == 0) ? field_.one() : -field_.one(); };
  GWClass out(field_);
  if (r % 2 == 0) {
    if (d == square_class(sign_pow(r / 2))) return out;
    const long long h = (r - 2) / 2;
    out.pos_ = {field_.one(), square_class(sign_pow(h) * d)};
  } else {
    const long long h = (r - 1) / 2;
    out.pos_ = {square_class(sign_pow(h) * d)};
  }
  out.normalize();
  return out;
}

GWInvariants GWClass::invariants() const {
  const Elem d = disc();
  long long h;
  if (field_.is_finite()) {
    h = (rank() - anisotropic_part().rank()) / 2;
  } else {
    h = witt_reduce(*this).hyp_;
  }
  return GWInvariants{rank(), d, d.is_one(), h};
}

GWClass GWClass::operator+(const GWClass& b) const {
  if (field_ != b.field_) throw FieldMismatch("GW classes over different fields");
  GWClass r = *this;
  r.pos_.insert(r.pos_.end(), b.pos_.begin(), b.pos_.end());
  r.neg_.insert(r.neg_.end(), b.neg_.begin(), b.neg_.end());
  r.hyp_ += b.hyp_;
  r.normalize();
  return r;
}

GWClass GWClass::operator-() const {
  GWClass r(field_);
  r.pos_ = neg_;
  r.neg_ = pos_;
  r.hyp_ = -hyp_;
  return r;
}

std::string GWClass::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& e : pos_) {
    os << (first ? "" : " + ") << "<" << entry_string(e) << ">";
    first = false;
  }
  if (hyp_ != 0) {
    if (first) {
      os << (hyp_ < 0 ? "-" : "");
    } else {
      os << (hyp_ < 0 ? " - " : " + ");
    }
    const long long a = hyp_ < 0 ? -hyp_ : hyp_;
    if (a != 1) os << a;
    os << "H";
    first = false;
  }
  for (const auto& e : neg_) {
    os << (first ? "-" : " - ") << "<" << entry_string(e) << ">";
    first = false;
  }
  return first ? "0" : os.str();
}

bool identical(const GWClass& a, const GWClass& b) {
  return a.field() == b.field() && a.positive() == b.positive() && a.negative() == b.negative() &&
         a.hyperbolic_count() == b.hyperbolic_count();
}

GWClass witt_reduce(const GWClass& a) {
  GWClass r(a.field_);
  // Multiset difference of the two parts.
  std::vector<Elem> pos = a.pos_, neg;
  for (const auto& e : a.neg_) {
    auto it = std::find(pos.begin(), pos.end(), e);
    if (it != pos.end()) {
      pos.erase(it);
    } else {
      neg.push_back(e);
    }
  }
  r.hyp_ = a.hyp_ + collect_pairs(pos) - collect_pairs(neg);
  r.pos_ = std::move(pos);
  r.neg_ = std::move(neg);
  r.normalize();
  return r;
}

GWClass scale_unit(const Elem& u, const GWClass& a) {
  if (u.is_zero()) throw InvalidArgument("scaling a form by zero");
  if (u.field() != a.field_) throw FieldMismatch("scalar from another field");
  GWClass r = a;
  for (auto& e : r.pos_) e *= u;
  for (auto& e : r.neg_) e *= u;
  r.normalize();
  return r;
}

Comparison is_equal(const GWClass& a, const GWClass& b) {
  if (a.field() != b.field()) throw FieldMismatch("comparing GW classes over different fields");
  if (a.field().is_finite()) {
    return a.rank() == b.rank() && a.disc() == b.disc() ? Comparison::equal : Comparison::unequal;
  }
  if (a.rank() != b.rank() || a.disc() != b.disc() || a.signature() != b.signature()) {
    return Comparison::unequal;
  }
  const GWClass d = witt_reduce(a - b);
  if (d.positive().empty() && d.negative().empty() && d.hyperbolic_count() == 0) {
    return Comparison::equal;
  }
  return Comparison::unknown;
}

GramClass from_gram(const Matrix& g) {
  const Congruence c = congruence_diagonalize(g);
  std::vector<Elem> entries;
  std::size_t radical = 0;
  for (std::size_t i = 0; i < c.D.rows(); ++i) {
    if (c.D(i, i).is_zero()) {
      ++radical;
    } else {
      entries.push_back(c.D(i, i));
    }
  }
  return GramClass{GWClass::diagonal(g.field(), entries), radical};
}

Matrix transfer_gram(const Elem& a) {
  const Field& f = a.field();
  if (f.kind() == FieldKind::rationals) throw InvalidArgument("transfer needs a finite field");
  const Field base = f.prime_subfield();
  const unsigned m = f.degree();
  const Elem t = m > 1 ? f.from_coeffs({0, 1}) : f.one();
  std::vector<Elem> tp{f.one()};
  for (unsigned k = 1; k < 2 * m; ++k) tp.push_back(tp.back() * t);
  Matrix g(base, m, m);
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) g(i, j) = field_trace(a * tp[i + j]);
  return g;
}

GWClass transfer(const GWClass& c) {
  const Field& f = c.field();
  if (f.kind() == FieldKind::rationals) throw InvalidArgument("transfer needs a finite field");
  const Field base = f.prime_subfield();
  auto push = [&](const Elem& a) {
    const GramClass gc = from_gram(transfer_gram(a));
    if (gc.radical_dim != 0) throw InternalInconsistency("degenerate trace form");
    return gc.cls;
  };
  GWClass out = GWClass::hyperbolic(base, c.hyperbolic_count() * static_cast<long long>(f.degree()));
  for (const auto& e : c.positive()) out += push(e);
  for (const auto& e : c.negative()) out = out - push(e);
  return out;
}

}  // namespace gwexcess
