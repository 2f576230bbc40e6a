#include "gwexcess/io.hpp"

#include <cctype>
#include <regex>

#include "gwexcess/errors.hpp"

namespace gwexcess::io {

// ---------------------------------------------------------------- fields

Field parse_field(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "Q" || s == "QQ") return Field::rationals();
    static const std::regex re(R"(^(?:F|GF\()?\s*(\d+)\s*(?:\^\s*(\d+))?\s*\)?$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw InvalidArgument("unrecognized field: " + s);
    const std::uint64_t p = std::stoull(m[1].str());
    const unsigned d = m[2].matched ? static_cast<unsigned>(std::stoul(m[2].str())) : 1;
    if (d == 1) return Field::prime(p);
    return build_extension(p, d, 0);
  }
  if (j.is_number_integer() && j.get<long long>() > 0) return Field::prime(j.get<std::uint64_t>());
  if (j.is_object()) {
    const std::uint64_t p = j.at("p").get<std::uint64_t>();
    if (!j.contains("modulus")) return Field::prime(p);
    return Field::extension(p, j.at("modulus").get<std::vector<std::uint64_t>>());
  }
  throw InvalidArgument("field must be a string or an object");
}

json field_to_json(const Field& f) {
  switch (f.kind()) {
    case FieldKind::rationals: return "Q";
    case FieldKind::prime_finite: return "F" + std::to_string(f.characteristic());
    case FieldKind::extension_finite: return json{{"p", f.characteristic()}, {"modulus", f.modulus()}};
  }
  return nullptr;
}

// ---------------------------------------------------------------- elements

Elem parse_elem(const Field& f, const json& j) {
  if (j.is_number_integer()) return f.from_int(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (f.kind() == FieldKind::rationals) return f.from_rational(mpq_class(s));
    mpz_class z;
    if (z.set_str(s, 10) != 0) throw InvalidArgument("not an integer: " + s);
    return f.from_mpz(z);
  }
  if (j.is_array()) {
    if (f.kind() != FieldKind::extension_finite) throw InvalidArgument("coefficient arrays need an extension field");
    return f.from_coeffs(j.get<std::vector<long long>>());
  }
  throw InvalidArgument("unrecognized field element: " + j.dump());
}

json elem_to_json(const Elem& e) {
  switch (e.field().kind()) {
    case FieldKind::prime_finite: return e.signed_residue();
    case FieldKind::extension_finite: return e.coeffs();
    case FieldKind::rationals: {
      const mpq_class& q = e.rational();
      if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
      return q.get_str();
    }
  }
  return nullptr;
}

// ---------------------------------------------------------------- polynomials

namespace {

class PolyParser {
 public:
  PolyParser(const Field& f, std::size_t nvars, const std::string& s, const std::vector<std::string>& names)
      : f_(f), nv_(nvars), s_(s), names_(names) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("polynomial \"" + s_ + "\" at " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }
  Poly term() {
    Poly acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        const Poly d = unary();
        if (d.total_degree() != 0 || d.is_zero()) fail("division by a non-constant or zero");
        acc = d.coefficient(Monomial::one(nv_)).inv() * acc;
      } else {
        return acc;
      }
    }
  }
  Poly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    Poly base = atom();
    if (eat('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }
  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly::constant(f_, nv_, f_.from_mpz(mpz_class(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return variable(s_.substr(start, pos_ - start));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
  Poly variable(const std::string& id) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == id) return Poly::variable(f_, nv_, i);
    if (names_.empty() && id.size() > 1 && id[0] == 'x' &&
        std::all_of(id.begin() + 1, id.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      const std::size_t i = std::stoul(id.substr(1));
      if (i >= nv_) fail("variable " + id + " out of range");
      return Poly::variable(f_, nv_, i);
    }
    if (id == "t" && f_.kind() == FieldKind::extension_finite) return Poly::constant(f_, nv_, f_.from_coeffs({0, 1}));
    fail("unknown variable " + id);
  }

  const Field& f_;
  std::size_t nv_;
  const std::string& s_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly_string(const Field& f, std::size_t nvars, const std::string& s, const std::vector<std::string>& names) {
  if (!names.empty() && names.size() != nvars) throw InvalidArgument("variable name list has the wrong length");
  return PolyParser(f, nvars, s, names).parse();
}

Poly parse_poly(const Field& f, std::size_t nvars, const json& j, const std::vector<std::string>& names) {
  if (j.is_string()) return parse_poly_string(f, nvars, j.get<std::string>(), names);
  if (!j.is_array()) throw InvalidArgument("polynomial must be a string or a term list");
  Poly p(f, nvars);
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2) throw InvalidArgument("term must be [exponents, coefficient]");
    const auto e = t[0].get<std::vector<unsigned>>();
    if (e.size() != nvars) throw InvalidArgument("exponent vector has the wrong length");
    p.add_term(Monomial(e), parse_elem(f, t[1]));
  }
  return p;
}

json poly_to_json(const Poly& p, const std::vector<std::string>& names) { return p.to_string(names); }

// ---------------------------------------------------------------- matrices

json vector_to_json(const Vector& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(elem_to_json(e));
  return a;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i)));
  return rows;
}

Matrix parse_matrix(const Field& f, const json& j) {
  if (!j.is_array()) throw InvalidArgument("matrix must be an array of rows");
  const std::size_t r = j.size(), c = r ? j[0].size() : 0;
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) throw InvalidArgument("matrix rows differ in length");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = parse_elem(f, j[i][k]);
  }
  return m;
}

json gw_to_json(const GWClass& c) {
  const GWInvariants inv = c.invariants();
  json out{{"class", c.to_string()},
           {"rank", inv.rank},
           {"disc", elem_to_json(inv.disc)},
           {"disc_is_square", inv.disc_is_square},
           {"hyperbolic_copies", inv.hyperbolic_copies},
           {"positive", json::array()},
           {"negative", json::array()},
           {"anisotropic", c.anisotropic_part().to_string()}};
  for (const auto& e : c.positive()) out["positive"].push_back(elem_to_json(e));
  for (const auto& e : c.negative()) out["negative"].push_back(elem_to_json(e));
  if (c.field().kind() == FieldKind::rationals) out["signature"] = c.signature();
  return out;
}

// ---------------------------------------------------------------- excess

ParsedExcess parse_excess_input(const json& j) {
  if (!j.is_object()) throw InvalidArgument("excess input must be an object");
  const Field f = parse_field(j.at("field"));
  const unsigned n = j.at("n").get<unsigned>();
  if (n < 3 || n % 2 == 0) throw InvalidArgument("n must be odd and at least 3");
  std::optional<PolyMatrix> M;
  if (j.contains("M")) {
    const json& jm = j.at("M");
    if (!jm.is_array() || jm.size() != n) throw InvalidArgument("M must have n rows");
    PolyMatrix pm(f, 3, n, n - 2);
    for (std::size_t i = 0; i < n; ++i) {
      if (!jm[i].is_array() || jm[i].size() != n - 2) throw InvalidArgument("M rows must have n - 2 entries");
      for (std::size_t v = 0; v < n - 2; ++v) {
        const json& e = jm[i][v];
        if (!e.is_array() || e.size() != 3) throw InvalidArgument("M entries are coefficient triples");
        Poly form(f, 3);
        for (std::size_t a = 0; a < 3; ++a) form.add_term(Monomial::variable(3, a), parse_elem(f, e[a]));
        pm(i, v) = form;
      }
    }
    M = std::move(pm);
  }
  std::optional<std::vector<Poly>> quadrics;
  if (j.contains("quadrics")) {
    const json& jq = j.at("quadrics");
    if (!jq.is_array() || jq.size() != n) throw InvalidArgument("need n quadrics");
    std::vector<std::string> names;
    if (j.contains("vars")) names = j.at("vars").get<std::vector<std::string>>();
    std::vector<Poly> q;
    for (const auto& e : jq) q.push_back(parse_poly(f, n + 1, e, names));
    quadrics = std::move(q);
  }
  if (!M && !quadrics) throw InvalidArgument("excess input needs M or quadrics");
  if (quadrics) {
    PolyMatrix from_q = quadrics_to_M(*quadrics);
    if (M && !(from_q == *M)) throw InadmissibleInput("the quadrics do not match M");
    if (!M) M = std::move(from_q);
  }
  ExcessInput in{f, n, std::move(*M)};
  validate(in);
  return ParsedExcess{std::move(in), std::move(quadrics)};
}

json excess_input_to_json(const ExcessInput& in, const std::optional<std::vector<Poly>>& quadrics) {
  json M = json::array();
  for (std::size_t i = 0; i < in.M.rows(); ++i) {
    json row = json::array();
    for (std::size_t v = 0; v < in.M.cols(); ++v) {
      json triple = json::array();
      for (std::size_t a = 0; a < 3; ++a) triple.push_back(elem_to_json(in.M(i, v).coefficient(Monomial::variable(3, a))));
      row.push_back(std::move(triple));
    }
    M.push_back(std::move(row));
  }
  json out{{"field", field_to_json(in.field)}, {"n", in.n}, {"M", std::move(M)}};
  if (quadrics) {
    json q = json::array();
    for (const auto& p : *quadrics) q.push_back(poly_to_json(p));
    out["quadrics"] = std::move(q);
  }
  return out;
}

json excess_report_to_json(const ExcessReport& r) {
  const std::vector<std::string> xyz{"x0", "x1", "x2"};
  json f = json::array();
  for (const auto& p : r.f) f.push_back(poly_to_json(p, xyz));
  json domain = json::array();
  for (const auto& d : bprime_domain(r.input)) domain.push_back({{"v", d.v}, {"alpha", d.alpha.exponents()}});
  return json{{"input", excess_input_to_json(r.input)},
              {"f", std::move(f)},
              {"cover", {{"ok", r.cover.ok}, {"vanished", r.cover.vanished}, {"diagnosis", r.cover.diagnosis}}},
              {"quotient_dims", r.quotient_dims},
              {"E", poly_to_json(r.E, xyz)},
              {"jacobian_identity", r.jacobian_identity},
              {"lambda", vector_to_json(r.lambda)},
              {"bprime_domain", std::move(domain)},
              {"bprime_gram", matrix_to_json(r.bprime_gram)},
              {"bprime_radical", r.bprime_radical},
              {"image_dim", r.image_dim},
              {"quotient_basis", r.quotient_basis},
              {"B_gram", matrix_to_json(r.B_gram)},
              {"gw_B", gw_to_json(r.gw_B)},
              {"expected_rank", r.expected_rank},
              {"gw_euler", gw_to_json(r.gw_euler)},
              {"rhs", gw_to_json(r.rhs)}};
}

// ---------------------------------------------------------------- oracle

json closed_point_to_json(const ClosedPoint& p) {
  return json{{"degree", p.degree},
              {"field", field_to_json(p.field)},
              {"coords", vector_to_json(p.coords)},
              {"indices", p.indices},
              {"canonical", p.canonical}};
}

json verdict_to_json(const OracleVerdict& v) {
  json pts = json::array();
  for (const auto& fp : v.found_points) {
    pts.push_back({{"point", closed_point_to_json(fp.point)},
                   {"chart", fp.index.chart},
                   {"jacobian", elem_to_json(fp.index.jacobian)},
                   {"etale", fp.index.etale},
                   {"local_index", fp.index.index ? gw_to_json(*fp.index.index) : json(nullptr)},
                   {"transferred", fp.transferred ? gw_to_json(*fp.transferred) : json(nullptr)},
                   {"chart_independent", fp.chart_independent}});
  }
  return json{{"status", to_string(v.status)},
              {"found_rank", v.found_rank},
              {"expected_rank", v.expected_rank},
              {"lhs", gw_to_json(v.lhs)},
              {"rhs", gw_to_json(v.rhs)},
              {"comparison", to_string(v.comparison)},
              {"degrees_scanned", v.enumeration.degrees_scanned},
              {"evaluations", v.enumeration.evaluations},
              {"budget_exhausted", v.enumeration.budget_exhausted},
              {"diagnosis", v.diagnosis},
              {"points", std::move(pts)}};
}

json screen_to_json(const FiberScreen& s) {
  return json{{"finite", s.finite},
              {"pruned", s.pruned},
              {"counts", s.counts},
              {"exact", s.exact},
              {"degree_total", s.degree_total}};
}

// ---------------------------------------------------------------- residual

json module_form_to_json(const ModuleForm& m, const std::vector<std::string>& names) {
  json qb = json::array(), tb = json::array(), gram = json::array();
  for (const auto& p : m.quotient_basis) qb.push_back(poly_to_json(p, names));
  for (const auto& p : m.target_basis) tb.push_back(poly_to_json(p, names));
  for (const auto& row : m.gram) {
    json r = json::array();
    for (const auto& v : row) r.push_back(vector_to_json(v));
    gram.push_back(std::move(r));
  }
  return json{{"quotient_basis", std::move(qb)},
              {"target_basis", std::move(tb)},
              {"quotient_dims", m.quotient_dims},
              {"target_dims", m.target_dims},
              {"gram", std::move(gram)}};
}

json scalar_form_to_json(const ScalarForm& s) {
  return json{{"gram", matrix_to_json(s.gram)},
              {"class", gw_to_json(s.cls)},
              {"radical_dim", s.radical_dim},
              {"nondegenerate", s.nondegenerate}};
}

}  // namespace gwexcess::io
