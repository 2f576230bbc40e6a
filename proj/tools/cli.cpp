#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "gwexcess/errors.hpp"
#include "gwexcess/fixtures.hpp"
#include "gwexcess/io.hpp"
#include "gwexcess/residual.hpp"

namespace gwexcess::cli {

namespace {

using io::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  json report;
  std::string text;
  int code = exit_ok;
};

json read_json(const std::string& path, std::istream& in) {
  std::string data;
  if (path == "-") {
    data.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    data.assign(std::istreambuf_iterator<char>(f), {});
  }
  try {
    return json::parse(data);
  } catch (const json::parse_error& e) {
    throw UsageError("malformed JSON in " + (path == "-" ? std::string("stdin") : path) + ": " + e.what());
  }
}

// Accepts a JSON array or a bare comma-separated list.
json parse_list_arg(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  const std::string text = first != std::string::npos && s[first] == '[' ? s : "[" + s + "]";
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    throw UsageError("cannot parse list argument: " + s);
  }
}

// --field takes a name such as F31, or a JSON object.
json field_arg(const std::string& s) {
  if (s.find('{') == std::string::npos) return s;
  try {
    return json::parse(s);
  } catch (const json::parse_error&) {
    throw UsageError("cannot parse field: " + s);
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) && !j.at(key).is_null() ? j.at(key).get<T>() : fallback;
}

std::optional<std::uint64_t> get_budget(const json& j, const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::uint64_t>();
}

json budget_json(const std::optional<std::uint64_t>& b) { return b ? json(*b) : json(nullptr); }

Field prime_field_of(const json& j) {
  const Field f = io::parse_field(j);
  if (f.kind() != FieldKind::prime_finite) throw InvalidArgument("a prime field is required, got " + f.name());
  return f;
}

constexpr std::uint64_t default_eval_budget = 200'000'000;
constexpr std::uint64_t default_seed_budget = 200'000;

// ---------------------------------------------------------------- config

json random_source(const json& r) {
  return json{{"field", io::field_to_json(io::parse_field(r.at("field")))},
              {"n", get_or<unsigned>(r, "n", 5)},
              {"seed", r.at("seed").get<std::uint64_t>()}};
}

// Fills defaults and fixes key order, so that normalize(normalize(c)) ==
// normalize(c).
json normalize(const json& c) {
  if (!c.is_object() || !c.contains("subcommand")) throw UsageError("config needs a subcommand");
  const std::string sub = c.at("subcommand").get<std::string>();
  json out{{"subcommand", sub}, {"format", get_or<std::string>(c, "format", "json")}};
  const std::string fmt = out["format"];
  if (fmt != "json" && fmt != "text") throw UsageError("unknown format " + fmt);
  auto one_source = [&](std::initializer_list<const char*> keys) {
    int seen = 0;
    for (const char* k : keys) seen += c.contains(k) ? 1 : 0;
    if (seen != 1) throw UsageError(sub + " needs exactly one input source");
  };
  if (sub == "excess") {
    one_source({"fixture", "random", "input"});
    if (c.contains("fixture")) out["fixture"] = c.at("fixture");
    if (c.contains("random")) out["random"] = random_source(c.at("random"));
    if (c.contains("input")) out["input"] = c.at("input");
  } else if (sub == "verify") {
    one_source({"random", "input"});
    if (c.contains("random")) out["random"] = random_source(c.at("random"));
    if (c.contains("input")) out["input"] = c.at("input");
    out["max_degree"] = get_or<unsigned>(c, "max_degree", 2);
    const bool long_test = get_or<bool>(c, "long_test", false);
    out["budget"] = long_test ? json(nullptr) : budget_json(get_budget(c, "budget", default_eval_budget));
    out["long_test"] = long_test;
  } else if (sub == "residual") {
    if (!c.contains("input")) throw UsageError("residual needs an input");
    out["input"] = c.at("input");
  } else if (sub == "gw") {
    out["field"] = io::field_to_json(io::parse_field(c.at("field")));
    const bool has_diag = c.contains("diag") && !c.at("diag").is_null();
    const bool has_gram = c.contains("gram") && !c.at("gram").is_null();
    if (has_diag == has_gram) throw UsageError("gw needs exactly one of diag and gram");
    out["diag"] = has_diag ? c.at("diag") : json(nullptr);
    out["gram"] = has_gram ? c.at("gram") : json(nullptr);
    out["compare"] = c.contains("compare") ? c.at("compare") : json(nullptr);
    out["transfer"] = get_or<bool>(c, "transfer", false);
  } else if (sub == "random-search") {
    out["field"] = io::field_to_json(prime_field_of(c.at("field")));
    out["n"] = get_or<unsigned>(c, "n", 5);
    out["target"] = get_or<std::string>(c, "target", "oracle");
    const std::string t = out["target"];
    if (t != "oracle" && t != "square-disc" && t != "nonsquare-disc") throw UsageError("unknown target " + t);
    out["max_degree"] = get_or<unsigned>(c, "max_degree", 3);
    out["first_seed"] = get_or<std::uint64_t>(c, "first_seed", 0);
    out["seed_budget"] = get_or<std::uint64_t>(c, "seed_budget", default_seed_budget);
    const bool long_test = get_or<bool>(c, "long_test", false);
    out["eval_budget"] = long_test ? json(nullptr) : budget_json(get_budget(c, "eval_budget", default_eval_budget));
    out["long_test"] = long_test;
  } else {
    throw UsageError("unknown subcommand " + sub);
  }
  return out;
}

// ---------------------------------------------------------------- text helpers

std::string matrix_text(const Matrix& m, const std::string& indent = "  ") {
  std::size_t w = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) w = std::max(w, m(i, j).to_string().size());
  std::ostringstream s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s << indent;
    for (std::size_t j = 0; j < m.cols(); ++j) s << (j ? " " : "") << std::setw(static_cast<int>(w)) << m(i, j).to_string();
    s << '\n';
  }
  return s.str();
}

std::string gw_text(const GWClass& c) {
  const GWInvariants inv = c.invariants();
  return c.to_string() + "  (rank " + std::to_string(inv.rank) + ", disc " + inv.disc.to_string() +
         (inv.disc_is_square ? ", square)" : ", nonsquare)");
}

template <typename T>
std::string join(const std::vector<T>& v, const std::string& sep = " ") {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? sep : "") << v[i];
  return s.str();
}

// ---------------------------------------------------------------- excess

std::string excess_text(const ExcessReport& r) {
  std::ostringstream s;
  s << "field " << r.input.field.name() << ", n = " << r.input.n << '\n';
  for (std::size_t i = 0; i < r.f.size(); ++i) s << "f" << i << " = " << r.f[i].to_string({"x0", "x1", "x2"}) << '\n';
  s << "quotient dims: " << join(r.quotient_dims) << '\n';
  s << "E = " << r.E.to_string({"x0", "x1", "x2"}) << '\n';
  s << "Jacobian identity: " << (r.jacobian_identity ? "holds" : "FAILS") << '\n';
  s << "B' (" << r.bprime_gram.rows() << " x " << r.bprime_gram.cols() << ", radical " << r.bprime_radical
    << ", image of M^T " << r.image_dim << "):\n"
    << matrix_text(r.bprime_gram);
  s << "B on coordinates " << join(r.quotient_basis, ",") << ":\n" << matrix_text(r.B_gram);
  s << "[B]      = " << gw_text(r.gw_B) << '\n';
  s << "euler    = " << gw_text(r.gw_euler) << '\n';
  s << "rhs      = " << gw_text(r.rhs) << '\n';
  return s.str();
}

Outcome run_excess_cmd(const json& c) {
  ExcessInput in = [&] {
    if (c.contains("fixture")) {
      const std::string name = c.at("fixture");
      auto fx = named_fixture(name);
      if (!fx) throw UsageError("unknown fixture " + name + " (known: " + join(fixture_names(), ", ") + ")");
      return *fx;
    }
    if (c.contains("random")) {
      const json& r = c.at("random");
      return random_admissible_input(io::parse_field(r.at("field")), r.at("n"), r.at("seed")).input;
    }
    return io::parse_excess_input(c.at("input")).input;
  }();
  const ExcessReport r = run_excess(in);
  return {io::excess_report_to_json(r), excess_text(r), exit_ok};
}

// ---------------------------------------------------------------- verify

int verdict_code(const OracleVerdict& v) {
  switch (v.status) {
    case OracleStatus::verified: return exit_ok;
    case OracleStatus::failed: return exit_failed;
    case OracleStatus::incomplete: return v.enumeration.budget_exhausted ? exit_budget : exit_incomplete;
  }
  return exit_failed;
}

std::string verdict_text(const OracleVerdict& v) {
  std::ostringstream s;
  s << "status: " << to_string(v.status) << '\n';
  s << "points found: " << v.found_points.size() << ", total degree " << v.found_rank << " of " << v.expected_rank
    << " (degrees scanned " << v.enumeration.degrees_scanned << ", " << v.enumeration.evaluations << " evaluations)\n";
  for (const auto& fp : v.found_points) {
    s << "  " << fp.point.to_string() << "  chart " << fp.index.chart << "  Jac "
      << fp.index.jacobian.to_string();
    if (fp.transferred) s << "  -> " << fp.transferred->to_string();
    if (!fp.index.etale) s << "  NOT ETALE";
    if (!fp.chart_independent) s << "  CHART DEPENDENT";
    s << '\n';
  }
  s << "sum of local indices = " << gw_text(v.lhs) << '\n';
  s << "2^(n-1) H - euler     = " << gw_text(v.rhs) << '\n';
  s << "comparison: " << to_string(v.comparison) << '\n';
  if (!v.diagnosis.empty()) s << "diagnosis: " << v.diagnosis << '\n';
  return s.str();
}

Outcome run_verify_cmd(const json& c) {
  Field f = Field::prime(2);
  unsigned n = 0;
  std::vector<Poly> q;
  ExcessInput in = [&] {
    if (c.contains("random")) {
      const json& r = c.at("random");
      f = io::parse_field(r.at("field"));
      n = r.at("n");
      q = random_admissible_quadrics(f, n, r.at("seed")).quadrics;
      return ExcessInput{f, n, quadrics_to_M(q)};
    }
    io::ParsedExcess p = io::parse_excess_input(c.at("input"));
    if (!p.quadrics) throw InvalidArgument("verify needs quadrics, not only M");
    q = std::move(*p.quadrics);
    return std::move(p.input);
  }();
  const ExcessReport r = run_excess(in);
  const auto budget = get_budget(c, "budget", default_eval_budget);
  const OracleVerdict v =
      verify_theorem(q, r, c.at("max_degree"), budget.value_or(std::numeric_limits<std::uint64_t>::max()));
  json quadrics = json::array();
  for (const auto& p : q) quadrics.push_back(io::poly_to_json(p));
  json rep{{"quadrics", std::move(quadrics)},
           {"gw_B", io::gw_to_json(r.gw_B)},
           {"gw_euler", io::gw_to_json(r.gw_euler)},
           {"verdict", io::verdict_to_json(v)}};
  std::ostringstream s;
  s << "field " << in.field.name() << ", n = " << in.n << '\n';
  for (std::size_t i = 0; i < q.size(); ++i) s << "Q" << i + 1 << " = " << q[i].to_string() << '\n';
  s << "[B] = " << gw_text(r.gw_B) << '\n' << verdict_text(v);
  return {std::move(rep), s.str(), verdict_code(v)};
}

// ---------------------------------------------------------------- residual

Outcome run_residual_cmd(const json& c) {
  const json& in = c.at("input");
  const Field f = io::parse_field(in.at("field"));
  std::vector<std::string> names;
  std::size_t nv = 0;
  if (in.contains("vars")) {
    names = in.at("vars").get<std::vector<std::string>>();
    nv = names.size();
  } else {
    nv = in.at("nvars").get<std::size_t>();
  }
  if (nv == 0) throw InvalidArgument("need at least one variable");
  std::vector<Poly> a;
  for (const auto& g : in.at("J")) a.push_back(io::parse_poly(f, nv, g, names));
  const GradedIdeal j(f, nv, a);
  a = j.generators();
  if (a.empty()) throw InvalidArgument("J needs a nonzero generator");
  const unsigned D = get_or<unsigned>(in, "degree_bound", 2 * j.max_generator_degree() + 4);
  const int t = get_or<int>(in, "t", 1);
  const std::vector<std::string> shown = names.empty() ? std::vector<std::string>{} : names;
  auto poly_list = [&](const std::vector<Poly>& ps) {
    json l = json::array();
    for (const auto& p : ps) l.push_back(io::poly_to_json(p, shown));
    return l;
  };

  const SplitIdeal s = split_ideal(j, D);
  const GradedIdeal i_ideal = s.I_ideal();
  const FreenessReport fr = conormal_freeness_check(j, s.K, a, D);
  const HomologyTable h = kos_prime_homology(a, i_ideal, t, D);

  json dims = json::array();
  std::ostringstream txt;
  txt << "field " << f.name() << ", " << nv << " variables, degree bound " << D << ", t = " << t << '\n';
  txt << " d    R    J    I    K   Kos' terms / homology\n";
  for (unsigned d = 0; d <= D; ++d) {
    const std::size_t rd = GradedSubspace::whole(f, nv, d).dim(), jd = ideal_piece(j, d).dim();
    dims.push_back({{"d", d}, {"R", rd}, {"J", jd}, {"I", s.I[d].dim()}, {"K", s.K[d].dim()},
                    {"kos_terms", h.term_dims[d]}, {"kos_homology", h.homology[d]}});
    txt << std::setw(2) << d << std::setw(5) << rd << std::setw(5) << jd << std::setw(5) << s.I[d].dim() << std::setw(5)
        << s.K[d].dim() << "   " << join(h.term_dims[d], ",") << " / " << join(h.homology[d], ",") << '\n';
  }
  txt << "I generators: " << join([&] {
    std::vector<std::string> v;
    for (const auto& p : s.I_generators) v.push_back(p.to_string(shown));
    return v;
  }(), ", ") << '\n';
  txt << "conormal module free: " << (fr.free ? "yes" : "no");
  if (!fr.free) txt << " (fails in degrees " << join(fr.failing_degrees, ",") << ")";
  txt << '\n';

  json rep{{"degree_bound", D},
           {"t", t},
           {"J_generators", poly_list(a)},
           {"I_generators", poly_list(s.I_generators)},
           {"saturation_exponents", s.saturation_exponents},
           {"dimensions", std::move(dims)},
           {"conormal_free", fr.free},
           {"conormal_failing_degrees", fr.failing_degrees}};
  int code = exit_ok;
  try {
    const ModuleForm mf = mult_form(j, i_ideal, D);
    rep["mult_form"] = io::module_form_to_json(mf, shown);
    txt << "I/J basis: " << join([&] {
      std::vector<std::string> v;
      for (const auto& p : mf.quotient_basis) v.push_back(p.to_string(shown));
      return v;
    }(), ", ") << '\n';
    txt << "I^2/JI basis: " << join([&] {
      std::vector<std::string> v;
      for (const auto& p : mf.target_basis) v.push_back(p.to_string(shown));
      return v;
    }(), ", ") << '\n';
    for (std::size_t u = 0; u < mf.gram.size(); ++u) {
      txt << "  ";
      for (std::size_t v = 0; v < mf.gram[u].size(); ++v) {
        std::vector<std::string> coords;
        for (const auto& e : mf.gram[u][v]) coords.push_back(e.to_string());
        txt << (v ? " " : "") << "(" << join(coords, ",") << ")";
      }
      txt << '\n';
    }
    if (in.contains("lambda") && !in.at("lambda").is_null()) {
      Vector lambda;
      for (const auto& e : in.at("lambda")) lambda.push_back(io::parse_elem(f, e));
      if (lambda.size() != mf.target_basis.size())
        throw InvalidArgument("lambda needs " + std::to_string(mf.target_basis.size()) + " entries");
      const ScalarForm sf = scalarize(mf, lambda);
      rep["scalarized"] = io::scalar_form_to_json(sf);
      txt << "lambda o mult:\n" << matrix_text(sf.gram) << "class " << gw_text(sf.cls) << ", radical " << sf.radical_dim
          << '\n';
    } else {
      rep["scalarized"] = nullptr;
    }
  } catch (const BudgetExhausted& e) {
    rep["mult_form"] = json{{"error", e.what()}};
    rep["scalarized"] = nullptr;
    txt << "multiplication form: " << e.what() << '\n';
    code = exit_budget;
  }
  return {std::move(rep), txt.str(), code};
}

// ---------------------------------------------------------------- gw

Outcome run_gw_cmd(const json& c) {
  const Field f = io::parse_field(c.at("field"));
  auto diag_of = [&](const json& l) {
    std::vector<Elem> v;
    for (const auto& e : l) {
      Elem x = io::parse_elem(f, e);
      if (x.is_zero()) throw InvalidArgument("diagonal entries must be nonzero");
      v.push_back(std::move(x));
    }
    return GWClass::diagonal(f, v);
  };
  std::ostringstream txt;
  json rep;
  GWClass cls(f);
  if (!c.at("diag").is_null()) {
    cls = diag_of(c.at("diag"));
    rep["class"] = io::gw_to_json(cls);
  } else {
    const Matrix g = io::parse_matrix(f, c.at("gram"));
    if (g.rows() != g.cols() || !(g == g.transpose())) throw InvalidArgument("gram must be a symmetric square matrix");
    const GramClass gc = from_gram(g);
    cls = gc.cls;
    rep["class"] = io::gw_to_json(cls);
    rep["radical_dim"] = gc.radical_dim;
    txt << "radical dimension " << gc.radical_dim << '\n';
  }
  txt << "class " << gw_text(cls) << '\n';
  if (!c.at("compare").is_null()) {
    const GWClass other = diag_of(c.at("compare"));
    const Comparison cmp = is_equal(cls, other);
    rep["compare"] = {{"other", io::gw_to_json(other)}, {"result", to_string(cmp)}};
    txt << "compared with " << other.to_string() << ": " << to_string(cmp) << '\n';
  }
  if (c.at("transfer").get<bool>()) {
    const GWClass tr = transfer(cls);
    rep["transfer"] = io::gw_to_json(tr);
    txt << "transfer to " << tr.field().name() << ": " << gw_text(tr) << '\n';
  }
  return {std::move(rep), txt.str(), exit_ok};
}

// ---------------------------------------------------------------- random search

json verdict_summary(const OracleVerdict& v) {
  return json{{"status", to_string(v.status)},
              {"found_rank", v.found_rank},
              {"comparison", to_string(v.comparison)},
              {"diagnosis", v.diagnosis}};
}

Outcome run_oracle_search(const json& c) {
  SearchOptions opt;
  opt.p = prime_field_of(c.at("field")).characteristic();
  opt.n = c.at("n");
  opt.max_degree = c.at("max_degree");
  opt.first_seed = c.at("first_seed");
  opt.seed_budget = c.at("seed_budget");
  opt.evaluation_budget =
      get_budget(c, "eval_budget", default_eval_budget).value_or(std::numeric_limits<std::uint64_t>::max());
  const SearchResult res = random_search(opt);
  json cands = json::array();
  std::ostringstream txt;
  txt << "seeds tried " << res.seeds_tried << " (inadmissible " << res.inadmissible << ", screened out "
      << res.screened_out << ")\n";
  const OracleVerdict* hit = nullptr;
  for (const auto& cand : res.candidates) {
    json e{{"seed", cand.seed}, {"screen", cand.screen ? io::screen_to_json(*cand.screen) : json(nullptr)}};
    e["verdict"] = cand.verdict ? verdict_summary(*cand.verdict) : json(nullptr);
    txt << "  seed " << cand.seed;
    if (cand.screen) txt << "  closed points by degree " << join(cand.screen->exact, ",");
    if (cand.verdict) txt << "  " << to_string(cand.verdict->status) << " (rank " << cand.verdict->found_rank << ")";
    txt << '\n';
    if (res.found_seed && cand.seed == *res.found_seed && cand.verdict) hit = &*cand.verdict;
    cands.push_back(std::move(e));
  }
  json rep{{"seeds_tried", res.seeds_tried},
           {"inadmissible", res.inadmissible},
           {"screened_out", res.screened_out},
           {"exhausted", res.exhausted},
           {"candidates", std::move(cands)}};
  rep["found_seed"] = res.found_seed ? json(*res.found_seed) : json(nullptr);
  rep["found_verdict"] = hit ? io::verdict_to_json(*hit) : json(nullptr);
  if (res.found_seed) {
    txt << "found seed " << *res.found_seed << '\n';
    if (hit) txt << verdict_text(*hit);
  } else {
    txt << "seed budget exhausted\n";
  }
  return {std::move(rep), txt.str(), res.found_seed ? exit_ok : exit_budget};
}

Outcome run_disc_search(const json& c) {
  const Field f = prime_field_of(c.at("field"));
  const unsigned n = c.at("n");
  const bool want_square = c.at("target") == "square-disc";
  const std::uint64_t first = c.at("first_seed"), budget = c.at("seed_budget");
  json stream = json::array();
  std::ostringstream txt;
  std::optional<std::uint64_t> found;
  std::uint64_t tried = 0;
  for (std::uint64_t s = first; tried < budget && !found; ++s, ++tried) {
    const RandomInput ri = random_admissible_input(f, n, s);
    const ExcessReport r = run_excess(ri.input);
    const bool sq = r.gw_B.invariants().disc_is_square;
    stream.push_back({{"seed", s}, {"attempts", ri.attempts}, {"gw_B", io::gw_to_json(r.gw_B)}});
    txt << "  seed " << s << "  [B] = " << gw_text(r.gw_B) << '\n';
    if (sq == want_square) found = s;
  }
  json rep{{"seeds_tried", tried}, {"exhausted", !found}, {"stream", std::move(stream)}};
  rep["found_seed"] = found ? json(*found) : json(nullptr);
  txt << (found ? "found seed " + std::to_string(*found) : std::string("seed budget exhausted")) << '\n';
  return {std::move(rep), txt.str(), found ? exit_ok : exit_budget};
}

Outcome run_search_cmd(const json& c) {
  return c.at("target") == "oracle" ? run_oracle_search(c) : run_disc_search(c);
}

// ---------------------------------------------------------------- dispatch

Outcome dispatch(const json& c) {
  const std::string sub = c.at("subcommand");
  if (sub == "excess") return run_excess_cmd(c);
  if (sub == "verify") return run_verify_cmd(c);
  if (sub == "residual") return run_residual_cmd(c);
  if (sub == "gw") return run_gw_cmd(c);
  return run_search_cmd(c);
}

int execute(const json& raw, std::ostream& out, std::ostream& err) {
  json cfg;
  try {
    cfg = normalize(raw);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const json::exception& e) {
    err << "error: bad config: " << e.what() << '\n';
    return exit_usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  const bool as_json = cfg.at("format") == "json";
  Outcome o;
  std::string kind;
  try {
    o = dispatch(cfg);
  } catch (const UsageError& e) {
    o.code = exit_usage, kind = "usage", o.text = e.what();
  } catch (const json::exception& e) {
    o.code = exit_usage, kind = "malformed_input", o.text = e.what();
  } catch (const InadmissibleInput& e) {
    o.code = exit_inadmissible, kind = "inadmissible_input", o.text = e.what();
  } catch (const BudgetExhausted& e) {
    o.code = exit_budget, kind = "budget_exhausted", o.text = e.what();
  } catch (const InternalInconsistency& e) {
    o.code = exit_failed, kind = "internal_inconsistency", o.text = e.what();
  } catch (const Error& e) {
    o.code = exit_usage, kind = "invalid_argument", o.text = e.what();
  }
  if (!kind.empty()) {
    err << "error: " << o.text << '\n';
    if (as_json) {
      json doc{{"schema_version", io::schema_version}, {"config", cfg}, {"report", nullptr},
               {"error", {{"kind", kind}, {"message", o.text}}}, {"exit_code", o.code}};
      out << doc.dump(2) << '\n';
    }
    return o.code;
  }
  if (as_json) {
    json doc{{"schema_version", io::schema_version}, {"config", cfg}, {"report", std::move(o.report)},
             {"exit_code", o.code}};
    out << doc.dump(2) << '\n';
  } else {
    out << o.text;
  }
  return o.code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Quadratically enriched excess Euler numbers of intersections of quadrics containing a plane"};
  app.name("gwexcess");
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::string config_path, format = "json";
  app.add_option("--config", config_path, "Replay a config echo (a config object or a whole JSON report)");
  auto* format_opt = app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

  // excess
  auto* ex = app.add_subcommand("excess", "Run the excess pipeline on a matrix of linear forms");
  std::string ex_input, ex_fixture, ex_field = "F31";
  unsigned ex_n = 5;
  std::uint64_t ex_seed = 0;
  bool ex_random = false;
  auto* ex_in = ex->add_option("--input", ex_input, "JSON input file, - for stdin");
  auto* ex_fx = ex->add_option("--fixture", ex_fixture, "Built-in input")->check(CLI::IsMember(fixture_names()));
  auto* ex_rd = ex->add_flag("--random", ex_random, "Random admissible input");
  ex->add_option("--field", ex_field, "Field for --random")->capture_default_str();
  ex->add_option("--n", ex_n, "Number of quadrics for --random")->capture_default_str();
  ex->add_option("--seed", ex_seed, "Seed for --random")->capture_default_str();
  ex_in->excludes(ex_fx)->excludes(ex_rd);
  ex_fx->excludes(ex_rd);

  // verify
  auto* ve = app.add_subcommand("verify", "Compare the excess class with a sum of local indices over found points");
  std::string ve_input, ve_field = "F3";
  unsigned ve_n = 5, ve_degree = 2;
  std::uint64_t ve_seed = 0, ve_budget = default_eval_budget;
  bool ve_random = false, ve_long = false;
  auto* ve_in = ve->add_option("--input", ve_input, "JSON input with quadrics, - for stdin");
  auto* ve_rd = ve->add_flag("--random", ve_random, "Random admissible quadrics");
  ve->add_option("--field", ve_field, "Prime field for --random")->capture_default_str();
  ve->add_option("--n", ve_n, "Number of quadrics for --random")->capture_default_str();
  ve->add_option("--seed", ve_seed, "Seed for --random")->capture_default_str();
  ve->add_option("--max-degree", ve_degree, "Largest residue degree to enumerate")->capture_default_str();
  ve->add_option("--budget", ve_budget, "Evaluation budget")->capture_default_str();
  ve->add_flag("--long-test", ve_long, "Remove the evaluation budget");
  ve_in->excludes(ve_rd);

  // residual
  auto* re = app.add_subcommand("residual", "Residual split, Koszul homology and multiplication form of an ideal");
  std::string re_input;
  re->add_option("--input", re_input, "JSON input {field, vars|nvars, J, degree_bound, lambda, t}, - for stdin")
      ->required();

  // gw
  auto* gw = app.add_subcommand("gw", "Grothendieck-Witt arithmetic");
  std::string gw_field, gw_diag, gw_gram, gw_compare;
  bool gw_transfer = false;
  gw->add_option("--field", gw_field, "Field, e.g. F31, F3^2, Q")->required();
  auto* gw_d = gw->add_option("--diag", gw_diag, "Diagonal entries, e.g. 1,-1,3");
  auto* gw_g = gw->add_option("--gram", gw_gram, "Symmetric Gram matrix as JSON rows");
  gw->add_option("--compare", gw_compare, "Diagonal entries of a class to compare with");
  gw->add_flag("--transfer", gw_transfer, "Push the class down to the prime field");
  gw_d->excludes(gw_g);

  // random-search
  auto* rs = app.add_subcommand("random-search", "Scan seeds for a random instance meeting a target");
  std::string rs_field = "F3", rs_target = "oracle";
  unsigned rs_n = 5, rs_degree = 3;
  std::uint64_t rs_seed = 0, rs_budget = default_seed_budget, rs_eval = default_eval_budget;
  bool rs_long = false;
  rs->add_option("--field", rs_field, "Prime field")->capture_default_str();
  rs->add_option("--n", rs_n, "Number of quadrics")->capture_default_str();
  rs->add_option("--max-degree", rs_degree, "Degree bound for the oracle target")->capture_default_str();
  rs->add_option("--seed", rs_seed, "First seed")->capture_default_str();
  rs->add_option("--budget", rs_budget, "Number of seeds to try")->capture_default_str();
  rs->add_option("--eval-budget", rs_eval, "Evaluation budget per candidate")->capture_default_str();
  rs->add_option("--target", rs_target, "oracle, square-disc or nonsquare-disc")->capture_default_str()
      ->check(CLI::IsMember({"oracle", "square-disc", "nonsquare-disc"}));
  rs->add_flag("--long-test", rs_long, "Remove the per-candidate evaluation budget");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
  }

  json cfg;
  try {
    auto file_or_stdin = [&](const std::string& path) { return read_json(path, in); };
    if (!config_path.empty()) {
      if (!app.get_subcommands().empty()) throw UsageError("--config replaces the subcommand");
      cfg = file_or_stdin(config_path);
      if (cfg.is_object() && cfg.contains("config")) cfg = cfg.at("config");
      if (format_opt->count() && cfg.is_object()) cfg["format"] = format;
      return execute(cfg, out, err);
    }
    if (app.get_subcommands().empty()) {
      err << app.help();
      return exit_usage;
    }
    cfg["format"] = format;
    auto random_cfg = [](const std::string& field, unsigned n, std::uint64_t seed) {
      return json{{"field", field_arg(field)}, {"n", n}, {"seed", seed}};
    };
    if (ex->parsed()) {
      cfg["subcommand"] = "excess";
      if (ex_in->count()) cfg["input"] = file_or_stdin(ex_input);
      else if (ex_fx->count()) cfg["fixture"] = ex_fixture;
      else if (ex_random) cfg["random"] = random_cfg(ex_field, ex_n, ex_seed);
      else throw UsageError("excess needs --input, --fixture or --random");
    } else if (ve->parsed()) {
      cfg["subcommand"] = "verify";
      if (ve_in->count()) cfg["input"] = file_or_stdin(ve_input);
      else if (ve_random) cfg["random"] = random_cfg(ve_field, ve_n, ve_seed);
      else throw UsageError("verify needs --input or --random");
      cfg["max_degree"] = ve_degree;
      cfg["budget"] = ve_budget;
      cfg["long_test"] = ve_long;
    } else if (re->parsed()) {
      cfg["subcommand"] = "residual";
      cfg["input"] = file_or_stdin(re_input);
    } else if (gw->parsed()) {
      cfg["subcommand"] = "gw";
      cfg["field"] = field_arg(gw_field);
      if (gw_d->count()) cfg["diag"] = parse_list_arg(gw_diag);
      if (gw_g->count()) {
        try {
          cfg["gram"] = json::parse(gw_gram);
        } catch (const json::parse_error&) {
          throw UsageError("--gram must be JSON rows, e.g. [[1,2],[2,3]]");
        }
      }
      if (!gw_compare.empty()) cfg["compare"] = parse_list_arg(gw_compare);
      cfg["transfer"] = gw_transfer;
    } else {
      cfg["subcommand"] = "random-search";
      cfg["field"] = field_arg(rs_field);
      cfg["n"] = rs_n;
      cfg["target"] = rs_target;
      cfg["max_degree"] = rs_degree;
      cfg["first_seed"] = rs_seed;
      cfg["seed_budget"] = rs_budget;
      cfg["eval_budget"] = rs_eval;
      cfg["long_test"] = rs_long;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return execute(cfg, out, err);
}

}  // namespace gwexcess::cli
