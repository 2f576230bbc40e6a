#include "gwexcess/points.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "gwexcess/errors.hpp"

namespace gwexcess {

// ---------------------------------------------------------------- TableField

TableField::TableField(Field k) : field_(std::move(k)) {
  if (!field_.is_finite()) throw InvalidArgument("TableField needs a finite field");
  const mpz_class order = field_.order();
  if (order > max_order) throw InvalidArgument("TableField: field of order " + order.get_str() + " is too large");
  p_ = field_.characteristic();
  q_ = static_cast<std::uint32_t>(order.get_ui());
  const unsigned m = field_.degree();

  std::vector<std::vector<std::uint32_t>> digits(q_, std::vector<std::uint32_t>(m));
  for (std::uint32_t a = 0; a < q_; ++a) {
    std::uint32_t r = a;
    for (unsigned i = 0; i < m; ++i, r /= p_) digits[a][i] = r % p_;
  }
  auto compose = [&](const std::vector<std::uint32_t>& d) {
    std::uint32_t v = 0;
    for (unsigned i = m; i-- > 0;) v = v * p_ + d[i];
    return static_cast<E>(v);
  };
  add_.resize(static_cast<std::size_t>(q_) * q_);
  neg_.resize(q_);
  std::vector<std::uint32_t> d(m);
  for (std::uint32_t a = 0; a < q_; ++a) {
    for (unsigned i = 0; i < m; ++i) d[i] = (p_ - digits[a][i]) % p_;
    neg_[a] = compose(d);
    for (std::uint32_t b = 0; b < q_; ++b) {
      for (unsigned i = 0; i < m; ++i) d[i] = (digits[a][i] + digits[b][i]) % p_;
      add_[a * q_ + b] = compose(d);
    }
  }

  exp_.assign(2 * static_cast<std::size_t>(q_ - 1), 0);
  log_.assign(q_, 0);
  bool found = false;
  for (std::uint32_t g = 1; g < q_ && !found; ++g) {
    const Elem ge = elem(static_cast<E>(g));
    Elem x = field_.one();
    std::uint32_t k = 0;
    do {
      exp_[k] = static_cast<E>(x.index());
      x *= ge;
      ++k;
    } while (!x.is_one() && k < q_ - 1);
    found = x.is_one() && k == q_ - 1;
  }
  if (!found) throw InternalInconsistency("no primitive element found");
  for (std::uint32_t k = 0; k < q_ - 1; ++k) {
    log_[exp_[k]] = static_cast<E>(k);
    exp_[k + q_ - 1] = exp_[k];
  }

  frob_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) frob_[a] = static_cast<E>(frobenius(elem(static_cast<E>(a))).index());
}

std::shared_ptr<const TableField> TableField::get(std::uint64_t p, unsigned d) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, unsigned>, std::shared_ptr<const TableField>> cache;
  const std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, d}];
  if (!slot) slot = std::make_shared<const TableField>(build_extension(p, d, 0));
  return slot;
}

// ---------------------------------------------------------------- helpers

namespace {

struct CompiledTerm {
  std::vector<std::uint8_t> vars;  // with repetition
  std::uint64_t coef;              // prime-field residue
};
using CompiledPoly = std::vector<CompiledTerm>;

struct System {
  Field base;
  unsigned n;  // quadric count; n + 1 variables
  std::vector<CompiledPoly> polys;
};

System compile(const std::vector<Poly>& quadrics) {
  if (quadrics.empty()) throw InvalidArgument("no quadrics given");
  const Field base = quadrics.front().field();
  if (base.kind() != FieldKind::prime_finite) throw InvalidArgument("the point oracle needs a prime base field");
  const std::size_t nvars = quadrics.front().nvars();
  if (nvars != quadrics.size() + 1) throw InvalidArgument("need n quadrics in n + 1 variables");
  if (nvars < 4 || nvars > 64) throw InvalidArgument("unsupported number of variables");
  System s{base, static_cast<unsigned>(quadrics.size()), {}};
  for (const auto& q : quadrics) {
    if (q.field() != base || q.nvars() != nvars) throw FieldMismatch("quadrics must share field and variables");
    if (!q.is_homogeneous()) throw InvalidArgument("quadrics must be homogeneous");
    CompiledPoly cp;
    for (const auto& [mono, c] : q.terms()) {
      CompiledTerm t{{}, c.residue()};
      for (std::size_t v = 0; v < nvars; ++v)
        for (unsigned e = 0; e < mono[v]; ++e) t.vars.push_back(static_cast<std::uint8_t>(v));
      cp.push_back(std::move(t));
    }
    s.polys.push_back(std::move(cp));
  }
  return s;
}

using Coords = std::vector<TableField::E>;

bool vanishes(const TableField& T, const CompiledPoly& f, const Coords& x) {
  TableField::E s = 0;
  for (const auto& t : f) {
    TableField::E v = T.embed(t.coef);
    for (auto var : t.vars) v = T.mul(v, x[var]);
    s = T.add(s, v);
  }
  return s == 0;
}

bool off_lambda(const Coords& x) {
  for (std::size_t j = 3; j < x.size(); ++j)
    if (x[j] != 0) return true;
  return false;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > ~std::uint64_t{0} / a) return ~std::uint64_t{0};
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > ~std::uint64_t{0} - b ? ~std::uint64_t{0} : a + b;
}

// |P^k(F_Q)| with saturation.
std::uint64_t projective_size(std::uint64_t Q, unsigned k) {
  std::uint64_t total = 0, pw = 1;
  for (unsigned i = 0; i <= k; ++i) {
    total = sat_add(total, pw);
    pw = sat_mul(pw, Q);
  }
  return total;
}

// Calls visit(x) on every normalized point of P^{len-1}(F_Q) written into
// x[offset .. offset+len), chart by chart; the other entries of x are left
// alone. Stops early when visit returns false.
template <typename Visit>
bool scan_projective(std::uint32_t Q, Coords& x, std::size_t offset, std::size_t len, Visit&& visit) {
  for (std::size_t l = 0; l < len; ++l) {
    for (std::size_t j = 0; j < len; ++j) x[offset + j] = 0;
    x[offset + l] = 1;
    for (;;) {
      if (!visit(x)) return false;
      std::size_t j = len - 1;
      while (j > l) {
        if (++x[offset + j] < Q) break;
        x[offset + j] = 0;
        --j;
      }
      if (j == l) break;
    }
  }
  return true;
}

// Size of the Frobenius orbit and whether x is its least member.
std::pair<unsigned, bool> orbit(const TableField& T, const Coords& x, unsigned bound) {
  Coords y = x;
  bool least = true;
  for (unsigned e = 1; e <= bound; ++e) {
    for (auto& c : y) c = T.frob(c);
    if (y == x) return {e, least};
    if (y < x) least = false;
  }
  return {bound + 1, false};
}

}  // namespace

std::string ClosedPoint::to_string() const {
  std::ostringstream os;
  os << "deg " << degree << " [";
  for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? ", " : "") << coords[i].to_string();
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- enumeration

Enumeration enumerate_gamma(const std::vector<Poly>& quadrics, unsigned max_degree, std::uint64_t budget) {
  const System sys = compile(quadrics);
  const std::uint64_t p = sys.base.characteristic();
  const std::size_t nv = sys.n + 1;
  Enumeration out{{}, 0, 0, false};
  for (unsigned d = 1; d <= max_degree; ++d) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < d; ++i) q = sat_mul(q, p);
    if (q > TableField::max_order) {
      out.budget_exhausted = true;
      break;
    }
    const std::uint64_t cost = projective_size(q, sys.n);
    if (sat_add(out.evaluations, cost) > budget) {
      out.budget_exhausted = true;
      break;
    }
    const auto T = TableField::get(p, d);
    std::vector<ClosedPoint> found;
    Coords x(nv, 0);
    scan_projective(T->size(), x, 0, nv, [&](const Coords& pt) {
      ++out.evaluations;
      if (!off_lambda(pt)) return true;
      for (const auto& f : sys.polys)
        if (!vanishes(*T, f, pt)) return true;
      const auto [size, least] = orbit(*T, pt, d);
      if (size != d || !least) return true;
      ClosedPoint cp{d, T->field(), {}, {}, true};
      for (auto c : pt) {
        cp.indices.push_back(c);
        cp.coords.push_back(T->elem(c));
      }
      found.push_back(std::move(cp));
      return true;
    });
    std::sort(found.begin(), found.end(),
              [](const ClosedPoint& a, const ClosedPoint& b) { return a.indices < b.indices; });
    for (auto& cp : found) {
      for (const auto& q : quadrics)
        if (!q.evaluate(cp.coords).is_zero()) throw InternalInconsistency("enumerated point is not a zero");
      if (std::all_of(cp.coords.begin() + 3, cp.coords.end(), [](const Elem& e) { return e.is_zero(); }))
        throw InternalInconsistency("enumerated point lies on the plane");
      out.points.push_back(std::move(cp));
    }
    out.degrees_scanned = d;
  }
  return out;
}

// ---------------------------------------------------------------- local index

LocalIndex local_index(const ClosedPoint& p, const std::vector<Poly>& quadrics, std::optional<std::size_t> chart) {
  const std::size_t nv = p.coords.size();
  if (quadrics.size() + 1 != nv) throw InvalidArgument("need n quadrics in n + 1 variables");
  std::size_t l = 0;
  if (chart) {
    l = *chart;
    if (l >= nv || p.coords[l].is_zero()) throw InvalidArgument("chart coordinate vanishes at the point");
  } else {
    while (l < nv && p.coords[l].is_zero()) ++l;
    if (l == nv) throw InvalidArgument("the zero vector is not a point");
  }
  const Field& K = p.field;
  const Elem scale = p.coords[l].inv();
  Vector y;
  for (const auto& c : p.coords) y.push_back(c * scale);
  const Elem sign = (l % 2 == 0) ? K.one() : -K.one();

  const std::size_t n = quadrics.size();
  Matrix J(K, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!quadrics[i].evaluate(y).is_zero()) throw InvalidArgument("local_index: not a zero of the quadrics");
    std::size_t col = 0;
    for (std::size_t j = 0; j < nv; ++j) {
      if (j == l) continue;
      Elem v = quadrics[i].partial_derivative(j).evaluate(y);
      if (j == 0) v *= sign;
      J(i, col++) = v;
    }
  }
  const Elem jac = determinant(J);
  LocalIndex li{l, jac, !jac.is_zero(), std::nullopt};
  if (li.etale) li.index = GWClass::diagonal(K, {jac});
  return li;
}

bool chart_independent(const ClosedPoint& p, const std::vector<Poly>& quadrics) {
  std::optional<GWClass> ref;
  bool ref_etale = false, first = true;
  for (std::size_t l = 0; l < p.coords.size(); ++l) {
    if (p.coords[l].is_zero()) continue;
    const LocalIndex li = local_index(p, quadrics, l);
    if (first) {
      first = false;
      ref_etale = li.etale;
      if (li.etale) ref = transfer(*li.index);
      continue;
    }
    if (li.etale != ref_etale) return false;
    if (li.etale && is_equal(transfer(*li.index), *ref) != Comparison::equal) return false;
  }
  return true;
}

// ---------------------------------------------------------------- verdict

std::string to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::verified: return "verified";
    case OracleStatus::failed: return "failed";
    case OracleStatus::incomplete: return "incomplete";
  }
  return "?";
}

long long expected_gamma_rank(unsigned n) { return (1LL << n) - expected_euler_rank(n); }

OracleVerdict verify_theorem(const std::vector<Poly>& quadrics, const ExcessReport& report, unsigned max_degree,
                             std::uint64_t budget) {
  const Field& F = report.input.field;
  if (quadrics.size() != report.input.n) throw InvalidArgument("quadric count differs from the report's n");
  if (!(quadrics_to_M(quadrics) == report.input.M)) throw InvalidArgument("quadrics do not match the report's M");

  Enumeration en = enumerate_gamma(quadrics, max_degree, budget);
  OracleVerdict v{OracleStatus::incomplete, {}, 0, expected_gamma_rank(report.input.n), GWClass(F), report.rhs,
                  Comparison::unknown, {}, ""};
  bool all_etale = true, charts_ok = true;
  std::ostringstream diag;
  for (auto& cp : en.points) {
    LocalIndex li = local_index(cp, quadrics);
    FoundPoint fp{std::move(cp), std::move(li), std::nullopt, true};
    v.found_rank += fp.point.degree;
    if (!fp.index.etale) {
      all_etale = false;
      diag << "non-etale zero " << fp.point.to_string() << "; ";
    } else {
      fp.transferred = transfer(*fp.index.index);
      v.lhs += *fp.transferred;
      fp.chart_independent = chart_independent(fp.point, quadrics);
      if (!fp.chart_independent) {
        charts_ok = false;
        diag << "chart-dependent index at " << fp.point.to_string() << "; ";
      }
    }
    v.found_points.push_back(std::move(fp));
  }
  en.points.clear();
  v.enumeration = std::move(en);
  v.comparison = is_equal(v.lhs, v.rhs);

  if (!all_etale || !charts_ok) {
    v.status = OracleStatus::failed;
  } else if (v.found_rank > v.expected_rank) {
    v.status = OracleStatus::failed;
    diag << "found rank " << v.found_rank << " exceeds " << v.expected_rank << "; ";
  } else if (v.found_rank == v.expected_rank) {
    if (v.comparison == Comparison::equal) {
      v.status = OracleStatus::verified;
    } else {
      v.status = OracleStatus::failed;
      diag << "sum of indices differs from the predicted class; ";
    }
  } else {
    v.status = OracleStatus::incomplete;
    diag << "found rank " << v.found_rank << " of " << v.expected_rank;
    if (v.enumeration.budget_exhausted) diag << " (budget exhausted after degree " << v.enumeration.degrees_scanned << ")";
    diag << "; ";
  }
  v.diagnosis = diag.str();
  if (v.diagnosis.size() >= 2) v.diagnosis.resize(v.diagnosis.size() - 2);
  return v;
}

// ---------------------------------------------------------------- fiber screen

namespace {

// Q_i = sum_{v,a} lin[(i*(n-2)+v)*3+a] x_a x_{v+3} + sum quad terms.
struct RawSystem {
  unsigned n;
  std::uint64_t p;
  std::vector<std::uint64_t> lin;
  struct Quad {
    std::uint8_t i, j, k;
    std::uint64_t c;
  };
  std::vector<Quad> quad;
};

RawSystem raw_from_quadrics(const std::vector<Poly>& quadrics) {
  const System sys = compile(quadrics);
  const unsigned n = sys.n;
  RawSystem r{n, sys.base.characteristic(), std::vector<std::uint64_t>(static_cast<std::size_t>(n) * (n - 2) * 3, 0), {}};
  for (unsigned i = 0; i < n; ++i)
    for (const auto& t : sys.polys[i]) {
      if (t.vars.size() != 2) throw InvalidArgument("quadrics must have degree 2");
      const auto a = std::min(t.vars[0], t.vars[1]), b = std::max(t.vars[0], t.vars[1]);
      if (b < 3) throw InadmissibleInput("a quadric does not vanish on the plane");
      if (a < 3) {
        r.lin[(static_cast<std::size_t>(i) * (n - 2) + (b - 3)) * 3 + a] = t.coef;
      } else {
        r.quad.push_back({static_cast<std::uint8_t>(i), a, b, t.coef});
      }
    }
  return r;
}

RawSystem raw_from_draw(std::uint64_t p, const QuadricDraw& d) {
  RawSystem r{d.n, p, d.linear, {}};
  std::size_t k = 0;
  for (unsigned i = 0; i < d.n; ++i)
    for (unsigned j = 3; j <= d.n; ++j)
      for (unsigned l = j; l <= d.n; ++l) {
        const std::uint64_t c = d.quadratic[k++];
        if (c != 0)
          r.quad.push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j), static_cast<std::uint8_t>(l), c});
      }
  return r;
}

int mobius(unsigned k) {
  int mu = 1;
  for (unsigned f = 2; f * f <= k; ++f) {
    if (k % f) continue;
    k /= f;
    if (k % f == 0) return 0;
    mu = -mu;
  }
  return k > 1 ? -mu : mu;
}

std::vector<long long> exact_counts(const std::vector<std::uint64_t>& counts) {
  std::vector<long long> exact;
  for (unsigned d = 1; d <= counts.size(); ++d) {
    long long s = 0;
    for (unsigned e = 1; e <= d; ++e)
      if (d % e == 0) s += mobius(d / e) * static_cast<long long>(counts[e - 1]);
    if (s % d != 0 || s < 0) throw InternalInconsistency("point counts are not Frobenius-consistent");
    exact.push_back(s / d);
  }
  return exact;
}

// With a target, stops after degree max_degree - 1 once the remaining
// degree can no longer be made up by points of degree max_degree.
FiberScreen screen_raw(const RawSystem& r, unsigned max_degree, std::optional<long long> target = std::nullopt) {
  using E = TableField::E;
  const unsigned n = r.n;
  FiberScreen out{true, false, {}, {}, 0};
  for (unsigned e = 1; e <= max_degree; ++e) {
    const auto T = TableField::get(r.p, e);
    std::uint64_t count = 0;
    Coords t(n + 1, 0);
    std::vector<E> A(static_cast<std::size_t>(n) * 4);
    scan_projective(T->size(), t, 3, n - 2, [&](const Coords& x) {
      for (unsigned i = 0; i < n; ++i) {
        for (unsigned a = 0; a < 3; ++a) {
          E s = 0;
          for (unsigned v = 0; v < n - 2; ++v)
            s = T->add(s, T->mul(T->embed(r.lin[(static_cast<std::size_t>(i) * (n - 2) + v) * 3 + a]), x[v + 3]));
          A[i * 4 + a] = s;
        }
        A[i * 4 + 3] = 0;
      }
      for (const auto& qd : r.quad)
        A[qd.i * 4 + 3] = T->sub(A[qd.i * 4 + 3], T->mul(T->embed(qd.c), T->mul(x[qd.j], x[qd.k])));
      // Row reduce the n x 4 augmented matrix.
      unsigned rank = 0;
      for (unsigned col = 0; col < 4 && rank < n; ++col) {
        unsigned piv = rank;
        while (piv < n && A[piv * 4 + col] == 0) ++piv;
        if (piv == n) continue;
        for (unsigned c = 0; c < 4; ++c) std::swap(A[rank * 4 + c], A[piv * 4 + c]);
        const E iv = T->inv(A[rank * 4 + col]);
        for (unsigned c = col; c < 4; ++c) A[rank * 4 + c] = T->mul(A[rank * 4 + c], iv);
        for (unsigned i = 0; i < n; ++i) {
          if (i == rank || A[i * 4 + col] == 0) continue;
          const E f = A[i * 4 + col];
          for (unsigned c = col; c < 4; ++c) A[i * 4 + c] = T->sub(A[i * 4 + c], T->mul(f, A[rank * 4 + c]));
        }
        if (col == 3) return true;  // inconsistent
        ++rank;
      }
      if (rank < 3) {
        out.finite = false;
        return false;
      }
      ++count;
      return true;
    });
    if (!out.finite) return out;
    out.counts.push_back(count);
    if (target && e + 1 == max_degree) {
      long long partial = 0;
      const std::vector<long long> ex = exact_counts(out.counts);
      for (unsigned d = 1; d <= ex.size(); ++d) partial += d * ex[d - 1];
      const long long rest = *target - partial;
      if (rest < 0 || rest % max_degree != 0) {
        out.pruned = true;
        break;
      }
    }
  }
  out.exact = exact_counts(out.counts);
  for (unsigned d = 1; d <= out.exact.size(); ++d) out.degree_total += d * out.exact[d - 1];
  return out;
}

}  // namespace

FiberScreen screen_fibers(const std::vector<Poly>& quadrics, unsigned max_degree) {
  return screen_raw(raw_from_quadrics(quadrics), max_degree);
}

// ---------------------------------------------------------------- search

SearchResult random_search(const SearchOptions& opt, const std::function<void(const SearchCandidate&)>& on_candidate) {
  if (!is_prime(opt.p) || opt.p == 2) throw InvalidArgument("random search needs an odd prime");
  if (opt.n < 3 || opt.n % 2 == 0) throw InvalidArgument("n must be odd and at least 3");
  const Field F = Field::prime(opt.p);
  const long long expected = expected_gamma_rank(opt.n);
  SearchResult res{std::nullopt, 0, 0, 0, {}, false};
  for (std::uint64_t k = 0; k < opt.seed_budget; ++k) {
    const std::uint64_t seed = opt.first_seed + k;
    ++res.seeds_tried;
    std::mt19937_64 rng(seed);
    const QuadricDraw draw = draw_quadric_indices(opt.p, opt.n, rng);
    SearchCandidate cand{seed, true, screen_raw(raw_from_draw(opt.p, draw), opt.max_degree, expected), std::nullopt};
    if (!cand.screen->finite || cand.screen->pruned || cand.screen->degree_total != expected) {
      ++res.screened_out;
      if (on_candidate) on_candidate(cand);
      continue;
    }
    const std::vector<Poly> quadrics = quadrics_from_draw(F, draw);
    const ExcessInput in{F, opt.n, quadrics_to_M(quadrics)};
    if (!cover_check(principal_minors(in).f).ok) {
      cand.admissible = false;
      ++res.inadmissible;
      if (on_candidate) on_candidate(cand);
      continue;
    }
    cand.verdict = verify_theorem(quadrics, run_excess(in), opt.max_degree, opt.evaluation_budget);
    if (on_candidate) on_candidate(cand);
    const bool hit = cand.verdict->status == OracleStatus::verified;
    res.candidates.push_back(std::move(cand));
    if (hit) {
      res.found_seed = seed;
      return res;
    }
  }
  res.exhausted = true;
  return res;
}

}  // namespace gwexcess
