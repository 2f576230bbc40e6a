#include "gwexcess/residual.hpp"

#include <algorithm>
#include <functional>

#include "gwexcess/errors.hpp"

namespace gwexcess {

GradedIdeal ideal_power(const GradedIdeal& i, int e) {
  const Field& f = i.field();
  if (e <= 0) return GradedIdeal(f, i.nvars(), {Poly::constant(f, i.nvars(), f.one())});
  std::vector<Poly> gens;
  const auto& g = i.generators();
  std::function<void(std::size_t, int, const Poly&)> rec = [&](std::size_t from, int left, const Poly& acc) {
    if (left == 0) {
      if (std::find(gens.begin(), gens.end(), acc) == gens.end()) gens.push_back(acc);
      return;
    }
    for (std::size_t k = from; k < g.size(); ++k) rec(k, left - 1, acc * g[k]);
  };
  rec(0, e, Poly::constant(f, i.nvars(), f.one()));
  return GradedIdeal(f, i.nvars(), std::move(gens));
}

GradedIdeal ideal_product(const GradedIdeal& a, const GradedIdeal& b) {
  std::vector<Poly> gens;
  for (const auto& x : a.generators())
    for (const auto& y : b.generators()) {
      Poly p = x * y;
      if (std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(std::move(p));
    }
  return GradedIdeal(a.field(), a.nvars(), std::move(gens));
}

std::vector<std::size_t> complement_columns(const GradedSubspace& big, const GradedSubspace& small) {
  std::vector<std::size_t> out;
  GradedSubspace acc = small;
  for (std::size_t c = 0; c < big.dim(); ++c) {
    const Vector col = big.basis().column(c);
    if (acc.contains(col)) continue;
    out.push_back(c);
    acc = GradedSubspace::span(big.field(), big.nvars(), big.degree(),
                               acc.basis().hstack(Matrix::from_columns(big.field(), col.size(), {col})));
  }
  return out;
}

namespace {

// Span of R_1 * S inside R_{d+1}.
GradedSubspace times_linear(const GradedSubspace& s) {
  const Field& f = s.field();
  const std::size_t nv = s.nvars();
  Matrix cols(f, graded_basis(nv, s.degree() + 1).size(), 0);
  for (std::size_t k = 0; k < nv; ++k)
    cols = cols.hstack(multiplication_matrix(Poly::variable(f, nv, k), s.degree()) * s.basis());
  return GradedSubspace::span(f, nv, s.degree() + 1, cols);
}

// Coordinates of v in the basis columns of `b`; nullopt when v is outside.
std::optional<Vector> coordinates(const Matrix& b, const Vector& v) {
  if (b.cols() == 0) {
    for (const auto& x : v)
      if (!x.is_zero()) return std::nullopt;
    return Vector{};
  }
  return solve(b, v);
}

unsigned poly_degree(const Poly& a) {
  const auto d = a.homogeneous_degree();
  if (!d) throw InvalidArgument("generators must be nonzero homogeneous forms");
  return *d;
}

}  // namespace

// ---------------------------------------------------------------- split

GradedIdeal SplitIdeal::I_ideal() const {
  const GradedSubspace& s0 = I.front();
  return GradedIdeal(s0.field(), s0.nvars(), I_generators);
}

SplitIdeal split_ideal(const GradedIdeal& j, unsigned max_degree) {
  SplitIdeal out;
  for (unsigned d = 0; d <= max_degree; ++d) {
    SaturationPiece sp = saturation_piece(j, d);
    out.saturation_exponents.push_back(sp.exponent);
    const GradedSubspace old = d == 0 ? GradedSubspace(j.field(), j.nvars(), 0) : times_linear(out.I.back());
    if (!sp.piece.contains(old)) throw InternalInconsistency("saturation pieces are not an ideal");
    for (std::size_t c : complement_columns(sp.piece, old))
      out.I_generators.push_back(from_coefficients(j.field(), j.nvars(), d, sp.piece.basis().column(c)));
    out.I.push_back(std::move(sp.piece));
  }
  const GradedIdeal i = out.I_ideal();
  for (unsigned d = 0; d <= max_degree; ++d) out.K.push_back(ideal_quotient_piece(j, i, d));
  return out;
}

// ---------------------------------------------------------------- freeness

FreenessReport conormal_freeness_check(const GradedIdeal& j, const std::vector<GradedSubspace>& k,
                                       const std::vector<Poly>& a, unsigned max_degree) {
  const Field& f = j.field();
  const std::size_t nv = j.nvars();
  std::vector<unsigned> deg;
  for (const auto& g : a) deg.push_back(poly_degree(g));
  FreenessReport rep{true, {}};
  for (unsigned d = 0; d <= max_degree; ++d) {
    const std::size_t amb = graded_basis(nv, d).size();
    Matrix phi(f, amb, 0), kj(f, amb, 0);
    std::vector<std::size_t> offset, width;
    for (std::size_t i = 0; i < a.size(); ++i) {
      offset.push_back(phi.cols());
      if (deg[i] > d) {
        width.push_back(0);
        continue;
      }
      const unsigned e = d - deg[i];
      if (e >= k.size()) throw InvalidArgument("K is not given in degree " + std::to_string(e));
      const Matrix m = multiplication_matrix(a[i], e);
      width.push_back(m.cols());
      phi = phi.hstack(m);
      kj = kj.hstack(m * k[e].basis());
    }
    const GradedSubspace jd = ideal_piece(j, d);
    if (GradedSubspace::span(f, nv, d, phi) != jd) throw InvalidArgument("generators do not span J in degree " + std::to_string(d));
    if (phi.cols() == 0) continue;
    const GradedSubspace kjd = GradedSubspace::span(f, nv, d, kj);
    const Matrix ann = kjd.annihilator();
    const Matrix rel = ann.rows() == 0 ? Matrix::identity(f, phi.cols()) : kernel_basis(ann * phi);
    bool ok = true;
    for (std::size_t c = 0; c < rel.cols() && ok; ++c) {
      const Vector v = rel.column(c);
      for (std::size_t i = 0; i < a.size() && ok; ++i) {
        if (width[i] == 0) continue;
        const Vector part(v.begin() + offset[i], v.begin() + offset[i] + width[i]);
        ok = k[d - deg[i]].contains(part);
      }
    }
    if (!ok) {
      rep.free = false;
      rep.failing_degrees.push_back(d);
    }
  }
  return rep;
}

// ---------------------------------------------------------------- Kos'

namespace {

struct Block {
  std::vector<std::size_t> wedge;
  unsigned shift;          // internal degree of the wedge
  GradedSubspace* space;   // piece of I^{t+1-n} in degree d - shift, or null
  std::size_t offset;
};

std::vector<std::vector<std::size_t>> subsets(std::size_t s, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (cur.size() == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < s; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

GradedComplex kos_prime(const std::vector<Poly>& a, const GradedIdeal& i, int t, unsigned max_degree) {
  const Field& f = i.field();
  const std::size_t nv = i.nvars();
  const std::size_t s = a.size();
  std::vector<unsigned> deg;
  for (const auto& g : a) {
    deg.push_back(poly_degree(g));
    if (g.nvars() != nv || g.field() != f) throw FieldMismatch("generators and I live in different rings");
  }

  // powers[n] = I^{t+1-n}, pieces[n][e] its degree-e piece.
  std::vector<GradedIdeal> powers;
  for (std::size_t n = 0; n <= s; ++n) powers.push_back(ideal_power(i, t + 1 - static_cast<int>(n)));
  std::vector<std::vector<GradedSubspace>> pieces(s + 1);
  for (std::size_t n = 0; n <= s; ++n)
    for (unsigned e = 0; e <= max_degree; ++e) pieces[n].push_back(ideal_piece(powers[n], e));

  GradedComplex c{"Kos'(t=" + std::to_string(t) + ")", 0, static_cast<int>(s), {}, {}};
  for (unsigned d = 0; d <= max_degree; ++d) {
    std::vector<std::vector<Block>> blocks(s + 1);
    std::vector<std::size_t> dims(s + 1, 0);
    for (std::size_t n = 0; n <= s; ++n)
      for (auto& w : subsets(s, n)) {
        unsigned sh = 0;
        for (auto x : w) sh += deg[x];
        Block b{w, sh, sh <= d ? &pieces[n][d - sh] : nullptr, dims[n]};
        if (b.space) dims[n] += b.space->dim();
        blocks[n].push_back(std::move(b));
      }
    std::vector<Matrix> diff;
    diff.emplace_back(f, 0, dims[0]);
    for (std::size_t n = 1; n <= s; ++n) {
      Matrix m(f, dims[n - 1], dims[n]);
      for (const Block& b : blocks[n]) {
        if (!b.space) continue;
        const std::vector<Poly> basis = b.space->basis_polys();
        for (std::size_t k = 0; k < b.wedge.size(); ++k) {
          std::vector<std::size_t> face = b.wedge;
          face.erase(face.begin() + static_cast<long>(k));
          const auto tgt = std::find_if(blocks[n - 1].begin(), blocks[n - 1].end(),
                                        [&](const Block& x) { return x.wedge == face; });
          const Elem sign = k % 2 == 0 ? f.one() : -f.one();
          for (std::size_t col = 0; col < basis.size(); ++col) {
            const Poly img = a[b.wedge[k]] * basis[col];
            if (!tgt->space) throw InternalInconsistency("Koszul image in a missing block");
            const auto coords = coordinates(tgt->space->basis(), coefficient_vector(img, d - tgt->shift));
            if (!coords) throw InternalInconsistency("differential leaves the modified Koszul complex");
            for (std::size_t r = 0; r < coords->size(); ++r)
              m(tgt->offset + r, b.offset + col) += sign * (*coords)[r];
          }
        }
      }
      diff.push_back(std::move(m));
    }
    for (std::size_t n = 2; n <= s; ++n)
      if (dims[n] && dims[n - 2] && !(diff[n - 1] * diff[n]).is_zero())
        throw InternalInconsistency("d^2 != 0 in degree " + std::to_string(d));
    c.dims.push_back(std::move(dims));
    c.diff.push_back(std::move(diff));
  }
  return c;
}

HomologyTable complex_homology(const GradedComplex& c) {
  HomologyTable h;
  const std::size_t len = static_cast<std::size_t>(c.hi - c.lo + 1);
  for (std::size_t d = 0; d < c.dims.size(); ++d) {
    std::vector<std::size_t> rk(len + 1, 0);
    for (std::size_t n = 1; n < len; ++n) {
      const Matrix& m = c.diff[d][n];
      rk[n] = m.empty() ? 0 : rank(m);
    }
    std::vector<std::size_t> hd;
    for (std::size_t n = 0; n < len; ++n) hd.push_back(c.dims[d][n] - rk[n] - rk[n + 1]);
    h.homology.push_back(std::move(hd));
    h.term_dims.push_back(c.dims[d]);
  }
  return h;
}

HomologyTable kos_prime_homology(const std::vector<Poly>& a, const GradedIdeal& i, int t, unsigned max_degree) {
  return complex_homology(kos_prime(a, i, t, max_degree));
}

// ---------------------------------------------------------------- forms

ModuleForm mult_form(const GradedIdeal& j, const GradedIdeal& i, unsigned max_degree) {
  const Field& f = i.field();
  const std::size_t nv = i.nvars();
  const unsigned gi = i.max_generator_degree();
  const GradedIdeal i2 = ideal_power(i, 2), ji = ideal_product(j, i);

  ModuleForm mf;
  std::vector<unsigned> qdeg;
  std::vector<Matrix> tbasis;         // per degree: target representatives
  std::vector<GradedSubspace> jipc;   // per degree: (JI)_d
  std::vector<std::size_t> toffset;
  bool q_vanishes = false, t_vanishes = false;
  for (unsigned d = 0; d <= max_degree; ++d) {
    const GradedSubspace jd = ideal_piece(j, d), id = ideal_piece(i, d);
    if (!id.contains(jd)) throw InvalidArgument("J is not contained in I");
    const auto qc = complement_columns(id, jd);
    for (auto c : qc) {
      mf.quotient_basis.push_back(from_coefficients(f, nv, d, id.basis().column(c)));
      qdeg.push_back(d);
    }
    mf.quotient_dims.push_back(qc.size());
    if (qc.empty() && d > gi) q_vanishes = true;

    const GradedSubspace i2d = ideal_piece(i2, d);
    GradedSubspace jid = ideal_piece(ji, d);
    const auto tc = complement_columns(i2d, jid);
    toffset.push_back(mf.target_basis.size());
    tbasis.push_back(i2d.basis().select_cols(tc));
    for (auto c : tc) mf.target_basis.push_back(from_coefficients(f, nv, d, i2d.basis().column(c)));
    mf.target_dims.push_back(tc.size());
    if (tc.empty() && d > 2 * gi) t_vanishes = true;
    jipc.push_back(std::move(jid));
  }
  if (!q_vanishes || !t_vanishes)
    throw BudgetExhausted("I/J or I^2/JI does not vanish by degree " + std::to_string(max_degree));

  const std::size_t nq = mf.quotient_basis.size(), nt = mf.target_basis.size();
  mf.gram.assign(nq, std::vector<Vector>(nq, Vector(nt, f.zero())));
  for (std::size_t u = 0; u < nq; ++u)
    for (std::size_t v = u; v < nq; ++v) {
      const unsigned e = qdeg[u] + qdeg[v];
      Vector coords(nt, f.zero());
      if (e <= max_degree && tbasis[e].cols() > 0) {
        const Matrix sys = tbasis[e].hstack(jipc[e].basis());
        const auto x = coordinates(sys, coefficient_vector(mf.quotient_basis[u] * mf.quotient_basis[v], e));
        if (!x) throw InternalInconsistency("product outside I^2");
        for (std::size_t r = 0; r < tbasis[e].cols(); ++r) coords[toffset[e] + r] = (*x)[r];
      }
      mf.gram[u][v] = coords;
      mf.gram[v][u] = std::move(coords);
    }
  return mf;
}

ScalarForm scalarize(const ModuleForm& form, const Vector& lambda) {
  if (lambda.size() != form.target_basis.size()) throw InvalidArgument("lambda needs one value per target basis element");
  const std::size_t nq = form.quotient_basis.size();
  if (nq == 0) throw InvalidArgument("empty module form");
  const Field& f = form.quotient_basis.front().field();
  Matrix g(f, nq, nq);
  for (std::size_t u = 0; u < nq; ++u)
    for (std::size_t v = 0; v < nq; ++v) {
      Elem s = f.zero();
      for (std::size_t k = 0; k < lambda.size(); ++k) s += lambda[k] * form.gram[u][v][k];
      g(u, v) = s;
    }
  GramClass gc = from_gram(g);
  return ScalarForm{std::move(g), std::move(gc.cls), gc.radical_dim, gc.radical_dim == 0};
}

}  // namespace gwexcess
