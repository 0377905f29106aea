#include "nvaw/products.hpp"

#include <functional>
#include <set>
#include <stdexcept>

#include "nvaw/errors.hpp"
#include "nvaw/linear_solve.hpp"

namespace nvaw {

namespace {

const std::vector<std::string> kX{"x"};
const std::vector<std::string> kX1X2{"x1", "x2"};

// Forms in the ambient variables (x1, x2) = indices (0, 1).
const LinearForm kAtX1 = LinearForm::var(0);
const LinearForm kAtX2 = LinearForm::var(1);
const LinearForm kX1MinusX2 = LinearForm::sum(0, 1, 1, -1);       // expanded in x2
const LinearForm kX2MinusX1 = LinearForm::sum(1, 1, 0, -1);       // expanded in x1
const LinearForm kMinusX2PlusX1 = LinearForm::sum(1, -1, 0, 1);   // expanded in x1
const LinearForm kAtX = LinearForm::var(0);
const LinearForm kAtMinusX = LinearForm::var(0, -1);

std::string lbl(const Space& s, int i) { return s.label(static_cast<std::size_t>(i)); }

bool no_negative_powers(const SeriesVector& v) {
  for (const auto& [i, s] : v.entries()) {
    if (s.is_zero() && s.exact()) continue;
    const SupportBound b = s.support_bound(0);
    if (!b.floor || *b.floor < 0) return false;
  }
  return true;
}

bool known_floors(const SeriesVector& v) {
  for (const auto& [i, s] : v.entries()) {
    if (s.exact()) continue;
    for (std::size_t k = 0; k < s.arity(); ++k)
      if (!s.support_bound(k).floor) return false;
  }
  return true;
}

/// Constant-term part of a one-variable vector, as a constant vector.
SeriesVector constant_term(const SeriesVector& v) {
  SeriesVector out(v.spaces(), {}, Window());
  for (const auto& [i, s] : v.entries()) out.add(i, Series::constant(s.coefficient(Exponent{})));
  return out;
}

/// m(in) = constant term of v.
void set_constant_terms(SeriesMap& m, const IndexTuple& in, const SeriesVector& v) {
  for (const auto& [o, s] : v.entries()) {
    const ExactScalar c = s.coefficient(Exponent{});
    if (c != 0) m.set(in, o, Series::constant(c));
  }
}

SeriesMap embedding(const Space& from, const Space& product, const std::function<int(int)>& index) {
  SeriesMap e = SeriesMap::constant_map({from}, {product});
  for (int i = 0; i < static_cast<int>(from.dimension()); ++i) e.set({i}, {index(i)}, Series::constant(1));
  return e;
}

// Y_P(u⊗v, x)(u'⊗v') = (Y(x)⊗Y(x)) T^{23}(-x), with T the twist table.
SeriesMap product_vertex_map(const Nva& u, const Nva& v, const SeriesMap& twist, const Space& p, const Window& w) {
  SeriesMap y({p, p}, {p}, kX, w);
  const auto pairs = all_indices({u.space, v.space});
  for (const auto& a : pairs)
    for (const auto& b : pairs) {
      SeriesVector s = SeriesVector::basis({u.space, v.space, u.space, v.space}, kX, w, {a[0], a[1], b[0], b[1]});
      s = apply(twist, {1, 2}, kAtMinusX, s);
      s = apply(u.y, {0, 1}, kAtX, s);
      s = apply(v.y, {1, 2}, kAtX, s);
      const IndexTuple in{product_index(v.space, a[0], a[1]), product_index(v.space, b[0], b[1])};
      for (const auto& [o, c] : s.entries()) y.set(in, {product_index(v.space, o[0], o[1])}, c);
    }
  return y;
}

ProductNva assemble(const TwistOp& t, Provenance prov, const CheckOptions& opts) {
  const Space p = product_space(t.u.space, t.v.space);
  ProductNva out;
  out.u = t.u;
  out.v = t.v;
  out.provenance = prov;
  out.twist = t;
  out.algebra = make_nva(p.name(), p, p.label(static_cast<std::size_t>(product_index(t.v.space, t.u.vacuum, t.v.vacuum))),
                         product_vertex_map(t.u, t.v, t.r, p, opts.window(1)));
  out.embed_u = embedding(t.u.space, p, [&](int i) { return product_index(t.v.space, i, t.v.vacuum); });
  out.embed_v = embedding(t.v.space, p, [&](int j) { return product_index(t.v.space, t.u.vacuum, j); });
  return out;
}

TwistOp with_inverse(const TwistOp& t, const CheckOptions& opts) { return t.inverse ? t : invert_twisting(t, opts); }

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Ordinary: return "ordinary";
    case Provenance::Twisted: return "twisted";
    case Provenance::Smash: return "smash";
  }
  return "?";
}

ProductNva build_ordinary_tensor(const Nva& u, const Nva& v, const CheckOptions& opts) {
  return assemble(flip_twist(u, v, opts.window(1)), Provenance::Ordinary, opts);
}

ProductNva assemble_twisted_tensor(const TwistOp& r, const CheckOptions& opts) {
  return assemble(r, Provenance::Twisted, opts);
}

ProductNva build_twisted_tensor(const TwistOp& r, const CheckOptions& opts) {
  const CheckReport axioms = check_twisting_axioms(r, opts);
  if (!axioms.passed()) {
    for (const auto& res : axioms.results)
      if (!is_pass(res.verdict)) throw PreconditionFail("twisting axioms", res.identity + " at " + res.witness);
  }
  return assemble(r, Provenance::Twisted, opts);
}

// ---------------------------------------------------------------------------------------------

CheckReport check_product_properties(const ProductNva& p, const CheckOptions& opts) {
  CheckReport report{"product-props", opts.window(1), opts.kmax, {}, {}};
  const Window w = opts.window(1);
  const Space& U = p.u.space;
  const Space& V = p.v.space;
  const Space& P = p.algebra.space;

  IdentityCheck dsum("product D: D = D⊗1 + 1⊗D");
  SeriesMap dp, expected;
  try {
    dp = compute_D(p.algebra);
    const SeriesMap du = compute_D(p.u), dv = compute_D(p.v);
    const SeriesMap inner = tensor(du, SeriesMap::identity({V})) + tensor(SeriesMap::identity({U}), dv);
    expected = compose(SeriesMap::fuse(U, V), compose(inner, SeriesMap::split(U, V)));
    const MapEquality eq = map_equal(dp, expected, Window());
    dsum.record(eq.column ? index_label({P}, *eq.column) : "all columns", {P}, eq.result);
  } catch (const PreconditionFail& e) {
    dsum.record(e.witness(), Verdict::Fail, e.what());
    dsum.finish(report);
    return report;
  }
  dsum.finish(report);

  IdentityCheck regular("product regularity: Y(u⊗1,x)(1⊗v) has no negative powers");
  IdentityCheck unit("product basis: u⊗v = (u⊗1)_{-1}(1⊗v)");
  IdentityCheck skew("product skew symmetry: Y(1⊗v,x)(u⊗1) = exp(xD) Y(-x) R(-x)(v⊗u)");
  const SeriesMap exd = exp_xD(dp, w);
  for (int u = 0; u < static_cast<int>(U.dimension()); ++u)
    for (int v = 0; v < static_cast<int>(V.dimension()); ++v) {
      const std::string label = lbl(U, u) + "," + lbl(V, v);
      const int pu = product_index(V, u, p.v.vacuum), pv = product_index(V, p.u.vacuum, v);
      const SeriesVector uv = vertex_image(p.algebra, pu, pv, w);
      const bool ok = no_negative_powers(uv);
      regular.record(label, ok ? (uv.exact() ? Verdict::ExactPass : Verdict::WindowPass) : Verdict::Fail,
                     ok ? "" : "negative power present");
      const SeriesVector basis = SeriesVector::basis({P}, {}, Window(), {product_index(V, u, v)});
      VectorEquality eq = vector_equal(constant_term(uv), basis, Window());
      if (eq.holds() && !uv.exact()) eq.kind = CertifiedEquality::Kind::EqualUpToWindow;
      unit.record(label, {P}, eq);

      const SeriesVector lhs = vertex_image(p.algebra, pv, pu, w);
      SeriesVector rhs = SeriesVector::basis({V, U}, kX, w, {v, u});
      rhs = apply(p.twist.r, {0, 1}, kAtMinusX, rhs);
      rhs = apply(p.embed_v, {1}, apply(p.embed_u, {0}, rhs));
      rhs = apply(p.algebra.y, {0, 1}, kAtMinusX, rhs);
      rhs = apply(exd, {0}, kAtX, rhs);
      skew.record(lbl(V, v) + "," + lbl(U, u), {P}, vector_equal(lhs, rhs, w));
    }
  regular.finish(report);
  skew.finish(report);
  unit.finish(report);
  return report;
}

CheckReport check_invertible_relations(const ProductNva& p, const CheckOptions& opts) {
  CheckReport report{"product-relations", opts.window(2), opts.kmax, {}, {}};
  const TwistOp t = with_inverse(p.twist, opts);
  const SeriesMap& rinv = *t.inverse;
  const Window w1 = opts.window(1), w2 = opts.window(2);
  const Space& U = p.u.space;
  const Space& V = p.v.space;
  const Space& P = p.algebra.space;
  const SeriesMap exd = exp_xD(compute_D(p.algebra), w1);

  IdentityCheck skew("inverse skew symmetry: Y(u⊗1,x)(1⊗v) = exp(xD) Y(-x) R^{-1}(x)(u⊗v)");
  for (int u = 0; u < static_cast<int>(U.dimension()); ++u)
    for (int v = 0; v < static_cast<int>(V.dimension()); ++v) {
      const int pu = product_index(V, u, p.v.vacuum), pv = product_index(V, p.u.vacuum, v);
      const SeriesVector lhs = vertex_image(p.algebra, pu, pv, w1);
      SeriesVector rhs = apply(rinv, {0, 1}, kAtX, SeriesVector::basis({U, V}, kX, w1, {u, v}));
      rhs = apply(p.embed_u, {1}, apply(p.embed_v, {0}, rhs));
      rhs = apply(p.algebra.y, {0, 1}, kAtMinusX, rhs);
      rhs = apply(exd, {0}, kAtX, rhs);
      skew.record(lbl(U, u) + "," + lbl(V, v), {P}, vector_equal(lhs, rhs, w1));
    }
  skew.finish(report);

  IdentityCheck comm("commutation: Y(u,x1)Y(v,x2)w = Y(x2)(1⊗Y(x1))(R^{-1})12(-x2+x1)(u⊗v⊗w)");
  IdentityCheck kcomm("k-witnessed commutation: (x1-x2)^k Y(v,x1)Y(u,x2)w = (x1-x2)^k Y(x2)(1⊗Y(x1))R12(x2-x1)(v⊗u⊗w)");
  for (int u = 0; u < static_cast<int>(U.dimension()); ++u)
    for (int v = 0; v < static_cast<int>(V.dimension()); ++v)
      for (int w = 0; w < static_cast<int>(P.dimension()); ++w) {
        const std::string label = lbl(U, u) + "," + lbl(V, v) + "," + lbl(P, w);
        {
          const SeriesVector start = SeriesVector::basis({U, V, P}, kX1X2, w2, {u, v, w});
          SeriesVector lhs = apply(p.embed_v, {1}, start);
          lhs = apply(p.algebra.y, {1, 2}, kAtX2, lhs);
          lhs = apply(p.embed_u, {0}, lhs);
          lhs = apply(p.algebra.y, {0, 1}, kAtX1, lhs);
          SeriesVector rhs = apply(rinv, {0, 1}, kMinusX2PlusX1, start);
          rhs = apply(p.embed_u, {1}, apply(p.embed_v, {0}, rhs));
          rhs = apply(p.algebra.y, {1, 2}, kAtX1, rhs);
          rhs = apply(p.algebra.y, {0, 1}, kAtX2, rhs);
          comm.record(label, {P}, vector_equal(lhs, rhs, w2));
        }
        const SeriesVector start = SeriesVector::basis({V, U, P}, kX1X2, w2, {v, u, w});
        SeriesVector base = apply(p.embed_u, {1}, start);
        base = apply(p.algebra.y, {1, 2}, kAtX2, base);
        base = apply(p.embed_v, {0}, base);
        base = apply(p.algebra.y, {0, 1}, kAtX1, base);
        VectorEquality last;
        const auto k = search_k(
            opts.kmax,
            [&](int kk) {
              const SeriesVector lhs = power_of_form(kX1MinusX2, kk, kX1X2, w2) * base;
              SeriesVector rhs = apply(p.twist.r, {0, 1}, kX2MinusX1, start, kk);
              rhs = apply(p.embed_v, {1}, rhs);
              rhs = apply(p.algebra.y, {1, 2}, kAtX1, rhs);
              rhs = apply(p.embed_u, {0}, rhs);
              rhs = apply(p.algebra.y, {0, 1}, kAtX2, rhs);
              if (kk % 2 != 0) rhs = ExactScalar(-1) * rhs;
              return vector_equal(lhs, rhs, w2);
            },
            last);
        if (k) {
          kcomm.record_k(label, *k);
          kcomm.record(label, {P}, last);
        } else {
          kcomm.record(label, Verdict::NoKFound, describe_failure({P}, last, 2));
        }
      }
  comm.finish(report);
  kcomm.finish(report);
  return report;
}

// ---------------------------------------------------------------------------------------------

UniversalMap universal_map(const ProductNva& p, const Nva& k, const SeriesMap& psi1, const SeriesMap& psi2,
                           const CheckOptions& opts) {
  const Window w = opts.window(1);
  const Space& U = p.u.space;
  const Space& V = p.v.space;
  const Space& K = k.space;
  for (const auto& [psi, src, tag] : {std::tuple{&psi1, &p.u, "psi1"}, std::tuple{&psi2, &p.v, "psi2"}}) {
    const CheckReport h = check_homomorphism(*src, k, *psi, tag, opts);
    for (const auto& r : h.results)
      if (!is_pass(r.verdict)) throw PreconditionFail("homomorphism", std::string(tag) + " at " + r.witness);
  }
  const SeriesMap exd = exp_xD(compute_D(k), w);
  UniversalMap out{SeriesMap::constant_map({p.algebra.space}, {K}), {"universal-map", w, opts.kmax, {}, {}}};
  for (int u = 0; u < static_cast<int>(U.dimension()); ++u)
    for (int v = 0; v < static_cast<int>(V.dimension()); ++v) {
      const std::string pair = lbl(U, u) + "," + lbl(V, v);
      SeriesVector uv = SeriesVector::basis({U, V}, kX, w, {u, v});
      uv = apply(psi2, {1}, apply(psi1, {0}, uv));
      uv = apply(k.y, {0, 1}, kAtX, uv);
      if (!no_negative_powers(uv)) throw PreconditionFail("regularity", pair);

      SeriesVector lhs = SeriesVector::basis({V, U}, kX, w, {v, u});
      lhs = apply(psi1, {1}, apply(psi2, {0}, lhs));
      lhs = apply(k.y, {0, 1}, kAtX, lhs);
      SeriesVector rhs = apply(p.twist.r, {0, 1}, kAtMinusX, SeriesVector::basis({V, U}, kX, w, {v, u}));
      rhs = apply(psi2, {1}, apply(psi1, {0}, rhs));
      rhs = apply(k.y, {0, 1}, kAtMinusX, rhs);
      rhs = apply(exd, {0}, kAtX, rhs);
      if (!vector_equal(lhs, rhs, w).holds()) throw PreconditionFail("skew", lbl(V, v) + "," + lbl(U, u));

      set_constant_terms(out.psi, {product_index(V, u, v)}, uv);
    }
  out.report.merge(check_homomorphism(p.algebra, k, out.psi, "universal map", opts));
  IdentityCheck ext1("universal map extends psi1");
  IdentityCheck ext2("universal map extends psi2");
  const MapEquality e1 = map_equal(compose(out.psi, p.embed_u), psi1, Window());
  const MapEquality e2 = map_equal(compose(out.psi, p.embed_v), psi2, Window());
  ext1.record(e1.column ? index_label({U}, *e1.column) : "all", {K}, e1.result);
  ext2.record(e2.column ? index_label({V}, *e2.column) : "all", {K}, e2.result);
  ext1.finish(out.report);
  ext2.finish(out.report);
  return out;
}

FlipIsomorphism flip_iso(const ProductNva& p, const CheckOptions& opts) {
  const TwistOp t = with_inverse(p.twist, opts);
  for (const auto* m : {&t.r, &*t.inverse})
    for (const auto& [i, col] : m->columns())
      for (const auto& [o, s] : col) {
        const SupportBound b = s.support_bound(0);
        if (!s.is_zero() && (!b.floor || *b.floor < 0))
          throw PreconditionFail("no poles", (m == &t.r ? "R at " : "R^{-1} at ") + index_label(m->domain(), i));
      }
  FlipIsomorphism out;
  out.reversed = build_twisted_tensor(reversed_twisting(t, opts), opts);
  const ProductNva& q = out.reversed;
  const Window w = opts.window(1);
  const Space& U = p.u.space;
  const Space& V = p.v.space;
  out.psi = SeriesMap::constant_map({q.algebra.space}, {p.algebra.space});
  out.phi = SeriesMap::constant_map({p.algebra.space}, {q.algebra.space});
  for (int v = 0; v < static_cast<int>(V.dimension()); ++v)
    for (int u = 0; u < static_cast<int>(U.dimension()); ++u) {
      const int pv = product_index(V, p.u.vacuum, v), pu = product_index(V, u, p.v.vacuum);
      set_constant_terms(out.psi, {product_index(U, v, u)}, vertex_image(p.algebra, pv, pu, w));
      // In q = V ⊗ U the U factor is second: 1⊗u and v⊗1.
      const int qu = product_index(U, q.u.vacuum, u), qv = product_index(U, v, q.v.vacuum);
      set_constant_terms(out.phi, {product_index(V, u, v)}, vertex_image(q.algebra, qu, qv, w));
    }
  out.report = CheckReport{"flip-isomorphism", w, opts.kmax, {}, {}};
  out.report.merge(check_homomorphism(q.algebra, p.algebra, out.psi, "flip isomorphism psi", opts));
  out.report.merge(check_homomorphism(p.algebra, q.algebra, out.phi, "flip isomorphism phi", opts));
  IdentityCheck left("psi∘phi = identity");
  IdentityCheck right("phi∘psi = identity");
  const MapEquality l = map_equal(compose(out.psi, out.phi), SeriesMap::identity({p.algebra.space}), Window());
  const MapEquality r = map_equal(compose(out.phi, out.psi), SeriesMap::identity({q.algebra.space}), Window());
  left.record(l.column ? index_label({p.algebra.space}, *l.column) : "all", {p.algebra.space}, l.result);
  right.record(r.column ? index_label({q.algebra.space}, *r.column) : "all", {q.algebra.space}, r.result);
  left.finish(out.report);
  right.finish(out.report);
  return out;
}

// ---------------------------------------------------------------------------------------------

namespace {

std::vector<SparseVector> matrix_columns(const SeriesMap& e) {
  std::vector<SparseVector> cols;
  for (int i = 0; i < static_cast<int>(e.domain()[0].dimension()); ++i) {
    SparseVector c;
    for (const auto& [o, s] : e.column({i})) c[static_cast<std::size_t>(o[0])] = s.coefficient(Exponent{});
    cols.push_back(std::move(c));
  }
  return cols;
}

void require_embedding(const Nva& src, const Nva& k, const SeriesMap& e, const std::string& tag,
                       const CheckOptions& opts) {
  if (!e.constant() || e.domain().size() != 1 || e.codomain().size() != 1 ||
      e.domain()[0].dimension() != src.dimension() || e.codomain()[0].dimension() != k.dimension())
    throw std::invalid_argument("embedding " + tag + " has the wrong shape");
  if (sparse_rank(matrix_columns(e)) != src.dimension()) throw PreconditionFail("injective embedding", tag);
  const CheckReport h = check_homomorphism(src, k, e, tag, opts);
  for (const auto& r : h.results)
    if (!is_pass(r.verdict)) throw PreconditionFail("embedding homomorphism", tag + " at " + r.witness);
}

}  // namespace

Nva induced_subalgebra(const Nva& k, const SeriesMap& embed, const std::string& name, const std::string& vacuum_label,
                       const CheckOptions& opts) {
  const Space& A = embed.domain().at(0);
  const std::size_t da = A.dimension();
  const auto cols = matrix_columns(embed);
  if (sparse_rank(cols) != da) throw PreconditionFail("injective embedding", name);
  const Window w = opts.window(1);
  SeriesMap y({A, A}, {A}, kX, k.y.window());
  for (const auto& idx : all_indices({A, A})) {
    SeriesVector img = apply(embed, {1}, apply(embed, {0}, SeriesVector::basis({A, A}, kX, w, idx)));
    img = apply(k.y, {0, 1}, kAtX, img);
    std::set<Exponent> exps;
    for (const auto& [i, s] : img.entries())
      for (const auto& [e, c] : s.terms()) exps.insert(e);
    std::vector<Series::Terms> terms(da);
    for (const Exponent& e : exps) {
      LinearSystem sys(da);
      for (std::size_t r = 0; r < k.dimension(); ++r) {
        SparseVector row;
        for (std::size_t c = 0; c < da; ++c) {
          auto it = cols[c].find(r);
          if (it != cols[c].end()) row[c] = it->second;
        }
        sys.add_equation(std::move(row), img.entry({static_cast<int>(r)}).coefficient(e));
      }
      const LinearSolution sol = sys.solve();
      if (sol.kind != LinearSolution::Kind::Unique) throw PreconditionFail("subalgebra", index_label({A, A}, idx));
      for (std::size_t c = 0; c < da; ++c)
        if (sol.values[c] != 0) terms[c][e] = sol.values[c];
    }
    for (std::size_t c = 0; c < da; ++c)
      if (!terms[c].empty()) y.set(idx, {static_cast<int>(c)}, Series::from_terms(kX, k.y.window(), terms[c]));
  }
  return make_nva(name, A, vacuum_label, std::move(y));
}

// ---------------------------------------------------------------------------------------------

Z2Result z2_kernel(const Nva& k, const CheckOptions& opts, const SeriesMap* restrict_left,
                   const SeriesMap* restrict_right) {
  const Space& K = k.space;
  auto basis_vectors = [&](const SeriesMap* r) {
    std::vector<SparseVector> out;
    if (!r) {
      for (std::size_t i = 0; i < K.dimension(); ++i) out.push_back(SparseVector{{i, ExactScalar(1)}});
      return out;
    }
    return matrix_columns(*r);
  };
  const auto left = basis_vectors(restrict_left), right = basis_vectors(restrict_right);
  // A window wide enough that Y(a,x1)Y(b,x2)1 is never clipped.
  const Window wide = Window::uniform(2, -(1 << 20), 1 << 20);
  std::map<std::tuple<int, int, int>, std::size_t> rows;
  std::vector<SparseVector> columns;
  for (const auto& a : left)
    for (const auto& b : right) {
      SeriesVector start({K, K, K}, kX1X2, wide);
      for (const auto& [i, ai] : a)
        for (const auto& [j, bj] : b)
          start.add({static_cast<int>(i), static_cast<int>(j), k.vacuum}, Series::constant(ai * bj));
      SeriesVector z = apply(k.y, {1, 2}, kAtX2, start);
      z = apply(k.y, {0, 1}, kAtX1, z);
      for (int i = opts.window_lo; i <= opts.window_hi; ++i)
        for (int j = opts.window_lo; j <= opts.window_hi; ++j) {
          SparseVector col;
          for (const auto& [idx, s] : z.entries())
            for (const auto& [e, c] : s.terms()) {
              const auto key = std::make_tuple(idx[0], e[0] + i, e[1] + j);
              auto it = rows.emplace(key, rows.size()).first;
              col[it->second] += c;
            }
          columns.push_back(std::move(col));
        }
    }
  Z2Result out;
  out.columns = columns.size();
  out.rank = sparse_rank(columns);
  out.kernel_rank = out.columns - out.rank;
  return out;
}

CheckReport check_Z2_injectivity(const Nva& k, const CheckOptions& opts, const SeriesMap* restrict_left,
                                 const SeriesMap* restrict_right) {
  CheckReport report{"z2-injectivity", opts.window(2), opts.kmax, {}, {}};
  const Z2Result z = z2_kernel(k, opts, restrict_left, restrict_right);
  IdentityCheck check(restrict_left || restrict_right ? "Z2 injective on the embedded pair at truncation"
                                                      : "Z2 injective at truncation");
  check.record(k.name, z.kernel_rank == 0 ? Verdict::ExactPass : Verdict::Fail,
               "kernel rank " + std::to_string(z.kernel_rank) + " of " + std::to_string(z.columns) + " columns");
  check.finish(report);
  return report;
}

// ---------------------------------------------------------------------------------------------

TwistExtraction extract_twisting(const Nva& k, const Nva& u_alg, const Nva& v_alg, const SeriesMap& eu,
                                 const SeriesMap& ev, const CheckOptions& opts) {
  require_embedding(u_alg, k, eu, "embedU", opts);
  require_embedding(v_alg, k, ev, "embedV", opts);
  const Space& U = u_alg.space;
  const Space& V = v_alg.space;
  const Space& K = k.space;
  const Window w1 = opts.window(1), w2 = opts.window(2);
  const int du = static_cast<int>(U.dimension()), dv = static_cast<int>(V.dimension());
  const int nw = opts.window_hi - opts.window_lo + 1;

  for (int u = 0; u < du; ++u)
    for (int v = 0; v < dv; ++v) {
      SeriesVector uv = apply(ev, {1}, apply(eu, {0}, SeriesVector::basis({U, V}, kX, w1, {u, v})));
      if (!no_negative_powers(apply(k.y, {0, 1}, kAtX, uv))) throw PreconditionFail("regularity", lbl(U, u) + "," + lbl(V, v));
    }

  // Z(a, b, w) = Y(a, x2) Y(b, x1) w for a in U, b in V.
  std::map<std::tuple<int, int, int>, SeriesVector> zcache;
  auto z = [&](int a, int b, int w) -> const SeriesVector& {
    auto key = std::make_tuple(a, b, w);
    auto it = zcache.find(key);
    if (it != zcache.end()) return it->second;
    SeriesVector s = SeriesVector::basis({U, V, K}, kX1X2, w2, {a, b, w});
    s = apply(ev, {1}, s);
    s = apply(k.y, {1, 2}, kAtX1, s);
    s = apply(eu, {0}, s);
    s = apply(k.y, {0, 1}, kAtX2, s);
    return zcache.emplace(key, std::move(s)).first->second;
  };
  auto unknown = [&](int a, int b, int n) {
    return static_cast<std::size_t>(((a * dv) + b) * nw + (n - opts.window_lo));
  };
  const std::size_t unknowns = static_cast<std::size_t>(du * dv * nw);

  SeriesMap table({V, U}, {U, V}, kX, w1);
  bool exact = true;
  for (int v = 0; v < dv; ++v)
    for (int u = 0; u < du; ++u) {
      const std::string pair = lbl(V, v) + "," + lbl(U, u);
      std::optional<LinearSolution> found;
      ExtractionFailure failure = ExtractionFailure::Underdetermined;
      std::string detail;
      for (int kk = 0; kk <= opts.kmax && !found; ++kk) {
        auto equations = [&](const std::vector<int>& ws) {
          std::vector<SeriesEquation> eqs;
          for (int w : ws) {
            SeriesVector lhs = SeriesVector::basis({V, U, K}, kX1X2, w2, {v, u, w});
            lhs = apply(eu, {1}, lhs);
            lhs = apply(k.y, {1, 2}, kAtX2, lhs);
            lhs = apply(ev, {0}, lhs);
            lhs = apply(k.y, {0, 1}, kAtX1, lhs);
            SeriesEquation eq{{}, power_of_form(kX1MinusX2, kk, kX1X2, w2) * lhs};
            for (int a = 0; a < du; ++a)
              for (int b = 0; b < dv; ++b) {
                const SeriesVector& zz = z(a, b, w);
                if (zz.is_exact_zero()) continue;
                for (int n = opts.window_lo; n <= opts.window_hi; ++n) {
                  Exponent e{};
                  e[0] = n;
                  Series f = substitute(Series::monomial(kX, w1, e, kk % 2 ? -1 : 1), kX2MinusX1, kX1X2, w2, kk);
                  eq.terms.emplace_back(unknown(a, b, n), f * zz);
                }
              }
            eqs.push_back(std::move(eq));
          }
          return eqs;
        };
        std::vector<int> all_w(K.dimension());
        for (int w = 0; w < static_cast<int>(K.dimension()); ++w) all_w[static_cast<std::size_t>(w)] = w;

        SeriesSolveResult r = solve_series_equations(equations({k.vacuum}), unknowns, w2);
        if (r.solution.kind == LinearSolution::Kind::Underdetermined)
          r = solve_series_equations(equations(all_w), unknowns, w2);
        if (r.solution.kind == LinearSolution::Kind::Unique) {
          // Validate against every w.
          const SeriesSolveResult check = solve_series_equations(equations(all_w), unknowns, w2);
          if (check.solution.kind == LinearSolution::Kind::Inconsistent) {
            failure = ExtractionFailure::Inconsistent;
            detail = pair + ": " + check.solution.witness;
            continue;
          }
          found = r.solution;
          exact = exact && r.exact;
        } else if (r.solution.kind == LinearSolution::Kind::Inconsistent) {
          failure = ExtractionFailure::Inconsistent;
          detail = pair + ": " + r.solution.witness;
        } else {
          failure = ExtractionFailure::Underdetermined;
          detail = pair + ": rank " + std::to_string(r.solution.rank) + ", nullity " + std::to_string(r.solution.nullity);
        }
      }
      if (!found) throw ExtractionFail(failure, detail);
      for (int a = 0; a < du; ++a)
        for (int b = 0; b < dv; ++b) {
          Series::Terms t;
          for (int n = opts.window_lo; n <= opts.window_hi; ++n) {
            const ExactScalar& c = found->values[unknown(a, b, n)];
            if (c != 0) {
              Exponent e{};
              e[0] = n;
              t[e] = c;
            }
          }
          if (!t.empty()) table.set({v, u}, {a, b}, Series::from_terms(kX, w1, t));
        }
    }

  TwistExtraction out;
  out.twist = make_twist("extracted", u_alg, v_alg, table);
  out.report = check_twisting_axioms(out.twist, opts);
  out.report.suite = "extract-twist";
  if (!out.report.passed()) {
    for (const auto& r : out.report.results)
      if (!is_pass(r.verdict)) throw ExtractionFail(ExtractionFailure::AxiomsFail, r.identity + " at " + r.witness);
  }
  if (!exact) {
    for (auto& r : out.report.results)
      if (r.verdict == Verdict::ExactPass) r.verdict = Verdict::WindowPass;
  }

  // theta(u⊗v) = u_{-1}v must be a bijective homomorphism U ⊗_R V -> K.
  const ProductNva p = assemble(out.twist, Provenance::Twisted, opts);
  SeriesMap theta = SeriesMap::constant_map({p.algebra.space}, {K});
  for (int u = 0; u < du; ++u)
    for (int v = 0; v < dv; ++v) {
      SeriesVector uv = apply(ev, {1}, apply(eu, {0}, SeriesVector::basis({U, V}, kX, w1, {u, v})));
      set_constant_terms(theta, {product_index(V, u, v)}, apply(k.y, {0, 1}, kAtX, uv));
    }
  IdentityCheck bij("theta(u⊗v) = u_{-1}v is bijective");
  const std::size_t rank = sparse_rank(matrix_columns(theta));
  bij.record(K.name(), rank == K.dimension() && rank == p.algebra.dimension() ? Verdict::ExactPass : Verdict::Fail,
             "rank " + std::to_string(rank) + ", dim K " + std::to_string(K.dimension()));
  bij.finish(out.report);
  out.report.merge(check_homomorphism(p.algebra, k, theta, "theta", opts));

  out.z2_restricted = z2_kernel(k, opts, &eu, &ev);
  out.z2_full = z2_kernel(k, opts);
  IdentityCheck z2("Z2 injective on embedU(U)⊗embedV(V) at truncation");
  z2.record(K.name(), out.z2_restricted.kernel_rank == 0 ? Verdict::ExactPass : Verdict::Fail,
            "kernel rank " + std::to_string(out.z2_restricted.kernel_rank));
  z2.finish(out.report);
  return out;
}

// ---------------------------------------------------------------------------------------------

ProductModule build_product_module(const ProductNva& p, const NvaModule& mu, const NvaModule& mv,
                                   const CheckOptions& opts) {
  if (mu.space.dimension() != mv.space.dimension()) throw std::invalid_argument("module spaces differ");
  const TwistOp t = with_inverse(p.twist, opts);
  const Space& U = p.u.space;
  const Space& V = p.v.space;
  const Space& W = mu.space;
  const Window w1 = opts.window(1), w2 = opts.window(2);
  for (int u = 0; u < static_cast<int>(U.dimension()); ++u)
    for (int v = 0; v < static_cast<int>(V.dimension()); ++v)
      for (int w = 0; w < static_cast<int>(W.dimension()); ++w) {
        const std::string label = lbl(U, u) + "," + lbl(V, v) + "," + lbl(W, w);
        const SeriesVector start = SeriesVector::basis({U, V, W}, kX1X2, w2, {u, v, w});
        const SeriesVector lhs = apply(mu.y, {0, 1}, kAtX1, apply(mv.y, {1, 2}, kAtX2, start));
        if (!known_floors(lhs)) throw PreconditionFail("regularity", label);
        SeriesVector rhs = apply(*t.inverse, {0, 1}, kMinusX2PlusX1, start);
        rhs = apply(mu.y, {1, 2}, kAtX1, rhs);
        rhs = apply(mv.y, {0, 1}, kAtX2, rhs);
        if (!vector_equal(lhs, rhs, w2).holds()) throw PreconditionFail("commutation", label);

        const SeriesVector vstart = SeriesVector::basis({V, U, W}, kX1X2, w2, {v, u, w});
        const SeriesVector base = apply(mv.y, {0, 1}, kAtX1, apply(mu.y, {1, 2}, kAtX2, vstart));
        VectorEquality last;
        const auto k = search_k(
            opts.kmax,
            [&](int kk) {
              const SeriesVector l = power_of_form(kX2MinusX1, kk, kX1X2, w2) * base;
              SeriesVector r = apply(t.r, {0, 1}, kX2MinusX1, vstart, kk);
              r = apply(mv.y, {1, 2}, kAtX1, r);
              r = apply(mu.y, {0, 1}, kAtX2, r);
              return vector_equal(l, r, w2);
            },
            last);
        if (!k) throw PreconditionFail("twisted commutation", lbl(V, v) + "," + lbl(U, u) + "," + lbl(W, w));
      }

  const Space& P = p.algebra.space;
  SeriesMap y({P, W}, {W}, kX, w1);
  for (int u = 0; u < static_cast<int>(U.dimension()); ++u)
    for (int v = 0; v < static_cast<int>(V.dimension()); ++v)
      for (int w = 0; w < static_cast<int>(W.dimension()); ++w) {
        SeriesVector s = SeriesVector::basis({U, V, W}, kX, w1, {u, v, w});
        s = apply(mu.y, {0, 1}, kAtX, apply(mv.y, {1, 2}, kAtX, s));
        for (const auto& [o, c] : s.entries()) y.set({product_index(V, u, v), w}, o, c);
      }
  ProductModule out{make_module(P.name() + "-module", p.algebra, W, std::move(y)), {}};
  out.report = check_module(out.module, ModuleForm::Original, opts);
  out.report.suite = "product-module";
  IdentityCheck ru("product module restricts to the U-module");
  IdentityCheck rv("product module restricts to the V-module");
  for (int w = 0; w < static_cast<int>(W.dimension()); ++w) {
    for (int u = 0; u < static_cast<int>(U.dimension()); ++u) {
      const SeriesVector got = apply(out.module.y, {0, 1}, kAtX,
                                     SeriesVector::basis({P, W}, kX, w1, {product_index(V, u, p.v.vacuum), w}));
      const SeriesVector want = apply(mu.y, {0, 1}, kAtX, SeriesVector::basis({U, W}, kX, w1, {u, w}));
      ru.record(lbl(U, u) + "," + lbl(W, w), {W}, vector_equal(got, want, w1));
    }
    for (int v = 0; v < static_cast<int>(V.dimension()); ++v) {
      const SeriesVector got = apply(out.module.y, {0, 1}, kAtX,
                                     SeriesVector::basis({P, W}, kX, w1, {product_index(V, p.u.vacuum, v), w}));
      const SeriesVector want = apply(mv.y, {0, 1}, kAtX, SeriesVector::basis({V, W}, kX, w1, {v, w}));
      rv.record(lbl(V, v) + "," + lbl(W, w), {W}, vector_equal(got, want, w1));
    }
  }
  ru.finish(out.report);
  rv.finish(out.report);
  return out;
}

NvaModule restrict_module(const NvaModule& m, const Nva& sub, const SeriesMap& embed, const CheckOptions& opts) {
  const Space& A = sub.space;
  const Space& W = m.space;
  const Window w = m.y.window().arity() ? m.y.window() : opts.window(1);
  SeriesMap y({A, W}, {W}, kX, w);
  for (const auto& idx : all_indices({A, W})) {
    const SeriesVector img = apply(m.y, {0, 1}, kAtX, apply(embed, {0}, SeriesVector::basis({A, W}, kX, w, idx)));
    for (const auto& [o, s] : img.entries()) y.set(idx, o, s);
  }
  return make_module(m.name + "|" + sub.name, sub, W, std::move(y));
}

CheckReport check_module_relations(const ProductNva& p, const NvaModule& m, const CheckOptions& opts) {
  CheckReport report{"module-relations", opts.window(2), opts.kmax, {}, {}};
  const Space& U = p.u.space;
  const Space& V = p.v.space;
  const Space& W = m.space;
  const Window w2 = opts.window(2);
  std::optional<TwistOp> inv;
  try {
    inv = with_inverse(p.twist, opts);
  } catch (const NotInvertible&) {
  }
  IdentityCheck regular("module regularity: Y_W(u,x1)Y_W(v,x2) has finite floors in both variables");
  IdentityCheck kcomm("module k-witnessed commutation: (x2-x1)^k Y_W(v,x1)Y_W(u,x2)w = (x2-x1)^k Y_W(x2)(1⊗Y_W(x1))R12(x2-x1)(v⊗u⊗w)");
  IdentityCheck comm("module commutation: Y_W(u,x1)Y_W(v,x2)w = Y_W(x2)(1⊗Y_W(x1))(R^{-1})12(-x2+x1)(u⊗v⊗w)");
  for (int u = 0; u < static_cast<int>(U.dimension()); ++u)
    for (int v = 0; v < static_cast<int>(V.dimension()); ++v)
      for (int w = 0; w < static_cast<int>(W.dimension()); ++w) {
        const std::string label = lbl(U, u) + "," + lbl(V, v) + "," + lbl(W, w);
        const SeriesVector start = SeriesVector::basis({U, V, W}, kX1X2, w2, {u, v, w});
        SeriesVector lhs = apply(m.y, {1, 2}, kAtX2, apply(p.embed_v, {1}, start));
        lhs = apply(m.y, {0, 1}, kAtX1, apply(p.embed_u, {0}, lhs));
        regular.record(label, known_floors(lhs) ? (lhs.exact() ? Verdict::ExactPass : Verdict::WindowPass) : Verdict::Fail);
        if (inv) {
          SeriesVector rhs = apply(*inv->inverse, {0, 1}, kMinusX2PlusX1, start);
          rhs = apply(p.embed_u, {1}, apply(p.embed_v, {0}, rhs));
          rhs = apply(m.y, {1, 2}, kAtX1, rhs);
          rhs = apply(m.y, {0, 1}, kAtX2, rhs);
          comm.record(label, {W}, vector_equal(lhs, rhs, w2));
        }
        const SeriesVector vstart = SeriesVector::basis({V, U, W}, kX1X2, w2, {v, u, w});
        SeriesVector base = apply(m.y, {1, 2}, kAtX2, apply(p.embed_u, {1}, vstart));
        base = apply(m.y, {0, 1}, kAtX1, apply(p.embed_v, {0}, base));
        VectorEquality last;
        const auto k = search_k(
            opts.kmax,
            [&](int kk) {
              const SeriesVector l = power_of_form(kX2MinusX1, kk, kX1X2, w2) * base;
              SeriesVector r = apply(p.twist.r, {0, 1}, kX2MinusX1, vstart, kk);
              r = apply(m.y, {1, 2}, kAtX1, apply(p.embed_v, {1}, r));
              r = apply(m.y, {0, 1}, kAtX2, apply(p.embed_u, {0}, r));
              return vector_equal(l, r, w2);
            },
            last);
        if (k) {
          kcomm.record_k(label, *k);
          kcomm.record(label, {W}, last);
        } else {
          kcomm.record(label, Verdict::NoKFound, describe_failure({W}, last, 2));
        }
      }
  regular.finish(report);
  kcomm.finish(report);
  if (inv) comm.finish(report);
  return report;
}

}  // namespace nvaw
