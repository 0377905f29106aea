#include "nvaw/smash.hpp"

#include <stdexcept>

#include "nvaw/errors.hpp"

namespace nvaw {

namespace {

const std::vector<std::string> kX{"x"};
const std::vector<std::string> kXZ{"x", "z"};

std::string lbl(const Space& s, int i) { return s.label(static_cast<std::size_t>(i)); }

/// (ε⊗1) or (1⊗ε) applied to a constant vector on [C, C].
SeriesVector apply_counit(const CoalgebraData& c, int leg, const SeriesVector& v) {
  SeriesVector out({c.space}, v.variables(), v.window());
  for (const auto& [i, s] : v.entries()) {
    const ExactScalar& e = c.counit[static_cast<std::size_t>(i[static_cast<std::size_t>(leg)])];
    if (e != 0) out.add({i[static_cast<std::size_t>(1 - leg)]}, e * s);
  }
  return out;
}

Nva ground_algebra(const Window& w) {
  const Space q("Q", {"1"});
  SeriesMap y({q, q}, {q}, kX, w);
  y.set({0, 0}, {0}, Series::constant(1));
  return make_nva("Q", q, "1", std::move(y));
}

void require_pass(const CheckReport& r, const std::string& what) {
  for (const auto& res : r.results)
    if (!is_pass(res.verdict)) throw PreconditionFail(what, res.identity + " at " + res.witness);
}

bool same_bialgebra(const VertexBialgebra& a, const VertexBialgebra& b) {
  return a.algebra.space == b.algebra.space && a.algebra.vacuum == b.algebra.vacuum &&
         map_equal(a.algebra.y, b.algebra.y, Window()).result.kind == CertifiedEquality::Kind::ExactlyEqual &&
         map_equal(a.coalgebra.coproduct, b.coalgebra.coproduct, Window()).holds() &&
         a.coalgebra.counit == b.coalgebra.counit;
}

}  // namespace

CoalgebraData make_coalgebra(std::string name, Space space, SeriesMap coproduct, std::vector<ExactScalar> counit) {
  const std::size_t n = space.dimension();
  if (!coproduct.constant() || coproduct.domain().size() != 1 || coproduct.codomain().size() != 2 ||
      coproduct.domain()[0].dimension() != n || coproduct.codomain()[0].dimension() != n ||
      coproduct.codomain()[1].dimension() != n)
    throw std::invalid_argument("coproduct of '" + name + "' must be a constant map C -> C⊗C");
  if (counit.size() != n) throw std::invalid_argument("counit of '" + name + "' needs one value per basis vector");
  return CoalgebraData{std::move(name), std::move(space), std::move(coproduct), std::move(counit)};
}

CheckReport check_coalgebra(const CoalgebraData& c, const CheckOptions& opts) {
  CheckReport report{"coalgebra", Window(), opts.kmax, {}, {}};
  const Space& C = c.space;
  IdentityCheck coassoc("coassociativity: (1⊗Δ)Δ = (Δ⊗1)Δ");
  IdentityCheck left("counit: (ε⊗1)Δ = identity");
  IdentityCheck right("counit: (1⊗ε)Δ = identity");
  for (int b = 0; b < static_cast<int>(C.dimension()); ++b) {
    const SeriesVector start = SeriesVector::basis({C}, {}, Window(), {b});
    const SeriesVector d = apply(c.coproduct, {0}, start);
    coassoc.record(lbl(C, b), {C, C, C}, vector_equal(apply(c.coproduct, {1}, d), apply(c.coproduct, {0}, d), Window()));
    left.record(lbl(C, b), {C}, vector_equal(apply_counit(c, 0, d), start, Window()));
    right.record(lbl(C, b), {C}, vector_equal(apply_counit(c, 1, d), start, Window()));
  }
  coassoc.finish(report);
  left.finish(report);
  right.finish(report);
  return report;
}

CheckReport check_vertex_bialgebra(const VertexBialgebra& h, const CheckOptions& opts) {
  CheckReport report{"bialgebra", opts.window(1), opts.kmax, {}, {}};
  const Nva& a = h.algebra;
  const CoalgebraData& c = h.coalgebra;
  if (a.dimension() != c.space.dimension())
    throw std::invalid_argument("bialgebra algebra and coalgebra live on different spaces");
  const Nva q = ground_algebra(opts.window(1));
  SeriesMap eps = SeriesMap::constant_map({a.space}, {q.space});
  for (int i = 0; i < static_cast<int>(a.dimension()); ++i)
    if (c.counit[static_cast<std::size_t>(i)] != 0) eps.set({i}, {0}, Series::constant(c.counit[static_cast<std::size_t>(i)]));
  report.merge(check_homomorphism(a, q, eps, "counit", opts));
  const ProductNva square = build_ordinary_tensor(a, a, opts);
  const SeriesMap delta = compose(SeriesMap::fuse(a.space, a.space), c.coproduct);
  report.merge(check_homomorphism(a, square.algebra, delta, "coproduct", opts));
  return report;
}

NvaModule action_module(const ModuleAlgebraData& m) {
  return make_module(m.name, m.bialgebra.algebra, m.algebra.space, m.action);
}

CheckReport check_module_algebra(const ModuleAlgebraData& m, const CheckOptions& opts) {
  CheckReport report{"module-algebra", opts.window(2), opts.kmax, {}, {}};
  const Nva& H = m.bialgebra.algebra;
  const CoalgebraData& c = m.bialgebra.coalgebra;
  const Nva& U = m.algebra;
  const Window w1 = opts.window(1), w2 = opts.window(2);
  report.merge(check_module(action_module(m), ModuleForm::Original, opts));

  IdentityCheck range("action range: Y(h,x)u is bounded below in x");
  IdentityCheck vacuum("action on the vacuum: Y(h,x)1 = ε(h)1");
  for (int h = 0; h < static_cast<int>(H.dimension()); ++h) {
    for (int u = 0; u < static_cast<int>(U.dimension()); ++u) {
      bool bounded = true;
      for (const auto& [o, s] : m.action.column({h, u})) {
        const SupportBound b = s.support_bound(0);
        if (!s.is_zero() && !b.floor) bounded = false;
      }
      range.record(lbl(H.space, h) + "," + lbl(U.space, u), bounded ? Verdict::ExactPass : Verdict::Fail,
                   bounded ? "" : "unbounded below");
    }
    const SeriesVector got =
        apply(m.action, {0, 1}, LinearForm::var(0), SeriesVector::basis({H.space, U.space}, kX, w1, {h, U.vacuum}));
    SeriesVector want({U.space}, kX, w1);
    want.add({U.vacuum}, Series::constant(c.counit[static_cast<std::size_t>(h)]));
    vacuum.record(lbl(H.space, h), {U.space}, vector_equal(got, want, w1));
  }
  range.finish(report);
  vacuum.finish(report);

  // Y(h,x)Y(u,z)v = Y(Y(h1,x-z)u,z)Y(h2,x)v in the variables (x, z).
  IdentityCheck compat("module-algebra compatibility: Y(h,x)Y(u,z)v = Y(Y(h1,x-z)u,z)Y(h2,x)v");
  const SeriesMap reorder = SeriesMap::permutation({H.space, H.space, U.space, U.space}, {0, 2, 1, 3});
  for (const auto& idx : all_indices({H.space, U.space, U.space})) {
    const SeriesVector start = SeriesVector::basis({H.space, U.space, U.space}, kXZ, w2, idx);
    const SeriesVector lhs =
        apply(m.action, {0, 1}, LinearForm::var(0), apply(U.y, {1, 2}, LinearForm::var(1), start));
    SeriesVector rhs = apply(reorder, {0, 1, 2, 3}, apply(c.coproduct, {0}, start));
    rhs = apply(m.action, {2, 3}, LinearForm::var(0), rhs);
    rhs = apply(m.action, {0, 1}, LinearForm::sum(0, 1, 1, -1), rhs);
    rhs = apply(U.y, {0, 1}, LinearForm::var(1), rhs);
    compat.record(index_label({H.space, U.space, U.space}, idx), {U.space}, vector_equal(lhs, rhs, w2));
  }
  compat.finish(report);

  // Y(h,z+x)Y(h',z)v = Y(Y(h,x)h',z)v, again in (x, z).
  IdentityCheck compose_id("action composition: Y(h,z+x)Y(h',z)v = Y(Y(h,x)h',z)v");
  for (const auto& idx : all_indices({H.space, H.space, U.space})) {
    const SeriesVector start = SeriesVector::basis({H.space, H.space, U.space}, kXZ, w2, idx);
    const SeriesVector lhs =
        apply(m.action, {0, 1}, LinearForm::sum(1, 1, 0, 1), apply(m.action, {1, 2}, LinearForm::var(1), start));
    const SeriesVector rhs =
        apply(m.action, {0, 1}, LinearForm::var(1), apply(H.y, {0, 1}, LinearForm::var(0), start));
    compose_id.record(index_label({H.space, H.space, U.space}, idx), {U.space}, vector_equal(lhs, rhs, w2));
  }
  compose_id.finish(report);
  return report;
}

CheckReport check_comodule_algebra(const ComoduleAlgebraData& cm, const CheckOptions& opts) {
  CheckReport report{"comodule-algebra", opts.window(1), opts.kmax, {}, {}};
  const Nva& H = cm.bialgebra.algebra;
  const CoalgebraData& c = cm.bialgebra.coalgebra;
  const Nva& V = cm.algebra;
  IdentityCheck coassoc("comodule: (Δ⊗1)ρ = (1⊗ρ)ρ");
  IdentityCheck counit("comodule: (ε⊗1)ρ = identity");
  for (int v = 0; v < static_cast<int>(V.dimension()); ++v) {
    const SeriesVector start = SeriesVector::basis({V.space}, {}, Window(), {v});
    const SeriesVector r = apply(cm.coaction, {0}, start);
    coassoc.record(lbl(V.space, v), {H.space, H.space, V.space},
                   vector_equal(apply(c.coproduct, {0}, r), apply(cm.coaction, {1}, r), Window()));
    SeriesVector eps({V.space}, {}, Window());
    for (const auto& [i, s] : r.entries()) eps.add({i[1]}, c.counit[static_cast<std::size_t>(i[0])] * s);
    counit.record(lbl(V.space, v), {V.space}, vector_equal(eps, start, Window()));
  }
  coassoc.finish(report);
  counit.finish(report);
  const ProductNva hv = build_ordinary_tensor(H, V, opts);
  report.merge(check_homomorphism(V, hv.algebra, compose(SeriesMap::fuse(H.space, V.space), cm.coaction), "coaction",
                                  opts));
  return report;
}

TwistOp smash_twist(const ModuleAlgebraData& u, const ComoduleAlgebraData& v) {
  const Space& H = u.bialgebra.algebra.space;
  const Space& U = u.algebra.space;
  const Space& V = v.algebra.space;
  const Window w = u.action.window().arity() ? u.action.window() : Window::uniform(1, -8, 8);
  const SeriesMap reorder = SeriesMap::permutation({H, V, U}, {0, 2, 1});
  SeriesMap r({V, U}, {U, V}, kX, w);
  for (const auto& idx : all_indices({V, U})) {
    SeriesVector s = apply(v.coaction, {0}, SeriesVector::basis({V, U}, kX, w, idx));
    s = apply(reorder, {0, 1, 2}, s);
    s = apply(u.action, {0, 1}, LinearForm::var(0, -1), s);
    for (const auto& [o, c] : s.entries()) r.set(idx, o, c);
  }
  return make_twist(u.name + "#" + v.name, u.algebra, v.algebra, std::move(r));
}

ProductNva build_smash(const ModuleAlgebraData& u, const ComoduleAlgebraData& v, const CheckOptions& opts) {
  if (!same_bialgebra(u.bialgebra, v.bialgebra))
    throw PreconditionFail("same bialgebra", u.bialgebra.algebra.name + " vs " + v.bialgebra.algebra.name);
  require_pass(check_coalgebra(u.bialgebra.coalgebra, opts), "coalgebra");
  require_pass(check_vertex_bialgebra(u.bialgebra, opts), "vertex bialgebra");
  require_pass(check_module_algebra(u, opts), "module-algebra");
  require_pass(check_comodule_algebra(v, opts), "comodule-algebra");

  const Space& H = u.bialgebra.algebra.space;
  const Space& U = u.algebra.space;
  const Space& V = v.algebra.space;
  const Space P = product_space(U, V);
  const Window w = opts.window(1);
  const SeriesMap to_hu = SeriesMap::permutation({U, H, V, U, V}, {0, 2, 1, 3, 4});
  const SeriesMap to_uu = SeriesMap::permutation({U, V, U, V}, {0, 2, 1, 3});
  SeriesMap y({P, P}, {P}, kX, w);
  for (const auto& a : all_indices({U, V}))
    for (const auto& b : all_indices({U, V})) {
      SeriesVector s = SeriesVector::basis({U, V, U, V}, kX, w, {a[0], a[1], b[0], b[1]});
      s = apply(v.coaction, {1}, s);           // u, b1(v), v2, u', v'
      s = apply(to_hu, {0, 1, 2, 3, 4}, s);    // u, v2, b1(v), u', v'
      s = apply(u.action, {2, 3}, LinearForm::var(0), s);
      s = apply(to_uu, {0, 1, 2, 3}, s);       // u, Y(b1(v),x)u', v2, v'
      s = apply(u.algebra.y, {0, 1}, LinearForm::var(0), s);
      s = apply(v.algebra.y, {1, 2}, LinearForm::var(0), s);
      const IndexTuple in{product_index(V, a[0], a[1]), product_index(V, b[0], b[1])};
      for (const auto& [o, c] : s.entries()) y.set(in, {product_index(V, o[0], o[1])}, c);
    }
  ProductNva out;
  out.u = u.algebra;
  out.v = v.algebra;
  out.provenance = Provenance::Smash;
  out.twist = smash_twist(u, v);
  out.algebra = make_nva(U.name() + "#" + V.name(), P,
                         P.label(static_cast<std::size_t>(product_index(V, u.algebra.vacuum, v.algebra.vacuum))),
                         std::move(y));
  out.embed_u = SeriesMap::constant_map({U}, {P});
  out.embed_v = SeriesMap::constant_map({V}, {P});
  for (int i = 0; i < static_cast<int>(U.dimension()); ++i)
    out.embed_u.set({i}, {product_index(V, i, v.algebra.vacuum)}, Series::constant(1));
  for (int j = 0; j < static_cast<int>(V.dimension()); ++j)
    out.embed_v.set({j}, {product_index(V, u.algebra.vacuum, j)}, Series::constant(1));
  return out;
}

CheckReport compare_tables(const std::string& identity, const SeriesMap& a, const SeriesMap& b, const Window& window) {
  CheckReport report{"table-comparison", window, 0, {}, {}};
  IdentityCheck check(identity);
  for (const auto& idx : all_indices(a.domain())) {
    const SeriesVector ca = a.image(idx), cb = b.image(idx);
    check.record(index_label(a.domain(), idx), a.codomain(), vector_equal(ca, cb, window));
  }
  check.finish(report);
  return report;
}

SmashAsTwist smash_as_twist(const ModuleAlgebraData& u, const ComoduleAlgebraData& v, const CheckOptions& opts) {
  const ProductNva smash = build_smash(u, v, opts);
  SmashAsTwist out{smash_twist(u, v), check_twisting_axioms(smash_twist(u, v), opts)};
  out.report.suite = "smash-as-twist";
  const ProductNva twisted = assemble_twisted_tensor(out.twist, opts);
  out.report.merge(compare_tables("smash table equals the twisted table", smash.algebra.y, twisted.algebra.y,
                                  opts.window(1)));
  return out;
}

}  // namespace nvaw
