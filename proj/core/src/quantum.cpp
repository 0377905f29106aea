#include "nvaw/quantum.hpp"

#include <stdexcept>

#include "nvaw/errors.hpp"
#include "nvaw/linear_solve.hpp"

namespace nvaw {

namespace {

const std::vector<std::string> kX{"x"};
const std::vector<std::string> kX1X2{"x1", "x2"};
const std::vector<std::string> kXZ{"x", "z"};

const char* const kVacuumLeft = "S vacuum: S(x)(1⊗v) = 1⊗v";
const char* const kVacuumRight = "S vacuum, partner form: S(x)(v⊗1) = v⊗1";
const char* const kDLeft = "S derivation: [D⊗1, S(x)] = -d/dx S(x)";
const char* const kDRight = "S derivation, partner form: [1⊗D, S^{-1}(x)] = d/dx S^{-1}(x)";
const char* const kHexLeft = "S hexagon: S(x1)(Y(x2)⊗1) = (Y(x2)⊗1)S23(x1)S13(x1+x2)";
const char* const kHexRight = "S hexagon, partner form: S(x1)(1⊗Y(x2)) = (1⊗Y(x2))S12(x1-x2)S13(x1)";

std::string lbl(const Space& s, int i) { return s.label(static_cast<std::size_t>(i)); }

std::string column_label(const SpaceList& spaces, const MapEquality& eq) {
  return eq.column ? index_label(spaces, *eq.column) : "all columns";
}

}  // namespace

SMap make_smap(std::string name, Nva algebra, SeriesMap table) {
  const auto& d = table.domain();
  const auto& c = table.codomain();
  const std::size_t n = algebra.dimension();
  if (d.size() != 2 || c.size() != 2 || d[0].dimension() != n || d[1].dimension() != n || c[0].dimension() != n ||
      c[1].dimension() != n)
    throw std::invalid_argument("S-map '" + name + "' must map V⊗V to V⊗V");
  if (table.variables() != kX) throw std::invalid_argument("S-map '" + name + "' must use the variable x");
  return SMap{std::move(name), std::move(algebra), std::move(table)};
}

SMap identity_smap(const Nva& a, const Window& window) {
  return make_smap("identity", a, lift(SeriesMap::identity({a.space, a.space}), kX, window));
}

CheckReport check_S_locality(const SMap& s, const CheckOptions& opts) {
  CheckReport report{"S-locality", opts.window(2), opts.kmax, {}, {}};
  const Nva& a = s.algebra;
  const Space& V = a.space;
  const Window w2 = opts.window(2);
  const int n = static_cast<int>(a.dimension());
  IdentityCheck check("S-locality: (x1-x2)^k Y(u,x1)Y(v,x2)w = (x1-x2)^k Y(x2)(1⊗Y(x1))S12(x2-x1)(v⊗u⊗w)");
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      std::vector<SeriesVector> lhs, start;
      for (int w = 0; w < n; ++w) {
        SeriesVector l = apply(a.y, {1, 2}, LinearForm::var(1), SeriesVector::basis({V, V, V}, kX1X2, w2, {u, v, w}));
        lhs.push_back(apply(a.y, {0, 1}, LinearForm::var(0), l));
        start.push_back(SeriesVector::basis({V, V, V}, kX1X2, w2, {v, u, w}));
      }
      VectorEquality last;
      int failing_w = 0;
      const auto k = search_k(
          opts.kmax,
          [&](int kk) {
            const Series power = power_of_form(LinearForm::sum(0, 1, 1, -1), kk, kX1X2, w2);
            VectorEquality worst;
            for (int w = 0; w < n; ++w) {
              SeriesVector r = apply(s.table, {0, 1}, LinearForm::sum(1, 1, 0, -1), start[static_cast<std::size_t>(w)], kk);
              r = apply(a.y, {1, 2}, LinearForm::var(0), r);
              r = apply(a.y, {0, 1}, LinearForm::var(1), r);
              if (kk % 2 != 0) r = ExactScalar(-1) * r;
              const VectorEquality eq = vector_equal(power * lhs[static_cast<std::size_t>(w)], r, w2);
              if (!eq.holds()) {
                failing_w = w;
                return eq;
              }
              if (eq.kind == CertifiedEquality::Kind::EqualUpToWindow) worst = eq;
            }
            return worst;
          },
          last);
      const std::string label = lbl(V, u) + "," + lbl(V, v);
      if (k) {
        check.record_k(label, *k);
        check.record(label, {V}, last);
      } else {
        check.record(label + "," + lbl(V, failing_w), Verdict::NoKFound, describe_failure({V}, last, 2));
      }
    }
  check.finish(report);
  return report;
}

CheckReport check_S_skew(const SMap& s, const CheckOptions& opts) {
  CheckReport report{"S-skew", opts.window(1), opts.kmax, {}, {}};
  const Nva& a = s.algebra;
  const Space& V = a.space;
  const Window w = opts.window(1);
  IdentityCheck check("S-skew symmetry: Y(u,x)v = exp(xD) Y(-x) S(-x)(v⊗u)");
  SeriesMap exd;
  try {
    exd = exp_xD(compute_D(a), w);
  } catch (const PreconditionFail& e) {
    check.record(e.witness(), Verdict::Fail, e.what());
    check.finish(report);
    return report;
  }
  const int n = static_cast<int>(a.dimension());
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      SeriesVector rhs = apply(s.table, {0, 1}, LinearForm::var(0, -1), SeriesVector::basis({V, V}, kX, w, {v, u}));
      rhs = apply(a.y, {0, 1}, LinearForm::var(0, -1), rhs);
      rhs = apply(exd, {0}, LinearForm::var(0), rhs);
      check.record(lbl(V, u) + "," + lbl(V, v), {V}, vector_equal(vertex_image(a, u, v, w), rhs, w));
    }
  check.finish(report);
  return report;
}

CheckReport check_qyb_unitarity(const SMap& s, const CheckOptions& opts) {
  CheckReport report{"qyb", opts.window(2), opts.kmax, {}, {}};
  const Space& V = s.algebra.space;
  const Window w1 = opts.window(1), w2 = opts.window(2);
  IdentityCheck qyb("quantum Yang-Baxter: S12(x)S13(x+z)S23(z) = S23(z)S13(x+z)S12(x)");
  const LinearForm x_plus_z = LinearForm::sum(0, 1, 1, 1);
  for (const auto& idx : all_indices({V, V, V})) {
    const SeriesVector start = SeriesVector::basis({V, V, V}, kXZ, w2, idx);
    SeriesVector lhs = apply(s.table, {1, 2}, LinearForm::var(1), start);
    lhs = apply(s.table, {0, 2}, x_plus_z, lhs);
    lhs = apply(s.table, {0, 1}, LinearForm::var(0), lhs);
    SeriesVector rhs = apply(s.table, {0, 1}, LinearForm::var(0), start);
    rhs = apply(s.table, {0, 2}, x_plus_z, rhs);
    rhs = apply(s.table, {1, 2}, LinearForm::var(1), rhs);
    qyb.record(index_label({V, V, V}, idx), {V, V, V}, vector_equal(lhs, rhs, w2));
  }
  qyb.finish(report);

  IdentityCheck unitary("unitarity: S(x)S21(-x) = 1");
  const SeriesMap flip = SeriesMap::flip(V, V);
  for (const auto& idx : all_indices({V, V})) {
    const SeriesVector start = SeriesVector::basis({V, V}, kX, w1, idx);
    SeriesVector got = apply(flip, {0, 1}, start);
    got = apply(s.table, {0, 1}, LinearForm::var(0, -1), got);
    got = apply(flip, {0, 1}, got);
    got = apply(s.table, {0, 1}, LinearForm::var(0), got);
    unitary.record(index_label({V, V}, idx), {V, V}, vector_equal(got, start, w1));
  }
  unitary.finish(report);
  return report;
}

std::vector<std::pair<std::string, std::string>> qva_partner_identities() {
  return {{kVacuumLeft, kVacuumRight}, {kDLeft, kDRight}, {kHexLeft, kHexRight}};
}

CheckReport check_qva_axioms(const SMap& s, const CheckOptions& opts) {
  CheckReport report{"qva", opts.window(2), opts.kmax, {}, {}};
  const Nva& a = s.algebra;
  const Space& V = a.space;
  const Window w1 = opts.window(1), w2 = opts.window(2);
  const int n = static_cast<int>(a.dimension());

  IdentityCheck vac_left(kVacuumLeft);
  IdentityCheck vac_right(kVacuumRight);
  for (int v = 0; v < n; ++v) {
    const SeriesVector lv = SeriesVector::basis({V, V}, kX, w1, {a.vacuum, v});
    const SeriesVector rv = SeriesVector::basis({V, V}, kX, w1, {v, a.vacuum});
    vac_left.record(lbl(V, v), {V, V}, vector_equal(apply(s.table, {0, 1}, LinearForm::var(0), lv), lv, w1));
    vac_right.record(lbl(V, v), {V, V}, vector_equal(apply(s.table, {0, 1}, LinearForm::var(0), rv), rv, w1));
  }
  vac_left.finish(report);

  IdentityCheck d_left(kDLeft);
  IdentityCheck d_right(kDRight);
  try {
    const SeriesMap d = compute_D(a);
    const SeriesMap id = SeriesMap::identity({V});
    const SeriesMap d1 = tensor(d, id), d2 = tensor(id, d);
    const SeriesMap lhs = compose(d1, s.table) - compose(s.table, d1);
    const MapEquality eq = map_equal(lhs, ExactScalar(-1) * derivative(s.table), w1);
    d_left.record(column_label({V, V}, eq), {V, V}, eq.result);
    try {
      const SeriesMap inv = invert(s.table);
      const MapEquality eq2 = map_equal(compose(d2, inv) - compose(inv, d2), derivative(inv), w1);
      d_right.record(column_label({V, V}, eq2), {V, V}, eq2.result);
    } catch (const NotInvertible& e) {
      d_right.record("S(x)", Verdict::Fail, e.what());
    }
  } catch (const PreconditionFail& e) {
    d_left.record(e.witness(), Verdict::Fail, e.what());
    d_right.record(e.witness(), Verdict::Fail, e.what());
  }
  d_left.finish(report);

  report.merge(check_S_skew(s, opts));

  IdentityCheck hex_left(kHexLeft);
  IdentityCheck hex_right(kHexRight);
  for (const auto& idx : all_indices({V, V, V})) {
    const SeriesVector start = SeriesVector::basis({V, V, V}, kX1X2, w2, idx);
    {
      const SeriesVector lhs =
          apply(s.table, {0, 1}, LinearForm::var(0), apply(a.y, {0, 1}, LinearForm::var(1), start));
      SeriesVector rhs = apply(s.table, {0, 2}, LinearForm::sum(0, 1, 1, 1), start);
      rhs = apply(s.table, {1, 2}, LinearForm::var(0), rhs);
      rhs = apply(a.y, {0, 1}, LinearForm::var(1), rhs);
      hex_left.record(index_label({V, V, V}, idx), {V, V}, vector_equal(lhs, rhs, w2));
    }
    const SeriesVector lhs = apply(s.table, {0, 1}, LinearForm::var(0), apply(a.y, {1, 2}, LinearForm::var(1), start));
    SeriesVector rhs = apply(s.table, {0, 2}, LinearForm::var(0), start);
    rhs = apply(s.table, {0, 1}, LinearForm::sum(0, 1, 1, -1), rhs);
    rhs = apply(a.y, {1, 2}, LinearForm::var(1), rhs);
    hex_right.record(index_label({V, V, V}, idx), {V, V}, vector_equal(lhs, rhs, w2));
  }
  hex_left.finish(report);
  vac_right.finish(report);
  d_right.finish(report);
  hex_right.finish(report);
  return report;
}

// ---------------------------------------------------------------------------------------------

SExtraction extract_S(const Nva& a, const CheckOptions& opts) {
  const Space& V = a.space;
  const Window w = opts.window(1);
  const int n = static_cast<int>(a.dimension());
  const int nw = opts.window_hi - opts.window_lo + 1;
  SExtraction out;
  out.z2 = z2_kernel(a, opts);
  const SeriesMap exd = exp_xD(compute_D(a), w);

  // response(c, d) = exp(xD) Y(c, -x) d; the unknown s_{cd,m} contributes (-x)^m times it.
  std::vector<SeriesVector> response;
  for (const auto& idx : all_indices({V, V})) {
    SeriesVector r = apply(a.y, {0, 1}, LinearForm::var(0, -1), SeriesVector::basis({V, V}, kX, w, idx));
    response.push_back(apply(exd, {0}, LinearForm::var(0), r));
  }
  const std::size_t unknowns = static_cast<std::size_t>(n * n * nw);
  SeriesMap table({V, V}, {V, V}, kX, w);
  bool exact = true;
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u) {
      SeriesEquation eq{{}, vertex_image(a, u, v, w)};
      for (std::size_t cd = 0; cd < response.size(); ++cd)
        for (int m = opts.window_lo; m <= opts.window_hi; ++m) {
          Exponent e{};
          e[0] = m;
          const Series mono = Series::monomial(kX, w, e, m % 2 ? -1 : 1);
          eq.terms.emplace_back(cd * static_cast<std::size_t>(nw) + static_cast<std::size_t>(m - opts.window_lo),
                                mono * response[cd]);
        }
      const SeriesSolveResult r = solve_series_equations({eq}, unknowns, w);
      const std::string col = lbl(V, v) + "," + lbl(V, u);
      if (r.solution.kind == LinearSolution::Kind::Inconsistent)
        throw ExtractionFail(ExtractionFailure::Inconsistent, col + ": " + r.solution.witness);
      if (r.solution.kind == LinearSolution::Kind::Underdetermined)
        throw ExtractionFail(ExtractionFailure::Underdetermined,
                             col + ": rank " + std::to_string(r.solution.rank) + ", nullity " +
                                 std::to_string(r.solution.nullity) + "; Z2 kernel rank " +
                                 std::to_string(out.z2.kernel_rank));
      exact = exact && r.exact;
      for (std::size_t cd = 0; cd < response.size(); ++cd) {
        Series::Terms t;
        for (int m = opts.window_lo; m <= opts.window_hi; ++m) {
          const ExactScalar& c = r.solution.values[cd * static_cast<std::size_t>(nw) + static_cast<std::size_t>(m - opts.window_lo)];
          if (c != 0) {
            Exponent e{};
            e[0] = m;
            t[e] = c;
          }
        }
        if (!t.empty())
          table.set({v, u}, {static_cast<int>(cd) / n, static_cast<int>(cd) % n}, Series::from_terms(kX, w, t));
      }
    }
  out.smap = make_smap("extracted", a, table);
  out.report = check_qva_axioms(out.smap, opts);
  out.report.suite = "extract-smap";
  IdentityCheck extra("extracted S: [1⊗D, S(x)] = d/dx S(x)");
  const SeriesMap d2 = tensor(SeriesMap::identity({V}), compute_D(a));
  const MapEquality eq = map_equal(compose(d2, table) - compose(table, d2), derivative(table), w);
  extra.record(column_label({V, V}, eq), {V, V}, eq.result);
  extra.finish(out.report);
  if (!exact)
    for (auto& res : out.report.results)
      if (res.verdict == Verdict::ExactPass) res.verdict = Verdict::WindowPass;
  return out;
}

TwistOp twist_from_smap(const SMap& s) {
  const Space& V = s.algebra.space;
  return make_twist(s.name + "-twist", s.algebra, s.algebra, compose(s.table, SeriesMap::flip(V, V)));
}

SMap build_S_R(const ProductNva& p, const SMap& su, const SMap& sv, const CheckOptions& opts) {
  const CheckReport axioms = check_twisting_axioms(p.twist, opts);
  for (const auto& r : axioms.results)
    if (!is_pass(r.verdict)) throw PreconditionFail("twisting axioms", r.identity + " at " + r.witness);
  const TwistOp t = p.twist.inverse ? p.twist : invert_twisting(p.twist, opts);
  const Space& U = p.u.space;
  const Space& V = p.v.space;
  const Space& P = p.algebra.space;
  const Window w = opts.window(1);
  const LinearForm at_x = LinearForm::var(0);
  SeriesMap table({P, P}, {P, P}, kX, w);
  const SeriesMap fuse = SeriesMap::fuse(U, V);
  for (const auto& first : all_indices({U, V}))
    for (const auto& second : all_indices({U, V})) {
      // Input u'⊗v'⊗u⊗v; after σ13σ24 it reads u⊗v⊗u'⊗v'.
      SeriesVector s = SeriesVector::basis({U, V, U, V}, kX, w, {second[0], second[1], first[0], first[1]});
      s = apply(p.twist.r, {1, 2}, at_x, s);
      s = apply(SeriesMap::flip(V, V), {2, 3}, s);
      s = apply(sv.table, {2, 3}, at_x, s);
      s = apply(SeriesMap::flip(U, U), {0, 1}, s);
      s = apply(su.table, {0, 1}, at_x, s);
      s = apply(*t.inverse, {1, 2}, at_x, s);
      s = apply(fuse, {1, 2}, apply(fuse, {0, 1}, s));
      const IndexTuple in{product_index(V, first[0], first[1]), product_index(V, second[0], second[1])};
      for (const auto& [o, c] : s.entries()) table.set(in, o, c);
    }
  return make_smap(su.name + "⊗" + sv.name + "-twisted", p.algebra, std::move(table));
}

}  // namespace nvaw
