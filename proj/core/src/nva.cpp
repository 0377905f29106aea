#include "nvaw/nva.hpp"

#include <stdexcept>

#include "nvaw/errors.hpp"

namespace nvaw {

namespace {

const std::vector<std::string> kX{"x"};
const std::vector<std::string> kX0X2{"x0", "x2"};
const std::vector<std::string> kX1X2{"x1", "x2"};

void check_vertex_shape(const SeriesMap& y, std::size_t dim_left, std::size_t dim_right, const std::string& what) {
  if (y.domain().size() != 2 || y.codomain().size() != 1 || y.domain()[0].dimension() != dim_left ||
      y.domain()[1].dimension() != dim_right || y.codomain()[0].dimension() != dim_right)
    throw std::invalid_argument(what + " table has the wrong shape");
  if (y.variables() != kX) throw std::invalid_argument(what + " table must use the variable x");
}

std::string triple_label(const Space& a, const Space& b, const Space& c, int i, int j, int k) {
  return a.label(static_cast<std::size_t>(i)) + "," + b.label(static_cast<std::size_t>(j)) + "," +
         c.label(static_cast<std::size_t>(k));
}

bool has_known_floor(const Series& s, std::size_t v, int at_least) {
  const SupportBound b = s.support_bound(v);
  if (s.is_zero() && s.exact()) return true;
  return b.floor.has_value() && *b.floor >= at_least;
}

}  // namespace

Nva make_nva(std::string name, Space space, const std::string& vacuum_label, SeriesMap y) {
  const std::size_t d = space.dimension();
  check_vertex_shape(y, d, d, "vertex");
  Nva a;
  a.name = std::move(name);
  a.vacuum = space.index_of(vacuum_label);
  a.space = std::move(space);
  a.y = std::move(y);
  return a;
}

NvaModule make_module(std::string name, Nva algebra, Space space, SeriesMap y) {
  check_vertex_shape(y, algebra.dimension(), space.dimension(), "module");
  return NvaModule{std::move(name), std::move(algebra), std::move(space), std::move(y)};
}

NvaModule adjoint_module(const Nva& a) { return NvaModule{a.name, a, a.space, a.y}; }

SeriesVector vertex_image(const Nva& a, int u, int v, const Window& window) {
  return apply(a.y, {0, 1}, LinearForm::var(0), SeriesVector::basis({a.space, a.space}, kX, window, {u, v}));
}

Series power_of_form(const LinearForm& form, int k, const std::vector<std::string>& vars, const Window& window) {
  return substitute(Series::constant(1), form, vars, window, k);
}

// ---------------------------------------------------------------------------------------------
// Vacuum and creation

CheckReport check_vacuum(const Nva& a, const CheckOptions& opts) {
  CheckReport report{"vacuum", opts.window(1), opts.kmax, {}, {}};
  const Window w = opts.window(1);
  IdentityCheck unit("vacuum acts as identity: Y(1,x)v = v");
  IdentityCheck regular("creation: Y(v,x)1 has no negative powers");
  IdentityCheck limit("creation limit: constant term of Y(v,x)1 is v");
  const int d = static_cast<int>(a.dimension());
  for (int v = 0; v < d; ++v) {
    const std::string label = a.space.label(static_cast<std::size_t>(v));
    unit.record(label, {a.space},
                vector_equal(vertex_image(a, a.vacuum, v, w), SeriesVector::basis({a.space}, kX, w, {v}), w));

    const SeriesVector created = vertex_image(a, v, a.vacuum, w);
    bool ok = true;
    bool exact = true;
    for (const auto& [i, s] : created.entries()) {
      exact = exact && s.exact();
      if (!has_known_floor(s, 0, 0)) ok = false;
    }
    regular.record(label, ok ? (exact ? Verdict::ExactPass : Verdict::WindowPass) : Verdict::Fail,
                   ok ? "" : "negative power present");

    SeriesVector constant_part({a.space}, {}, Window());
    for (const auto& [i, s] : created.entries()) constant_part.add(i, Series::constant(s.coefficient(Exponent{})));
    const VectorEquality eq = vector_equal(constant_part, SeriesVector::basis({a.space}, {}, Window(), {v}), Window());
    Verdict lv = verdict_of(eq.kind);
    if (is_pass(lv) && !exact) lv = Verdict::WindowPass;
    limit.record(label, lv, is_pass(lv) ? "" : describe_failure({a.space}, eq, 0));
  }
  unit.finish(report);
  regular.finish(report);
  limit.finish(report);
  return report;
}

// ---------------------------------------------------------------------------------------------
// Weak associativity

VectorEquality weak_associativity_at(const NvaModule& m, int u, int v, int w, int k, const Window& window) {
  const SeriesVector start = SeriesVector::basis({m.algebra.space, m.algebra.space, m.space}, kX0X2, window, {u, v, w});
  // (x0+x2)^k Y_W(u, x0+x2) Y_W(v, x2) w, expanded in nonnegative powers of x2
  const SeriesVector inner = apply(m.y, {1, 2}, LinearForm::var(1), start);
  const SeriesVector lhs = apply(m.y, {0, 1}, LinearForm::sum(0, 1, 1, 1), inner, k);
  // (x0+x2)^k Y_W(Y(u, x0) v, x2) w
  const SeriesVector uv = apply(m.algebra.y, {0, 1}, LinearForm::var(0), start);
  const SeriesVector rhs = power_of_form(LinearForm::sum(0, 1, 1, 1), k, kX0X2, window) *
                           apply(m.y, {0, 1}, LinearForm::var(1), uv);
  return vector_equal(lhs, rhs, window);
}

namespace {

void weak_associativity_identity(const NvaModule& m, const CheckOptions& opts, const std::string& name,
                                 CheckReport& report) {
  IdentityCheck check(name);
  const Window w2 = opts.window(2);
  const int dv = static_cast<int>(m.algebra.dimension()), dw = static_cast<int>(m.space.dimension());
  for (int u = 0; u < dv; ++u)
    for (int v = 0; v < dv; ++v)
      for (int w = 0; w < dw; ++w) {
        const std::string label = triple_label(m.algebra.space, m.algebra.space, m.space, u, v, w);
        VectorEquality last;
        const auto k = search_k(opts.kmax, [&](int kk) { return weak_associativity_at(m, u, v, w, kk, w2); }, last);
        if (k) {
          check.record_k(label, *k);
          check.record(label, {m.space}, last);
        } else {
          check.record(label, Verdict::NoKFound, "no k <= " + std::to_string(opts.kmax) + "; " +
                                                     describe_failure({m.space}, last, 2));
        }
      }
  check.finish(report);
}

void module_unit_identity(const NvaModule& m, const CheckOptions& opts, const std::string& name, CheckReport& report) {
  IdentityCheck check(name);
  const Window w = opts.window(1);
  for (int i = 0; i < static_cast<int>(m.space.dimension()); ++i) {
    const SeriesVector got = apply(m.y, {0, 1}, LinearForm::var(0),
                                   SeriesVector::basis({m.algebra.space, m.space}, kX, w, {m.algebra.vacuum, i}));
    check.record(m.space.label(static_cast<std::size_t>(i)), {m.space},
                 vector_equal(got, SeriesVector::basis({m.space}, kX, w, {i}), w));
  }
  check.finish(report);
}

}  // namespace

CheckReport check_weak_associativity(const Nva& a, const CheckOptions& opts) {
  CheckReport report{"weak-associativity", opts.window(2), opts.kmax, {}, {}};
  weak_associativity_identity(adjoint_module(a), opts,
                              "weak associativity: (x0+x2)^k Y(u,x0+x2)Y(v,x2)w = (x0+x2)^k Y(Y(u,x0)v,x2)w",
                              report);
  return report;
}

// ---------------------------------------------------------------------------------------------
// D operator

SeriesMap compute_D(const Nva& a) {
  SeriesMap d = SeriesMap::constant_map({a.space}, {a.space});
  Exponent one{};
  one[0] = 1;
  for (int i = 0; i < static_cast<int>(a.dimension()); ++i) {
    for (const auto& [o, s] : a.y.column({i, a.vacuum})) {
      if (!has_known_floor(s, 0, 0) || (!s.exact() && !s.window().contains(one)))
        throw PreconditionFail("creation", a.space.label(static_cast<std::size_t>(i)));
      const ExactScalar c = s.coefficient(one);
      if (c != 0) d.set({i}, o, Series::constant(c));
    }
  }
  return d;
}

CheckReport check_D_bracket(const Nva& a, const CheckOptions& opts) { return check_D_bracket(a, compute_D(a), opts); }

CheckReport check_D_bracket(const Nva& a, const SeriesMap& d, const CheckOptions& opts) {
  CheckReport report{"D-bracket", opts.window(1), opts.kmax, {}, {}};
  const Window w = opts.window(1);
  IdentityCheck bracket("D bracket: [D, Y(v,x)] = Y(Dv,x)");
  IdentityCheck deriv("D derivative: Y(Dv,x) = d/dx Y(v,x)");
  const int n = static_cast<int>(a.dimension());
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u) {
      const std::string label = a.space.label(static_cast<std::size_t>(v)) + "," + a.space.label(static_cast<std::size_t>(u));
      const SeriesVector start = SeriesVector::basis({a.space, a.space}, kX, w, {v, u});
      const SeriesVector yvu = apply(a.y, {0, 1}, LinearForm::var(0), start);
      const SeriesVector comm =
          apply(d, {0}, yvu) - apply(a.y, {0, 1}, LinearForm::var(0), apply(d, {1}, start));
      const SeriesVector ydv = apply(a.y, {0, 1}, LinearForm::var(0), apply(d, {0}, start));
      SeriesVector dy({a.space}, kX, w);
      for (const auto& [i, s] : yvu.entries()) dy.add(i, s.derivative(0));
      bracket.record(label, {a.space}, vector_equal(comm, ydv, w));
      deriv.record(label, {a.space}, vector_equal(ydv, dy, w));
    }
  bracket.finish(report);
  deriv.finish(report);
  return report;
}

CheckReport check_creation_exponential(const Nva& a, const CheckOptions& opts) {
  CheckReport report{"creation-exponential", opts.window(1), opts.kmax, {}, {}};
  const Window w = opts.window(1);
  IdentityCheck check("creation via D: Y(v,x)1 = exp(xD)v");
  const SeriesMap e = exp_xD(compute_D(a), w);
  for (int v = 0; v < static_cast<int>(a.dimension()); ++v) {
    const SeriesVector rhs = apply(e, {0}, LinearForm::var(0), SeriesVector::basis({a.space}, kX, w, {v}));
    check.record(a.space.label(static_cast<std::size_t>(v)), {a.space},
                 vector_equal(vertex_image(a, v, a.vacuum, w), rhs, w));
  }
  check.finish(report);
  return report;
}

// ---------------------------------------------------------------------------------------------
// Modules

namespace {

// Finite floors in both variables of (x1-x2)^k Y_W(u,x1) Y_W(v,x2) w.
bool two_variable_regular(const NvaModule& m, int u, int v, int w, int k, const Window& window, bool& exact) {
  const SeriesVector start = SeriesVector::basis({m.algebra.space, m.algebra.space, m.space}, kX1X2, window, {u, v, w});
  const SeriesVector inner = apply(m.y, {1, 2}, LinearForm::var(1), start);
  const SeriesVector prod =
      power_of_form(LinearForm::sum(0, 1, 1, -1), k, kX1X2, window) * apply(m.y, {0, 1}, LinearForm::var(0), inner);
  exact = prod.exact();
  for (const auto& [i, s] : prod.entries()) {
    if (s.exact()) continue;
    if (!s.support_bound(0).floor || !s.support_bound(1).floor) return false;
  }
  return true;
}

VectorEquality substituted_at(const NvaModule& m, int u, int v, int w, int k, const Window& window) {
  const SeriesVector start = SeriesVector::basis({m.algebra.space, m.algebra.space, m.space}, kX0X2, window, {u, v, w});
  Exponent e{};
  e[0] = k;
  const Series x0k = Series::monomial(kX0X2, window, e, 1);
  // x0^k Y_W(u, x2+x0) Y_W(v, x2) w, expanded in nonnegative powers of x0
  const SeriesVector inner = apply(m.y, {1, 2}, LinearForm::var(1), start);
  const SeriesVector lhs = x0k * apply(m.y, {0, 1}, LinearForm::sum(1, 1, 0, 1), inner);
  const SeriesVector uv = apply(m.algebra.y, {0, 1}, LinearForm::var(0), start);
  const SeriesVector rhs = x0k * apply(m.y, {0, 1}, LinearForm::var(1), uv);
  return vector_equal(lhs, rhs, window);
}

}  // namespace

CheckReport check_module(const NvaModule& m, ModuleForm form, const CheckOptions& opts) {
  CheckReport report{form == ModuleForm::Original ? "module" : "module-substituted", opts.window(2), opts.kmax, {}, {}};
  module_unit_identity(m, opts, "module vacuum: Y_W(1,x) = identity", report);
  if (form == ModuleForm::Original) {
    weak_associativity_identity(
        m, opts, "module weak associativity: (x0+x2)^k Y_W(u,x0+x2)Y_W(v,x2)w = (x0+x2)^k Y_W(Y(u,x0)v,x2)w", report);
    return report;
  }
  IdentityCheck regular("two-variable regularity of (x1-x2)^k Y_W(u,x1)Y_W(v,x2)w");
  IdentityCheck identity("substituted associativity at x1 = x2+x0");
  IdentityCheck every_k("every regular k satisfies the substituted associativity");
  const Window w2 = opts.window(2);
  const int dv = static_cast<int>(m.algebra.dimension()), dw = static_cast<int>(m.space.dimension());
  for (int u = 0; u < dv; ++u)
    for (int v = 0; v < dv; ++v)
      for (int w = 0; w < dw; ++w) {
        const std::string label = triple_label(m.algebra.space, m.algebra.space, m.space, u, v, w);
        std::optional<int> kreg;
        bool exact = true;
        for (int k = 0; k <= opts.kmax && !kreg; ++k)
          if (two_variable_regular(m, u, v, w, k, w2, exact)) kreg = k;
        if (!kreg) {
          regular.record(label, Verdict::NoKFound, "no k <= " + std::to_string(opts.kmax));
          identity.record(label, Verdict::NoKFound, "regularity not established");
          continue;
        }
        regular.record_k(label, *kreg);
        regular.record(label, exact ? Verdict::ExactPass : Verdict::WindowPass);
        identity.record(label, {m.space}, substituted_at(m, u, v, w, *kreg, w2));
        for (int k = *kreg + 1; k <= std::min(opts.kmax, *kreg + 2); ++k)
          every_k.record(label + " k=" + std::to_string(k), {m.space}, substituted_at(m, u, v, w, k, w2));
      }
  regular.finish(report);
  identity.finish(report);
  every_k.finish(report);
  return report;
}

CheckReport check_nva_suite(const Nva& a, const CheckOptions& opts) {
  CheckReport report{"nva", opts.window(2), opts.kmax, {}, {}};
  report.merge(check_vacuum(a, opts));
  report.merge(check_weak_associativity(a, opts));
  try {
    report.merge(check_D_bracket(a, opts));
    report.merge(check_creation_exponential(a, opts));
  } catch (const PreconditionFail& e) {
    report.results.push_back({"D operator is defined", Verdict::Fail, e.witness() + ": " + e.what(), std::nullopt, 1});
  }
  return report;
}

}  // namespace nvaw

namespace nvaw {

CheckReport check_homomorphism(const Nva& a, const Nva& b, const SeriesMap& f, const std::string& name,
                               const CheckOptions& opts) {
  if (!f.constant() || f.domain().size() != 1 || f.codomain().size() != 1 ||
      f.domain()[0].dimension() != a.dimension() || f.codomain()[0].dimension() != b.dimension())
    throw std::invalid_argument("homomorphism must be a constant map between the two algebras");
  CheckReport report{"homomorphism", opts.window(1), opts.kmax, {}, {}};
  const Window w = opts.window(1);
  IdentityCheck unit(name + " preserves the vacuum");
  unit.record(a.space.label(static_cast<std::size_t>(a.vacuum)), {b.space},
              vector_equal(apply(f, {0}, SeriesVector::basis({a.space}, {}, Window(), {a.vacuum})),
                           SeriesVector::basis({b.space}, {}, Window(), {b.vacuum}), Window()));
  unit.finish(report);
  IdentityCheck hom(name + " intertwines vertex operators: f(Y(a,x)b) = Y(fa,x)fb");
  for (const auto& idx : all_indices({a.space, a.space})) {
    const SeriesVector start = SeriesVector::basis({a.space, a.space}, kX, w, idx);
    const SeriesVector lhs = apply(f, {0}, apply(a.y, {0, 1}, LinearForm::var(0), start));
    const SeriesVector rhs = apply(b.y, {0, 1}, LinearForm::var(0), apply(f, {1}, apply(f, {0}, start)));
    hom.record(index_label({a.space, a.space}, idx), {b.space}, vector_equal(lhs, rhs, w));
  }
  hom.finish(report);
  return report;
}

}  // namespace nvaw
