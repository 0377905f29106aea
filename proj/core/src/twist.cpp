#include "nvaw/twist.hpp"

#include <stdexcept>

#include "nvaw/errors.hpp"

namespace nvaw {

namespace {

const std::vector<std::string> kX{"x"};
const std::vector<std::string> kX1X2{"x1", "x2"};

std::string label3(const Space& a, const Space& b, const Space& c, const IndexTuple& i) {
  return index_label({a, b, c}, i);
}

}  // namespace

TwistOp make_twist(std::string name, Nva u, Nva v, SeriesMap r) {
  const auto& d = r.domain();
  const auto& c = r.codomain();
  if (d.size() != 2 || c.size() != 2 || d[0].dimension() != v.dimension() || d[1].dimension() != u.dimension() ||
      c[0].dimension() != u.dimension() || c[1].dimension() != v.dimension())
    throw std::invalid_argument("twist table '" + name + "' must map V⊗U to U⊗V");
  if (r.variables() != kX) throw std::invalid_argument("twist table '" + name + "' must use the variable x");
  return TwistOp{std::move(name), std::move(u), std::move(v), std::move(r), std::nullopt};
}

TwistOp flip_twist(const Nva& u, const Nva& v, const Window& window) {
  return make_twist("flip", u, v, lift(SeriesMap::flip(v.space, u.space), kX, window));
}

CheckReport check_twisting_axioms(const TwistOp& t, const CheckOptions& opts) {
  CheckReport report{"twist", opts.window(2), opts.kmax, {}, {}};
  const Space& U = t.u.space;
  const Space& V = t.v.space;
  const Window w1 = opts.window(1);
  const Window w2 = opts.window(2);

  IdentityCheck vac_left("twist vacuum: R(x)(v⊗1) = 1⊗v");
  IdentityCheck vac_right("twist vacuum: R(x)(1⊗u) = u⊗1");
  for (int v = 0; v < static_cast<int>(V.dimension()); ++v) {
    const SeriesVector got = apply(t.r, {0, 1}, LinearForm::var(0), SeriesVector::basis({V, U}, kX, w1, {v, t.u.vacuum}));
    vac_left.record(V.label(static_cast<std::size_t>(v)), {U, V},
                    vector_equal(got, SeriesVector::basis({U, V}, kX, w1, {t.u.vacuum, v}), w1));
  }
  for (int u = 0; u < static_cast<int>(U.dimension()); ++u) {
    const SeriesVector got = apply(t.r, {0, 1}, LinearForm::var(0), SeriesVector::basis({V, U}, kX, w1, {t.v.vacuum, u}));
    vac_right.record(U.label(static_cast<std::size_t>(u)), {U, V},
                     vector_equal(got, SeriesVector::basis({U, V}, kX, w1, {u, t.v.vacuum}), w1));
  }
  vac_left.finish(report);
  vac_right.finish(report);

  // R(x1)(1⊗Y(x2)) = (Y(x2)⊗1) R^{23}(x1) R^{12}(x1+x2)   on V⊗U⊗U
  IdentityCheck left("twist hexagon: R(x1)(1⊗Y(x2)) = (Y(x2)⊗1)R23(x1)R12(x1+x2)");
  for (const auto& idx : all_indices({V, U, U})) {
    const SeriesVector start = SeriesVector::basis({V, U, U}, kX1X2, w2, idx);
    const SeriesVector lhs =
        apply(t.r, {0, 1}, LinearForm::var(0), apply(t.u.y, {1, 2}, LinearForm::var(1), start));
    SeriesVector rhs = apply(t.r, {0, 1}, LinearForm::sum(0, 1, 1, 1), start);
    rhs = apply(t.r, {1, 2}, LinearForm::var(0), rhs);
    rhs = apply(t.u.y, {0, 1}, LinearForm::var(1), rhs);
    left.record(label3(V, U, U, idx), {U, V}, vector_equal(lhs, rhs, w2));
  }
  left.finish(report);

  // R(x1)(Y(x2)⊗1) = (1⊗Y(x2)) R^{12}(x1-x2) R^{23}(x1)   on V⊗V⊗U
  IdentityCheck right("twist hexagon: R(x1)(Y(x2)⊗1) = (1⊗Y(x2))R12(x1-x2)R23(x1)");
  for (const auto& idx : all_indices({V, V, U})) {
    const SeriesVector start = SeriesVector::basis({V, V, U}, kX1X2, w2, idx);
    const SeriesVector lhs =
        apply(t.r, {0, 1}, LinearForm::var(0), apply(t.v.y, {0, 1}, LinearForm::var(1), start));
    SeriesVector rhs = apply(t.r, {1, 2}, LinearForm::var(0), start);
    rhs = apply(t.r, {0, 1}, LinearForm::sum(0, 1, 1, -1), rhs);
    rhs = apply(t.v.y, {1, 2}, LinearForm::var(1), rhs);
    right.record(label3(V, V, U, idx), {U, V}, vector_equal(lhs, rhs, w2));
  }
  right.finish(report);
  return report;
}

TwistOp invert_twisting(const TwistOp& r, const CheckOptions& opts) {
  TwistOp out = r;
  SeriesMap inv = invert(r.r);
  const Window w = opts.window(1);
  const SeriesMap id_vu = lift(SeriesMap::identity(r.r.domain()), kX, r.r.window());
  const SeriesMap id_uv = lift(SeriesMap::identity(r.r.codomain()), kX, r.r.window());
  if (!map_equal(compose(inv, r.r), id_vu, w).holds() || !map_equal(compose(r.r, inv), id_uv, w).holds())
    throw NotInvertible(0, total_dimension(r.r.domain()));
  out.inverse = std::move(inv);
  return out;
}

TwistOp reversed_twisting(const TwistOp& r, const CheckOptions& opts) {
  const TwistOp inv = r.inverse ? r : invert_twisting(r, opts);
  TwistOp out = make_twist(r.name + "-reversed", r.v, r.u, reflect(*inv.inverse));
  out.inverse = reflect(r.r);
  return out;
}

}  // namespace nvaw
