#include <gtest/gtest.h>

#include "nvaw/linear_solve.hpp"
#include "support.hpp"

namespace nvaw {
namespace {

using testing::sx;
using testing::w1;

const Space A("A", {"a0", "a1"});
const Space B("B", {"b0", "b1", "b2"});
const Space C("C", {"c0", "c1"});
const Space D("D", {"d0", "d1"});

TEST(Space, RejectsDuplicatesAndEmpty) {
  EXPECT_THROW(Space("X", {"p", "p"}), std::invalid_argument);
  EXPECT_THROW(Space("X", {}), std::invalid_argument);
  EXPECT_EQ(B.index_of("b2"), 2);
  EXPECT_EQ(product_space(A, B).label(4), "a1|b1");
  EXPECT_EQ(product_index(B, 1, 1), 4);
}

TEST(LegEmbed, FlipOnMiddleLegsSwapsOnlyThose) {
  const SeriesMap s23 = leg_embed(SeriesMap::flip(B, C), {1, 2}, {A, B, C, D});
  EXPECT_EQ(s23.codomain(), (SpaceList{A, C, B, D}));
  const SeriesVector img = s23.image({1, 2, 0, 1});
  EXPECT_EQ(img.entries().size(), 1u);
  EXPECT_EQ(img.entry({1, 0, 2, 1}).coefficient({}), 1);
}

TEST(LegEmbed, IdentityStaysIdentity) {
  const SpaceList ambient = {A, B, C};
  const SeriesMap e = leg_embed(SeriesMap::identity({B}), {1}, ambient);
  EXPECT_TRUE(map_equal(e, SeriesMap::identity(ambient), Window()).holds());
}

TEST(LegEmbed, RespectsComposition) {
  SeriesMap f = SeriesMap::constant_map({B}, {B});
  SeriesMap g = SeriesMap::constant_map({B}, {B});
  f.set({0}, {1}, Series::constant(2));
  f.set({1}, {2}, Series::constant(1));
  f.set({2}, {0}, Series::constant(-1));
  g.set({0}, {0}, Series::constant(3));
  g.set({1}, {0}, Series::constant(1));
  g.set({2}, {2}, Series::constant(ExactScalar(1, 2)));
  const SpaceList ambient = {A, B, C};
  EXPECT_TRUE(map_equal(leg_embed(compose(f, g), {1}, ambient),
                        compose(leg_embed(f, {1}, ambient), leg_embed(g, {1}, ambient)), Window())
                  .holds());
}

TEST(Permutation, DoubleFlipsAreIdentities) {
  const std::vector<SpaceList> lists = {{A, B}, {A, B, C}, {A, B, C, D}};
  for (const auto& spaces : lists) {
    std::vector<int> order(spaces.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::swap(order.front(), order.back());
    const SeriesMap p = SeriesMap::permutation(spaces, order);
    const SeriesMap pp = compose(SeriesMap::permutation(p.codomain(), order), p);
    EXPECT_TRUE(map_equal(pp, SeriesMap::identity(spaces), Window()).holds()) << spaces.size();
  }
  const SeriesMap s = SeriesMap::flip(A, A);
  EXPECT_TRUE(map_equal(compose(s, s), SeriesMap::identity({A, A}), Window()).holds());
}

TEST(Compose, IdentityIsNeutral) {
  SeriesMap f({A}, {B}, {"x"}, w1());
  f.set({0}, {1}, sx("1@(-1) + 2"));
  f.set({1}, {2}, sx("3@(2)"));
  EXPECT_TRUE(map_equal(compose(SeriesMap::identity({B}), f), f, w1()).holds());
  EXPECT_TRUE(map_equal(compose(f, SeriesMap::identity({A})), f, w1()).holds());
  EXPECT_THROW(compose(f, f), std::invalid_argument);
}

TEST(Tensor, OneDimensionalFactorsMultiplySeries) {
  const Space one("Q", {"1"});
  SeriesMap f({one}, {one}, {"x"}, w1()), g({one}, {one}, {"x"}, w1());
  f.set({0}, {0}, sx("1 + 1@(1)"));
  g.set({0}, {0}, sx("1 - 1@(1)"));
  const SeriesMap t = tensor(f, g);
  EXPECT_EQ(series_literal(t.entry({0, 0}, {0, 0})), "1 - 1@(2)");
}

TEST(Invert, LowestDegreeRule) {
  SeriesMap m({A}, {A}, {"x"}, w1());
  m.set({0}, {0}, sx("1"));
  m.set({0}, {1}, sx("1@(1)"));
  m.set({1}, {1}, sx("1"));
  const SeriesMap inv = invert(m);
  EXPECT_EQ(series_literal(inv.entry({0}, {1})), "-1@(1)");
  EXPECT_TRUE(map_equal(compose(m, inv), lift(SeriesMap::identity({A}), {"x"}, w1()), w1()).holds());
  SeriesMap singular({A}, {A}, {"x"}, w1());
  singular.set({0}, {0}, sx("1"));
  EXPECT_THROW(invert(singular), NotInvertible);
}

SeriesVector scalar_vector(const Series& s) {
  const Space one("Q", {"1"});
  SeriesVector v({one}, {"x"}, w1());
  v.add({0}, s);
  return v;
}

TEST(SolveLinear, UniqueSolution) {
  // x * a = x
  const SeriesSolveResult r =
      solve_series_equations({SeriesEquation{{{0, scalar_vector(sx("1@(1)"))}}, scalar_vector(sx("1@(1)"))}}, 1, w1());
  ASSERT_EQ(r.solution.kind, LinearSolution::Kind::Unique);
  EXPECT_EQ(r.solution.values[0], 1);
  EXPECT_TRUE(r.exact);
}

TEST(SolveLinear, Underdetermined) {
  LinearSystem s(1);
  s.add_equation({{0, 0}}, 0);
  const LinearSolution r = s.solve();
  EXPECT_EQ(r.kind, LinearSolution::Kind::Underdetermined);
  EXPECT_EQ(r.rank, 0u);
  EXPECT_EQ(r.nullity, 1u);
}

TEST(SolveLinear, Inconsistent) {
  LinearSystem s(1);
  s.add_equation({{0, 0}}, 1, "zero equals one");
  const LinearSolution r = s.solve();
  EXPECT_EQ(r.kind, LinearSolution::Kind::Inconsistent);
  EXPECT_EQ(r.witness, "zero equals one");
}

TEST(SolveLinear, ExactEliminationOverQ) {
  // 2a + b = 1, a - b = 1/2  ->  a = 1/2, b = 0; third row redundant
  LinearSystem s(2);
  s.add_equation({{0, 2}, {1, 1}}, 1);
  s.add_equation({{0, 1}, {1, -1}}, ExactScalar(1, 2));
  s.add_equation({{0, 3}}, ExactScalar(3, 2));
  const LinearSolution r = s.solve();
  ASSERT_EQ(r.kind, LinearSolution::Kind::Unique);
  EXPECT_EQ(r.values[0], ExactScalar(1, 2));
  EXPECT_EQ(r.values[1], 0);
  EXPECT_EQ(sparse_rank({{{0, 1}, {1, 1}}, {{0, 2}, {1, 2}}, {{1, 5}}}), 2u);
}

}  // namespace
}  // namespace nvaw
