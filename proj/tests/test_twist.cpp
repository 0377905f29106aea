#include <gtest/gtest.h>

#include "support.hpp"

namespace nvaw {
namespace {

using testing::column_text;
using testing::registry_algebra;
using testing::verdict_of_identity;

std::string z2_with(const std::string& extra) { return find_registry_entry("Z2")->text + extra; }

TwistOp z2_twist(const std::string& extra, const std::string& name) { return twist_of(parse_file(z2_with(extra)), name); }

TwistOp sign_twist() { return twist_of(testing::registry_file("Z2"), "R_sign"); }

const char* const kBrokenSign = R"(
twist broken Z2 Z2
r 1 1 -> (1,1):1
r 1 g -> (g,1):1
r g 1 -> (1,g):-1
r g g -> (g,g):1
)";

const char* const kDegenerate = R"(
twist degenerate Z2 Z2
r 1 1 -> (1,1):1
r 1 g -> (g,1):1
r g 1 -> (1,g):1
)";

TEST(TwistAxioms, FlipPassesOnEveryRegistryPair) {
  for (const char* u : {"E1", "E2", "Z2"})
    for (const char* v : {"E1", "Z2", "E1n"}) {
      const TwistOp f = flip_twist(registry_algebra(u), registry_algebra(v), Window::uniform(1, -8, 8));
      const CheckReport r = check_twisting_axioms(f);
      EXPECT_TRUE(r.exact()) << u << " " << v << "\n" << r.to_text();
    }
}

TEST(TwistAxioms, SignTwistPassesExactly) {
  const CheckReport r = check_twisting_axioms(sign_twist());
  EXPECT_TRUE(r.exact()) << r.to_text();
  EXPECT_EQ(r.results.size(), 4u);
}

TEST(TwistAxioms, BrokenSignFailsVacuum) {
  const CheckReport r = check_twisting_axioms(z2_twist(kBrokenSign, "broken"));
  EXPECT_EQ(verdict_of_identity(r, "R(x)(v⊗1) = 1⊗v"), Verdict::Fail);
  EXPECT_FALSE(r.passed());
}

TEST(TwistAxioms, VacuumOnBothLegsIsFixed) {
  for (const TwistOp& r : {sign_twist(), flip_twist(registry_algebra("E2"), registry_algebra("E1"),
                                                     Window::uniform(1, -8, 8))}) {
    ASSERT_TRUE(check_twisting_axioms(r).passed());
    EXPECT_EQ(column_text(r.r, {r.v.vacuum, r.u.vacuum}), "(" + r.u.space.label(0) + "|" + r.v.space.label(0) + "):1");
  }
}

TEST(Inverse, FlipIsAnInvolution) {
  const Nva z2 = registry_algebra("Z2");
  const TwistOp f = invert_twisting(flip_twist(z2, z2, Window::uniform(1, -8, 8)));
  ASSERT_TRUE(f.inverse);
  EXPECT_TRUE(map_equal(*f.inverse, f.r, Window::uniform(1, -8, 8)).holds());
}

TEST(Inverse, SignTwistSquaresToOne) {
  const TwistOp r = invert_twisting(sign_twist());
  ASSERT_TRUE(r.inverse);
  EXPECT_EQ(column_text(*r.inverse, {1, 1}), "(g|g):-1");
  EXPECT_TRUE(map_equal(*r.inverse, r.r, Window::uniform(1, -8, 8)).holds());
}

TEST(Inverse, ZeroColumnIsNotInvertible) {
  try {
    invert_twisting(z2_twist(kDegenerate, "degenerate"));
    FAIL() << "expected NotInvertible";
  } catch (const NotInvertible& e) {
    EXPECT_EQ(e.rank(), 3u);
    EXPECT_EQ(e.dimension(), 4u);
  }
}

TEST(Reversed, FlipAndSignReverseToThemselves) {
  const Window w = Window::uniform(1, -8, 8);
  const Nva e1 = registry_algebra("E1");
  const Nva z2 = registry_algebra("Z2");
  const TwistOp flip = reversed_twisting(flip_twist(e1, z2, w));
  EXPECT_EQ(flip.u.name, z2.name);
  EXPECT_EQ(flip.v.name, e1.name);
  EXPECT_TRUE(map_equal(flip.r, SeriesMap::flip(z2.space, e1.space), w).holds());
  const TwistOp sign = reversed_twisting(sign_twist());
  EXPECT_TRUE(map_equal(sign.r, sign_twist().r, w).holds());
}

TEST(Reversed, EveryInvertibleRegistryTwistReversesToATwist) {
  const Window w = Window::uniform(1, -8, 8);
  std::vector<TwistOp> twists = {sign_twist()};
  for (const char* u : {"E1", "E2", "Z2", "E1n"})
    for (const char* v : {"E1", "Z2"}) twists.push_back(flip_twist(registry_algebra(u), registry_algebra(v), w));
  for (const TwistOp& r : twists) {
    const TwistOp rev = reversed_twisting(invert_twisting(r));
    EXPECT_TRUE(check_twisting_axioms(rev).passed()) << r.u.name << " " << r.v.name;
    const TwistOp back = reversed_twisting(rev);
    EXPECT_TRUE(map_equal(back.r, r.r, w).holds()) << r.u.name << " " << r.v.name;
  }
}

TEST(MakeTwist, RejectsWrongShape) {
  const Nva z2 = registry_algebra("Z2");
  const Nva e2 = registry_algebra("E2");
  EXPECT_THROW(make_twist("bad", z2, e2, flip_twist(z2, z2, Window::uniform(1, -8, 8)).r), std::invalid_argument);
}

}  // namespace
}  // namespace nvaw
