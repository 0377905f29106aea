#include <gtest/gtest.h>

#include "support.hpp"

namespace nvaw {
namespace {

using testing::column_text;
using testing::verdict_of_identity;
using testing::w1;

// Extra declarations on top of the registry Z2 file: a one-dimensional bialgebra Q, broken
// coalgebras and actions, and coactions of several kinds.
const char* const kExtras = R"(
space Q basis 1
vacuum Q 1
y Q 1 1 -> (1):1
coalg unit Q
delta 1 -> (1,1):1
eps 1 1
coalg lopsided Z2
delta 1 -> (1,1):1
delta g -> (g,1):1
eps 1 1
eps g 1
coalg primitive Z2
delta 1 -> (1,1):1
delta g -> (g,1):1 ; (1,g):1
eps 1 1
eps g 0
action leaky Z2 Z2
a 1 1 -> (1):1
a 1 g -> (g):1
a g 1 -> (1):-1
a g g -> (g):-1
coaction even Z2 Z2
rho 1 -> (1,1):1
rho g -> (1,g):1
coaction shifted Z2 Z2
rho 1 -> (g,1):1
rho g -> (1,g):1
coaction scalar Z2 Q
rho 1 -> (1,1):1
coaction overQ Q Z2
rho 1 -> (1,1):1
rho g -> (1,g):1
)";

const WorkbenchFile& file() {
  static const WorkbenchFile f = parse_file(find_registry_entry("Z2")->text + kExtras);
  return f;
}

VertexBialgebra z2_group() { return bialgebra_of(file(), "Z2"); }

VertexBialgebra with_coalgebra(const std::string& name) {
  return VertexBialgebra{algebra_of(file(), "Z2"), coalgebra_of(file(), name)};
}

TEST(Coalgebra, GroupLikeAndUnitPass) {
  EXPECT_TRUE(check_coalgebra(coalgebra_of(file(), "group")).exact());
  EXPECT_TRUE(check_coalgebra(coalgebra_of(file(), "unit")).exact());
  EXPECT_TRUE(check_coalgebra(coalgebra_of(file(), "primitive")).exact());
}

TEST(Coalgebra, OneSidedCoproductFailsCounit) {
  const CheckReport r = check_coalgebra(coalgebra_of(file(), "lopsided"));
  EXPECT_EQ(verdict_of_identity(r, "(ε⊗1)Δ"), Verdict::Fail);
  EXPECT_FALSE(r.passed());
}

TEST(Bialgebra, GroupAlgebraAndGroundField) {
  EXPECT_TRUE(check_vertex_bialgebra(z2_group()).exact());
  EXPECT_TRUE(check_vertex_bialgebra(bialgebra_of(file(), "Q")).exact());
}

TEST(Bialgebra, PrimitiveCoproductIsNotMultiplicative) {
  const CheckReport r = check_vertex_bialgebra(with_coalgebra("primitive"));
  EXPECT_EQ(verdict_of_identity(r, "coproduct intertwines"), Verdict::Fail);
  EXPECT_FALSE(r.passed());
}

TEST(ModuleAlgebra, SignAndTrivialActionsPass) {
  for (const char* name : {"sign", "trivial"}) {
    const CheckReport r = check_module_algebra(action_of(file(), name));
    EXPECT_TRUE(r.exact()) << name << "\n" << r.to_text();
    EXPECT_EQ(verdict_of_identity(r, "action composition"), Verdict::ExactPass);
  }
}

TEST(ModuleAlgebra, ActionMovingTheVacuumFails) {
  const CheckReport r = check_module_algebra(action_of(file(), "leaky"));
  EXPECT_EQ(verdict_of_identity(r, "action on the vacuum"), Verdict::Fail);
}

TEST(ComoduleAlgebra, CoproductAndTrivialCoactionsPass) {
  EXPECT_TRUE(check_comodule_algebra(coaction_of(file(), "grading")).exact());
  EXPECT_TRUE(check_comodule_algebra(coaction_of(file(), "even")).exact());
  EXPECT_TRUE(check_comodule_algebra(coaction_of(file(), "scalar")).exact());
}

TEST(ComoduleAlgebra, ShiftedGradingIsAComoduleButNotMultiplicative) {
  const CheckReport r = check_comodule_algebra(coaction_of(file(), "shifted"));
  EXPECT_EQ(verdict_of_identity(r, "(Δ⊗1)ρ"), Verdict::ExactPass);
  EXPECT_EQ(verdict_of_identity(r, "(ε⊗1)ρ"), Verdict::ExactPass);
  EXPECT_EQ(verdict_of_identity(r, "coaction preserves the vacuum"), Verdict::Fail);
  EXPECT_EQ(verdict_of_identity(r, "coaction intertwines"), Verdict::Fail);
}

TEST(Smash, TrivialDataGiveTheOrdinaryProduct) {
  const ModuleAlgebraData u = action_of(file(), "trivial");
  const ProductNva s = build_smash(u, coaction_of(file(), "even"));
  EXPECT_EQ(s.provenance, Provenance::Smash);
  const ProductNva ordinary = build_ordinary_tensor(s.u, s.v);
  EXPECT_TRUE(compare_tables("smash = ordinary", s.algebra.y, ordinary.algebra.y, w1()).exact());
  // Trivial action, nontrivial grading: the action ignores the grading, so nothing changes.
  const ProductNva graded = build_smash(u, coaction_of(file(), "grading"));
  EXPECT_TRUE(compare_tables("smash = ordinary", graded.algebra.y, ordinary.algebra.y, w1()).exact());
}

TEST(Smash, SignActionSignsEveryOddPassage) {
  const ProductNva s = build_smash(action_of(file(), "sign"), coaction_of(file(), "grading"));
  EXPECT_TRUE(check_nva_suite(s.algebra).exact());
  // Oracle: Y(u⊗v,x)(u'⊗v') = (-1)^(|v||u'|) uu'⊗vv', with index 2u+v and g odd.
  const Space& P = s.algebra.space;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const int sign = (a % 2) * (b / 2) ? -1 : 1;
      const int target = 2 * ((a / 2) ^ (b / 2)) + ((a % 2) ^ (b % 2));
      EXPECT_EQ(column_text(s.algebra.y, {a, b}),
                "(" + P.label(static_cast<std::size_t>(target)) + "):" + std::to_string(sign))
          << a << " " << b;
    }
  EXPECT_EQ(column_text(s.algebra.y, {3, 3}), "(1|1):-1");
}

TEST(Smash, MismatchedBialgebrasAreRejected) {
  try {
    build_smash(action_of(file(), "sign"), coaction_of(file(), "overQ"));
    FAIL() << "expected PreconditionFail";
  } catch (const PreconditionFail& e) {
    EXPECT_EQ(e.hypothesis(), "same bialgebra");
  }
}

TEST(Smash, FailingActionIsRejected) {
  EXPECT_THROW(build_smash(action_of(file(), "leaky"), coaction_of(file(), "grading")), PreconditionFail);
}

TEST(SmashAsTwist, SignDatumGivesTheSignTwist) {
  const SmashAsTwist t = smash_as_twist(action_of(file(), "sign"), coaction_of(file(), "grading"));
  EXPECT_TRUE(t.report.exact()) << t.report.to_text();
  EXPECT_TRUE(map_equal(t.twist.r, twist_of(file(), "R_sign").r, w1()).holds());
}

TEST(SmashAsTwist, TrivialActionGivesTheFlip) {
  const ModuleAlgebraData u = action_of(file(), "trivial");
  for (const char* c : {"grading", "even"}) {
    const SmashAsTwist t = smash_as_twist(u, coaction_of(file(), c));
    EXPECT_TRUE(t.report.exact()) << t.report.to_text();
    EXPECT_TRUE(map_equal(t.twist.r, SeriesMap::flip(u.algebra.space, u.algebra.space), w1()).holds());
  }
}

TEST(SmashAsTwist, EveryPassingPairMatchesItsTwistedProduct) {
  for (const char* a : {"sign", "trivial"})
    for (const char* c : {"grading", "even"}) {
      const ModuleAlgebraData u = action_of(file(), a);
      const ComoduleAlgebraData v = coaction_of(file(), c);
      const SmashAsTwist t = smash_as_twist(u, v);
      EXPECT_TRUE(check_twisting_axioms(t.twist).exact()) << a << " " << c;
      const ProductNva twisted = build_twisted_tensor(t.twist);
      const ProductNva smash = build_smash(u, v);
      for (const IndexTuple& col : all_indices(smash.algebra.y.domain()))
        EXPECT_EQ(vector_equal(smash.algebra.y.image(col), twisted.algebra.y.image(col), w1()).kind,
                  CertifiedEquality::Kind::ExactlyEqual);
    }
}

TEST(ActionModule, SignActionIsAModule) {
  const NvaModule m = action_module(action_of(file(), "sign"));
  EXPECT_TRUE(check_module(m, ModuleForm::Original).exact());
  EXPECT_TRUE(check_module(m, ModuleForm::Substituted).exact());
}

}  // namespace
}  // namespace nvaw
