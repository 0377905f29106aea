#include <gtest/gtest.h>

#include "support.hpp"

namespace nvaw {
namespace {

using testing::algebra_from;
using testing::column_text;
using testing::idx;
using testing::registry_algebra;
using testing::verdict_of_identity;

// Associative but not a vertex algebra in disguise: (aa)a = ba = b while a(aa) = ab = 0.
const char* const kNonAssociative = R"(space N basis 1 a b
vacuum N 1
y N 1 1 -> (1):1
y N 1 a -> (a):1
y N 1 b -> (b):1
y N a 1 -> (a):1
y N b 1 -> (b):1
y N a a -> (b):1
y N b a -> (b):1
)";

const char* const kDoubledUnit = R"(space B basis 1 v
vacuum B 1
y B 1 1 -> (1):1
y B 1 v -> (v):2
y B v 1 -> (v):1
)";

TEST(Vacuum, DualNumbersPassExactly) {
  const CheckReport r = check_vacuum(registry_algebra("E1"));
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.exact());
}

TEST(Vacuum, DerivationAlgebraCreatesWithFirstOrderTerm) {
  const Nva e2 = registry_algebra("E2");
  const SeriesVector created = vertex_image(e2, idx(e2.space, "s"), e2.vacuum, Window::uniform(1, -8, 8));
  // Oracle: Y(s,x)1 = exp(xD)s = s + x t.
  EXPECT_EQ(testing::coeff(created.entry({idx(e2.space, "s")}), 0), 1);
  EXPECT_EQ(testing::coeff(created.entry({idx(e2.space, "t")}), 1), 1);
  EXPECT_EQ(created.entries().size(), 2u);
  const CheckReport r = check_vacuum(e2);
  EXPECT_TRUE(r.exact());
  EXPECT_EQ(verdict_of_identity(r, "creation limit"), Verdict::ExactPass);
}

TEST(Vacuum, ScaledUnitFailsWithWitness) {
  const CheckReport r = check_vacuum(algebra_from(kDoubledUnit));
  const IdentityResult& unit = testing::identity_result(r, "vacuum acts as identity");
  EXPECT_EQ(unit.verdict, Verdict::Fail);
  EXPECT_NE(unit.witness.find('v'), std::string::npos) << unit.witness;
  EXPECT_FALSE(r.passed());
}

TEST(WeakAssociativity, ConstantTablesNeedNoPower) {
  for (const char* name : {"E1", "E2", "Z2"}) {
    const CheckReport r = check_weak_associativity(registry_algebra(name));
    EXPECT_TRUE(r.exact()) << name << "\n" << r.to_text();
    ASSERT_FALSE(r.results.empty());
    EXPECT_EQ(r.results.front().max_k, 0) << name;
  }
}

TEST(WeakAssociativity, NonAssociativeTableFindsNoPower) {
  const CheckReport r = check_weak_associativity(algebra_from(kNonAssociative));
  EXPECT_EQ(r.results.front().verdict, Verdict::NoKFound);
  EXPECT_FALSE(r.results.front().witness.empty());
}

TEST(WeakAssociativity, WitnessedPowersStayValidOneHigher) {
  for (const RegistryEntry& e : registry()) {
    const Nva a = registry_algebra(e.name);
    const NvaModule adj = adjoint_module(a);
    const Window w = CheckOptions{}.window(2);
    const int n = static_cast<int>(a.dimension());
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        for (int x = 0; x < n; ++x) {
          VectorEquality last;
          const auto k = search_k(10, [&](int k) { return weak_associativity_at(adj, u, v, x, k, w); }, last);
          ASSERT_TRUE(k) << e.name;
          EXPECT_TRUE(weak_associativity_at(adj, u, v, x, *k + 1, w).holds()) << e.name;
        }
  }
}

TEST(DOperator, VanishesOnConstantTables) {
  const SeriesMap d = compute_D(registry_algebra("E1"));
  EXPECT_TRUE(d.columns().empty());
}

TEST(DOperator, DerivationAlgebraSendsSToT) {
  const Nva e2 = registry_algebra("E2");
  const SeriesMap d = compute_D(e2);
  EXPECT_EQ(column_text(d, {idx(e2.space, "s")}), "(t):1");
  EXPECT_EQ(column_text(d, {idx(e2.space, "t")}), "0");
  EXPECT_EQ(column_text(d, {e2.vacuum}), "0");
}

TEST(DOperator, KillsVacuumEverywhere) {
  for (const RegistryEntry& e : registry()) {
    const Nva a = registry_algebra(e.name);
    EXPECT_EQ(column_text(compute_D(a), {a.vacuum}), "0") << e.name;
  }
}

TEST(DOperator, BracketHoldsAndWrongOperatorIsCaught) {
  const Nva e2 = registry_algebra("E2");
  EXPECT_TRUE(check_D_bracket(e2).exact());
  EXPECT_TRUE(check_D_bracket(registry_algebra("E1")).exact());
  SeriesMap wrong = SeriesMap::constant_map({e2.space}, {e2.space});
  wrong.set({idx(e2.space, "s")}, {idx(e2.space, "s")}, Series::constant(1));
  const CheckReport r = check_D_bracket(e2, wrong);
  EXPECT_FALSE(r.passed());
}

TEST(DOperator, CreationIsTheExponentialOfD) {
  for (const RegistryEntry& e : registry()) {
    const CheckReport r = check_creation_exponential(registry_algebra(e.name));
    EXPECT_TRUE(r.exact()) << e.name << "\n" << r.to_text();
  }
}

TEST(Modules, AdjointModuleMatchesAlgebraVerdicts) {
  for (const char* name : {"E1", "E2", "Z2", "Cl2"}) {
    const Nva a = registry_algebra(name);
    EXPECT_EQ(check_module(adjoint_module(a), ModuleForm::Original).passed(), check_weak_associativity(a).passed())
        << name;
  }
  const Nva bad = algebra_from(kNonAssociative);
  EXPECT_FALSE(check_module(adjoint_module(bad), ModuleForm::Original).passed());
  EXPECT_FALSE(check_weak_associativity(bad).passed());
}

TEST(Modules, SubstitutedFormOnDerivationAlgebra) {
  const CheckReport r = check_module(adjoint_module(registry_algebra("E2")), ModuleForm::Substituted);
  EXPECT_TRUE(r.exact()) << r.to_text();
  for (const IdentityResult& id : r.results)
    if (id.max_k) EXPECT_EQ(*id.max_k, 0) << id.identity;
}

TEST(Modules, BrokenUnitFailsUnitAxiom) {
  const Nva z2 = registry_algebra("Z2");
  SeriesMap y = adjoint_module(z2).y;
  y.set({z2.vacuum, 1}, {1}, testing::sx("3"));
  const NvaModule m = make_module("scaled", z2, z2.space, y);
  EXPECT_EQ(verdict_of_identity(check_module(m, ModuleForm::Original), "module vacuum"), Verdict::Fail);
}

TEST(Modules, BothFormsAgreeAcrossRegistry) {
  for (const RegistryEntry& e : registry()) {
    const NvaModule m = adjoint_module(registry_algebra(e.name));
    EXPECT_EQ(check_module(m, ModuleForm::Original).passed(), check_module(m, ModuleForm::Substituted).passed())
        << e.name;
  }
  const NvaModule bad = adjoint_module(algebra_from(kNonAssociative));
  EXPECT_FALSE(check_module(bad, ModuleForm::Original).passed());
  EXPECT_FALSE(check_module(bad, ModuleForm::Substituted).passed());
}

TEST(Nva, MakeRejectsMisshapenTable) {
  const Space v("V", {"1", "a"});
  SeriesMap bad({v}, {v}, {"x"}, Window::uniform(1, -8, 8));
  EXPECT_THROW(make_nva("bad", v, "1", bad), std::invalid_argument);
  EXPECT_THROW(make_nva("bad", v, "missing", SeriesMap({v, v}, {v}, {"x"}, Window::uniform(1, -8, 8))),
               std::exception);
}

}  // namespace
}  // namespace nvaw
