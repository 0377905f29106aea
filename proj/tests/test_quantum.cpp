#include <gtest/gtest.h>

#include "support.hpp"

namespace nvaw {
namespace {

using testing::column_text;
using testing::registry_algebra;
using testing::verdict_of_identity;
using testing::w1;

SMap identity_on(const char* name) { return identity_smap(registry_algebra(name), w1()); }

SMap cl2_sign() { return smap_of(testing::registry_file("Cl2"), "sign"); }

/// S on Z2 that is the identity except for the scalar c on the two mixed vacuum columns.
SMap z2_vacuum_scaled(const ExactScalar& c) {
  const Nva z2 = registry_algebra("Z2");
  SeriesMap t = identity_smap(z2, w1()).table;
  t.set({0, 1}, {0, 1}, Series::constant(c));
  t.set({1, 0}, {1, 0}, Series::constant(c));
  return make_smap("scaled", z2, t);
}

ProductNva sign_product() { return build_twisted_tensor(twist_of(testing::registry_file("Z2"), "R_sign")); }

/// S21(-x) = reflect(σ S σ).
SeriesMap opposite_reflected(const SMap& s) {
  const Space& v = s.algebra.space;
  return reflect(compose(SeriesMap::flip(v, v), compose(s.table, SeriesMap::flip(v, v))));
}

TEST(SLocality, CommutativeAlgebraWithIdentity) {
  const CheckReport r = check_S_locality(identity_on("E2"));
  EXPECT_TRUE(r.exact()) << r.to_text();
  EXPECT_EQ(r.results.front().max_k, 0);
}

TEST(SLocality, AnticommutingGeneratorsWithSignMap) {
  EXPECT_TRUE(check_S_locality(cl2_sign()).exact());
  EXPECT_TRUE(check_S_skew(cl2_sign()).exact());
}

TEST(SLocality, NoncommutativeAlgebraFindsNoPower) {
  const CheckReport r = check_S_locality(identity_on("E1n"));
  EXPECT_EQ(r.results.front().verdict, Verdict::NoKFound);
  EXPECT_EQ(check_S_skew(identity_on("E1n")).results.front().verdict, Verdict::Fail);
}

TEST(SSkew, CommutativeAlgebrasWithIdentity) {
  for (const char* name : {"E1", "E2", "Z2"}) EXPECT_TRUE(check_S_skew(identity_on(name)).exact()) << name;
}

TEST(SLocality, AgreesWithSkewOnEveryInstance) {
  std::vector<SMap> instances = {cl2_sign(), z2_vacuum_scaled(-1)};
  for (const RegistryEntry& e : registry()) instances.push_back(identity_on(e.name.c_str()));
  bool saw_pass = false, saw_fail = false;
  for (const SMap& s : instances) {
    const bool local = check_S_locality(s).passed();
    const bool skew = check_S_skew(s).passed();
    EXPECT_EQ(local, skew) << s.algebra.name << " " << s.name;
    (local ? saw_pass : saw_fail) = true;
  }
  EXPECT_TRUE(saw_pass);
  EXPECT_TRUE(saw_fail);
}

TEST(QybUnitarity, IdentityAndSignPass) {
  EXPECT_TRUE(check_qyb_unitarity(identity_on("E2")).exact());
  EXPECT_TRUE(check_qyb_unitarity(cl2_sign()).exact());
}

TEST(QybUnitarity, DoubledIdentityIsNotUnitary) {
  const Nva e1 = registry_algebra("E1");
  const SMap doubled = make_smap("doubled", e1, 2 * identity_smap(e1, w1()).table);
  const CheckReport r = check_qyb_unitarity(doubled);
  EXPECT_EQ(verdict_of_identity(r, "unitarity"), Verdict::Fail);
  EXPECT_TRUE(is_pass(verdict_of_identity(r, "Yang-Baxter")));
}

TEST(QybUnitarity, InverseIsTheOppositeReflection) {
  for (const SMap& s : {identity_on("E2"), cl2_sign(), z2_vacuum_scaled(-1)}) {
    ASSERT_TRUE(check_qyb_unitarity(s).passed());
    EXPECT_TRUE(map_equal(invert(s.table), opposite_reflected(s), w1()).holds()) << s.name;
  }
}

TEST(QvaAxioms, IdentityAndSignPassAllSeven) {
  for (const SMap& s : {identity_on("E2"), identity_on("Z2"), cl2_sign()}) {
    const CheckReport r = check_qva_axioms(s);
    EXPECT_TRUE(r.exact()) << r.to_text();
    EXPECT_GE(r.results.size(), 7u);
  }
}

TEST(QvaAxioms, PartnersAgree) {
  for (const SMap& s : {identity_on("E2"), cl2_sign(), z2_vacuum_scaled(-1), identity_on("E1n")}) {
    const CheckReport r = check_qva_axioms(s);
    for (const auto& [defining, partner] : qva_partner_identities())
      EXPECT_EQ(is_pass(r.verdict(defining)), is_pass(r.verdict(partner))) << s.name << ": " << defining;
  }
}

TEST(QvaAxioms, BrokenVacuumLegFailsBothForms) {
  const CheckReport r = check_qva_axioms(z2_vacuum_scaled(-1));
  EXPECT_EQ(verdict_of_identity(r, "S vacuum: "), Verdict::Fail);
  EXPECT_EQ(verdict_of_identity(r, "S vacuum, partner form"), Verdict::Fail);
}

TEST(ExtractS, OneDimensionalAlgebraRecoversIdentity) {
  const Nva q = testing::algebra_from("space Q basis 1\nvacuum Q 1\ny Q 1 1 -> (1):1\n");
  const SExtraction ex = extract_S(q);
  EXPECT_TRUE(map_equal(ex.smap.table, identity_smap(q, w1()).table, w1()).holds());
  EXPECT_TRUE(ex.report.passed()) << ex.report.to_text();
  EXPECT_EQ(ex.z2.kernel_rank, 0u);
}

TEST(ExtractS, HigherDimensionalAlgebrasAreUnderdetermined) {
  // Z2 is never injective at truncation once the dimension is at least two, so the skew
  // symmetry leaves a kernel of solutions in every column.
  for (const char* name : {"E1", "E2", "Cl2"}) {
    try {
      extract_S(registry_algebra(name));
      FAIL() << name;
    } catch (const ExtractionFail& e) {
      EXPECT_EQ(e.kind(), ExtractionFailure::Underdetermined) << name;
    }
  }
}

TEST(TwistFromSMap, PassingSMapsGiveTwistingOperators) {
  for (const SMap& s : {identity_on("E1"), identity_on("E2"), identity_on("Z2"), cl2_sign()}) {
    ASSERT_TRUE(check_qva_axioms(s).passed());
    const TwistOp r = twist_from_smap(s);
    EXPECT_TRUE(check_twisting_axioms(r).exact()) << s.algebra.name << " " << s.name;
    EXPECT_TRUE(invert_twisting(r).inverse.has_value());
  }
}

TEST(ProductSMap, FlipWithIdentitiesIsPlainTransposition) {
  const Nva e2 = registry_algebra("E2");
  const ProductNva p = build_twisted_tensor(flip_twist(e2, e2, w1()));
  const SMap s = build_S_R(p, identity_smap(e2, w1()), identity_smap(e2, w1()));
  EXPECT_TRUE(map_equal(s.table, identity_smap(p.algebra, w1()).table, w1()).holds());
  EXPECT_TRUE(check_S_skew(s).exact());
  EXPECT_TRUE(check_S_locality(s).exact());
}

TEST(ProductSMap, SignProductGetsBilinearSigns) {
  const ProductNva p = sign_product();
  const Nva z2 = registry_algebra("Z2");
  const SMap s = build_S_R(p, identity_smap(z2, w1()), identity_smap(z2, w1()));
  // Oracle: basis element (a1, a2) of Z2⊗Z2 records which factors carry g; composing the legs by
  // hand leaves the sign (-1)^(a1 b2 + a2 b1) on the pair (a, b).
  const Space& P = p.algebra.space;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const int sign = ((a / 2) * (b % 2) + (a % 2) * (b / 2)) % 2 ? -1 : 1;
      EXPECT_EQ(column_text(s.table, {a, b}),
                "(" + P.label(static_cast<std::size_t>(a)) + "|" + P.label(static_cast<std::size_t>(b)) +
                    "):" + std::to_string(sign))
          << a << " " << b;
    }
  EXPECT_TRUE(check_S_skew(s).exact());
  EXPECT_TRUE(check_S_locality(s).exact());
  EXPECT_TRUE(check_qva_axioms(s).passed());
}

TEST(ProductSMap, BrokenTwistIsRejected) {
  ProductNva p = sign_product();
  const Nva z2 = registry_algebra("Z2");
  p.twist.r.set({1, 0}, {0, 1}, Series::constant(-1));
  try {
    build_S_R(p, identity_smap(z2, w1()), identity_smap(z2, w1()));
    FAIL() << "expected PreconditionFail";
  } catch (const PreconditionFail& e) {
    EXPECT_EQ(e.hypothesis(), "twisting axioms");
  }
}

TEST(MakeSMap, RejectsWrongShape) {
  const Nva e1 = registry_algebra("E1");
  EXPECT_THROW(make_smap("bad", e1, identity_smap(registry_algebra("E2"), w1()).table), std::invalid_argument);
}

}  // namespace
}  // namespace nvaw
