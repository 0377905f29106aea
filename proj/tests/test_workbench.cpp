#include <gtest/gtest.h>

#include "support.hpp"

namespace nvaw {
namespace {

using testing::column_text;
using testing::file_of;

const char* const kE2Line = R"(space V basis one s t
vacuum V one
y V s one -> (s):1 ; (t):1@(1)
)";

int parse_error_column(const std::string& text, int expected_line) {
  try {
    file_of(text);
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), expected_line) << e.what();
    return e.column();
  }
  ADD_FAILURE() << "expected a parse error in:\n" << text;
  return -1;
}

TEST(ParseFile, VertexLineEncodesCreation) {
  const WorkbenchFile f = file_of(kE2Line);
  const AlgebraDecl* v = f.find_space("V");
  ASSERT_NE(v, nullptr);
  EXPECT_EQ(v->vacuum, 0);
  EXPECT_EQ(column_text(v->y, {1, 0}), "(s):1 ; (t):1@(1)");
  EXPECT_EQ(testing::coeff(v->y.entry({1, 0}, {2}), 1), 1);
}

TEST(ParseFile, MissingVertexLinesMeanZero) {
  const WorkbenchFile f = file_of("space V basis 1 a\nvacuum V 1\n");
  const Nva a = algebra_of(f, "V");
  EXPECT_TRUE(a.y.columns().empty());
  EXPECT_FALSE(check_vacuum(a).passed());
}

TEST(ParseFile, CommentsAndBlankLinesAreIgnored) {
  const WorkbenchFile f = file_of("# header\n\nspace V basis 1   # trailing\nvacuum V 1\ny V 1 1 -> (1):1\n");
  EXPECT_TRUE(check_nva_suite(algebra_of(f, "V")).exact());
}

TEST(ParseFile, ErrorsCarryPositions) {
  EXPECT_EQ(parse_error_column("space V basis a a\n", 1), 17);
  EXPECT_EQ(parse_error_column("space V basis 1 a\nvacuum V b\n", 2), 10);
  EXPECT_EQ(parse_error_column("space V basis 1 a\ny V 1 q -> (a):1\n", 2), 7);
  EXPECT_EQ(parse_error_column("space V basis 1 a\ny W 1 1 -> (a):1\n", 2), 3);
  EXPECT_GT(parse_error_column("space V basis 1 a\ny V 1 1 -> (a):1 +\n", 2), 12);
  EXPECT_GT(parse_error_column("space V basis 1 a\ny V 1 1 -> (a):1\ny V 1 1 -> (1):1\n", 3), 0);
  EXPECT_GT(parse_error_column("space V basis 1\nbogus\n", 2), 0);
  EXPECT_GT(parse_error_column("space V basis 1\nr 1 1 -> (1,1):1\n", 2), 0);
}

TEST(ParseFile, LiteralOutsideWindowIsRejected) {
  EXPECT_GT(parse_error_column("space V basis 1\ny V 1 1 -> (1):1@(9)\n", 2), 0);
  EXPECT_NO_THROW(parse_file("space V basis 1\ny V 1 1 -> (1):1@(9)\n", Window::uniform(1, -10, 10)));
}

TEST(Emit, RoundTripIsStableOnRegistry) {
  for (const RegistryEntry& e : registry()) {
    const std::string once = emit_file(parse_file(e.text));
    const WorkbenchFile again = parse_file(once);
    EXPECT_EQ(emit_file(again), once) << e.name;
    EXPECT_EQ(again.blocks.size(), parse_file(e.text).blocks.size()) << e.name;
  }
}

TEST(Emit, ProductFileRoundTripsAndChecks) {
  const WorkbenchFile z2 = testing::registry_file("Z2");
  const ProductNva p = build_twisted_tensor(twist_of(z2, "R_sign"));
  WorkbenchFile out;
  add_algebra(out, p.u);
  add_algebra(out, p.v);
  add_twist(out, p.twist);
  add_algebra(out, p.algebra);
  add_map(out, "embedU", p.embed_u);
  add_map(out, "embedV", p.embed_v);
  const std::string text = emit_file(out);
  const WorkbenchFile back = parse_file(text);
  EXPECT_EQ(emit_file(back), text);
  EXPECT_EQ(primary_algebra(back), p.algebra.space.name());
  const Nva k = algebra_of(back, primary_algebra(back));
  EXPECT_TRUE(map_equal(k.y, p.algebra.y, Window::uniform(1, -8, 8)).holds());
  EXPECT_TRUE(map_equal(map_of(back, "embedU"), p.embed_u, Window()).holds());
  EXPECT_TRUE(check_nva_suite(k).exact());
}

TEST(Emit, SeriesLiteralsAreCanonical) {
  EXPECT_EQ(series_literal(testing::sx("2 - 1/2@(-1) + 0@(3)")), "-1/2@(-1) + 2");
  EXPECT_EQ(series_literal(testing::sx("-3@(2)")), "-3@(2)");
  EXPECT_EQ(series_literal(Series()), "0");
}

TEST(Builders, ConflictingAlgebraIsRejected) {
  WorkbenchFile f;
  const Nva z2 = testing::registry_algebra("Z2");
  add_algebra(f, z2);
  EXPECT_NO_THROW(add_algebra(f, z2));
  Nva other = z2;
  other.y.set({1, 1}, {0}, Series::constant(-1));
  EXPECT_THROW(add_algebra(f, other), WorkbenchError);
}

TEST(Lookups, MissingDeclarationsAreNamed) {
  const WorkbenchFile f = testing::registry_file("Z2");
  EXPECT_THROW(twist_of(f, "nope"), WorkbenchError);
  EXPECT_THROW(algebra_of(f, "Nope"), WorkbenchError);
  EXPECT_THROW(smap_of(f, "sign"), WorkbenchError);
  EXPECT_EQ(f.block_names(BlockKind::Action), (std::vector<std::string>{"sign", "trivial"}));
}

TEST(Registry, EveryInstancePassesItsDeclaredSuites) {
  for (const RegistryEntry& e : registry()) {
    const WorkbenchFile f = parse_file(e.text);
    for (const SuiteRequest& req : e.suites) {
      SuiteOptions opts;
      opts.twist = req.twist;
      opts.smap = req.smap;
      const std::vector<CheckReport> reports = run_suite(f, req.suite, opts);
      EXPECT_FALSE(reports.empty());
      EXPECT_EQ(all_passed(reports), req.expect_pass) << e.name << " " << req.suite << " " << req.twist << req.smap;
    }
  }
}

TEST(Registry, DerivationAlgebraNeedsNoPowers) {
  SuiteOptions opts;
  for (const CheckReport& r : run_suite(testing::registry_file("E2"), "nva", opts)) {
    EXPECT_TRUE(r.exact());
    for (const KWitness& k : r.k_witnesses) EXPECT_EQ(k.k, 0) << k.identity << " " << k.tuple;
  }
}

TEST(Registry, LookupAndLoading) {
  EXPECT_NE(find_registry_entry("Cl2"), nullptr);
  EXPECT_EQ(find_registry_entry("missing"), nullptr);
  EXPECT_THROW(load_input("/nonexistent/file.nva"), WorkbenchError);
  EXPECT_EQ(emit_file(load_input("E1")), emit_file(parse_file(find_registry_entry("E1")->text)));
}

TEST(Suites, UnknownSuiteAndMissingTwist) {
  const WorkbenchFile f = testing::registry_file("E1");
  EXPECT_THROW(run_suite(f, "bogus", SuiteOptions{}), WorkbenchError);
  EXPECT_THROW(run_suite(f, "twist", SuiteOptions{}), WorkbenchError);
  SuiteOptions named;
  named.twist = "R_sign";
  EXPECT_THROW(run_suite(f, "twist", named), WorkbenchError);
  EXPECT_EQ(suite_names().size(), 6u);
}

TEST(Suites, BuiltinNamesResolve) {
  const WorkbenchFile f = testing::registry_file("E2");
  const TwistOp flip = resolve_twist(f, "flip", "E2");
  EXPECT_TRUE(map_equal(flip.r, SeriesMap::flip(flip.u.space, flip.v.space), Window::uniform(1, -8, 8)).holds());
  const SMap id = resolve_smap(f, "identity", "E2");
  EXPECT_TRUE(check_qva_axioms(id).exact());
}

}  // namespace
}  // namespace nvaw
