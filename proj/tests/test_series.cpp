#include <gtest/gtest.h>

#include "support.hpp"

namespace nvaw {
namespace {

using testing::sx;
using testing::w1;

const std::vector<std::string> kX = {"x"};

TEST(ExactScalar, CanonicalForm) {
  EXPECT_EQ(to_string(parse_scalar("2/4")), "1/2");
  EXPECT_EQ(to_string(parse_scalar("-6/4")), "-3/2");
  EXPECT_EQ(to_string(parse_scalar("10/5")), "2");
  EXPECT_THROW(parse_scalar("1/0"), std::invalid_argument);
}

TEST(SeriesArith, DifferenceOfSquares) {
  const Series p = sx("1 + 1@(1)") * sx("1 - 1@(1)");
  EXPECT_TRUE(p.exact());
  EXPECT_EQ(p.to_string(), "1@(0) + -1@(2)");
}

TEST(SeriesArith, LaurentCancellation) {
  const Series p = sx("1@(-1)") * sx("1@(1)");
  EXPECT_TRUE(p.exact());
  EXPECT_EQ(window_equal(p, sx("1"), w1()).kind, CertifiedEquality::Kind::ExactlyEqual);
}

TEST(SeriesArith, TruncatedGeometricSeriesLosesExactness) {
  const Window w = Window::uniform(1, 0, 4);
  Series::Terms terms;
  for (int n = 0; n <= 4; ++n) terms[Exponent{n, 0, 0}] = 1;
  const Series geometric = Series::truncated(kX, w, terms, {SupportBound{0, std::nullopt}});
  const Series p = geometric * sx("1 - 1@(1)");
  EXPECT_FALSE(p.exact());
  // Oracle: (1 + x + ... + x^4)(1 - x) = 1 - x^5, so every coefficient in [0, 4] except x^0 vanishes.
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(testing::coeff(p, n), n == 0 ? 1 : 0) << n;
  EXPECT_EQ(window_equal(p, Series::constant(1), w).kind, CertifiedEquality::Kind::EqualUpToWindow);
}

TEST(SeriesArith, ScalarMultiple) {
  EXPECT_EQ((ExactScalar(3, 2) * sx("2@(-1) + 4@(3)")).to_string(), "3@(-1) + 6@(3)");
}

TEST(TaylorSubstitute, SquareExpandsBinomially) {
  const Series r = taylor_substitute(sx("1@(2)"), TaylorForm::SecondPlusZero, Window::uniform(2, -8, 8));
  EXPECT_TRUE(r.exact());
  // variables (x2, x0)
  EXPECT_EQ(r.to_string(), "1@(0,2) + 2@(1,1) + 1@(2,0)");
}

TEST(TaylorSubstitute, InversePowerIsClippedAndCertified) {
  const Window w({{-3, 0}, {0, 2}});
  const Series r = taylor_substitute(sx("1@(-1)"), TaylorForm::SecondPlusZero, w);
  EXPECT_FALSE(r.exact());
  EXPECT_EQ(testing::coeff(r, -1, 0), 1);
  EXPECT_EQ(testing::coeff(r, -2, 1), -1);
  EXPECT_EQ(testing::coeff(r, -3, 2), 1);
  EXPECT_EQ(r.terms().size(), 3u);
  // Oracle: multiplying back by (x2 + x0) gives 1 wherever the product is certified.
  const Window wide({{-3, 1}, {0, 2}});
  const Series x2_plus_x0 = parse_series_literal("1@(1,0) + 1@(0,1)", {"x2", "x0"}, wide);
  const Series one = parse_series_literal("1", {"x2", "x0"}, wide);
  const Series product = x2_plus_x0 * r;
  EXPECT_FALSE(product.window().empty());
  EXPECT_TRUE(window_equal(product, one, w).holds());
}

TEST(TaylorSubstitute, ConstantIsFixedByBothForms) {
  for (TaylorForm f : {TaylorForm::SecondPlusZero, TaylorForm::ZeroPlusSecond}) {
    const Series r = taylor_substitute(sx("1"), f, Window::uniform(2, -8, 8));
    EXPECT_TRUE(r.exact());
    EXPECT_EQ(r.to_string(), "1@(0,0)");
  }
}

TEST(TaylorSubstitute, FormsExpandInDifferentVariables) {
  const Window w = Window::uniform(2, -4, 4);
  const Series a = taylor_substitute(sx("1@(-1)"), TaylorForm::SecondPlusZero, w);  // (x2, x0)
  const Series b = taylor_substitute(sx("1@(-1)"), TaylorForm::ZeroPlusSecond, w);  // (x0, x2)
  // x2^-1 - x2^-2 x0 + ... and x0^-1 - x0^-2 x2 + ...: same coefficients, own variable order.
  EXPECT_EQ(testing::coeff(a, -2, 1), -1);
  EXPECT_EQ(testing::coeff(b, -2, 1), -1);
  EXPECT_EQ(a.variables(), (std::vector<std::string>{"x2", "x0"}));
  EXPECT_EQ(b.variables(), (std::vector<std::string>{"x0", "x2"}));
}

TEST(TaylorSubstitute, RejectsMultiVariableInput) {
  const Series two = parse_series_literal("1@(1,1)", {"a", "b"}, Window::uniform(2, -2, 2));
  EXPECT_THROW(taylor_substitute(two, TaylorForm::SecondPlusZero, Window::uniform(2, -2, 2)), std::invalid_argument);
}

TEST(Substitute, NegatedVariableAndPrepower) {
  const std::vector<std::string> ambient = {"x1", "x2"};
  const Window w = Window::uniform(2, -4, 4);
  // f(x) = x at x = x1 - x2, times (x1 - x2)^1, is (x1 - x2)^2.
  const Series r = substitute(sx("1@(1)"), LinearForm::sum(0, 1, 1, -1), ambient, w, 1);
  EXPECT_EQ(r.to_string(), "1@(0,2) + -2@(1,1) + 1@(2,0)");
  const Series n = substitute(sx("3@(1)"), LinearForm::var(1, -1), ambient, w);
  EXPECT_EQ(n.to_string(), "-3@(0,1)");
}

TEST(WindowEqual, ThreeOutcomes) {
  EXPECT_EQ(window_equal(sx("3@(-2) + 1@(1)"), sx("3@(-2) + 1@(1)"), w1()).kind,
            CertifiedEquality::Kind::ExactlyEqual);
  const Window w = Window::uniform(1, 0, 4);
  Series::Terms terms;
  for (int n = 0; n <= 4; ++n) terms[Exponent{n, 0, 0}] = 1;
  const Series g = Series::truncated(kX, w, terms, {SupportBound{0, std::nullopt}});
  EXPECT_EQ(window_equal(g, g.restricted(Window::uniform(1, 0, 3)), w).kind, CertifiedEquality::Kind::EqualUpToWindow);
  const CertifiedEquality ne = window_equal(sx("1 + 1@(1)"), sx("1 - 1@(1)"), w1());
  EXPECT_EQ(ne.kind, CertifiedEquality::Kind::Unequal);
  ASSERT_TRUE(ne.witness);
  EXPECT_EQ((*ne.witness)[0], 1);
}

TEST(SeriesLiteral, ParsesAndReportsPosition) {
  const Series s = sx("1/2@(-1) + 3@(2)");
  EXPECT_EQ(testing::coeff(s, -1), ExactScalar(1, 2));
  EXPECT_EQ(testing::coeff(s, 2), 3);
  EXPECT_EQ(series_literal(s), "1/2@(-1) + 3@(2)");
  try {
    sx("1@(1) * 2");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 7);
  }
  EXPECT_THROW(sx("1@(20)"), ParseError);  // outside the default window
  EXPECT_THROW(sx("1@(1,2)"), ParseError);
}

TEST(SeriesArith, DerivativeAndVariableMismatch) {
  EXPECT_EQ(sx("1@(-1) + 1@(3)").derivative(0).to_string(), "-1@(-2) + 3@(2)");
  const Series y = parse_series_literal("1@(1)", {"y"}, w1());
  EXPECT_THROW(sx("1@(1)") + y, std::invalid_argument);
}

}  // namespace
}  // namespace nvaw
