#include <gtest/gtest.h>

#include "series_properties.hpp"

namespace nvaw::testing {
namespace {

void expect_outcome(const PropertyOutcome& o) {
  EXPECT_EQ(o.cases, 1000);
  EXPECT_EQ(o.failures, 0) << o.name << ": " << o.first_failure;
}

TEST(SeriesProperties, RingLaws) { expect_outcome(ring_laws(1000, 11)); }
TEST(SeriesProperties, TaylorSliceReproducesInput) { expect_outcome(taylor_slice_law(1000, 12)); }
TEST(SeriesProperties, BinomialIdentities) { expect_outcome(binomial_law(1000, 13)); }

TEST(SeriesProperties, PascalOracle) {
  EXPECT_EQ(pascal(5, 2), 10);
  EXPECT_EQ(pascal(-1, 3), -1);
  EXPECT_EQ(pascal(-2, 2), 3);
  EXPECT_EQ(pascal(3, 4), 0);
}

}  // namespace
}  // namespace nvaw::testing
