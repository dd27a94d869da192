#include <gtest/gtest.h>

#include <cmath>

#include "fracdim/covering.hpp"
#include "fracdim/error.hpp"
#include "fracdim/numeric.hpp"
#include "fracdim/pointset.hpp"
#include "fracdim/source.hpp"

using namespace fracdim;

TEST(CoveringNumber, ReciprocalAtOneHundredth) {
  const auto set = generate(SetSpec::reciprocal(1.0), 0.01);
  const auto c = covering_number(set, 0.01);
  EXPECT_EQ(c.count, 18u);
  EXPECT_EQ(c.exactness, Exactness::exact);
  EXPECT_EQ(c.error_bound, 0u);
}

TEST(CoveringNumber, LocalizedAtZero) {
  const auto set = generate(SetSpec::reciprocal(1.0), 0.01);
  EXPECT_EQ(localized_covering_number(set, 0.0, 0.1, 0.01).count, 9u);
}

TEST(CoveringNumber, LocalizedEmptyBallIsFlagged) {
  const auto set = PointSet({0.0, 1.0});
  const auto c = localized_covering_number(set, 0.5, 0.1, 0.01);
  EXPECT_EQ(c.count, 0u);
  EXPECT_TRUE(c.empty_localization);
}

TEST(CoveringNumber, EquispacedBruteForce) {
  std::vector<double> pts;
  for (int i = 0; i <= 10; ++i) pts.push_back(i / 10.0);
  const PointSet set(pts);
  EXPECT_EQ(covering_number_brute(set, 0.1).count, 6u);
}

TEST(CoveringNumber, BruteForceLimit) {
  std::vector<double> pts;
  for (std::size_t i = 0; i <= kBruteForceLimit; ++i) pts.push_back(static_cast<double>(i));
  EXPECT_THROW(covering_number_brute(PointSet(pts), 0.5), Error);
}

TEST(CoveringNumber, BelowAdequacyIsReported) {
  const auto set = generate(SetSpec::reciprocal(1.0), 0.01);
  const auto c = covering_number(set, 1e-4);
  EXPECT_TRUE(c.below_adequacy);
  EXPECT_EQ(c.exactness, Exactness::bounded);
}

TEST(CoveringNumber, RejectsBadScale) {
  const PointSet set({0.0, 1.0});
  EXPECT_THROW(covering_number(set, 0.0), Error);
  EXPECT_THROW(covering_number(set, -1.0), Error);
  EXPECT_THROW(covering_number(PointSet(), 0.1), Error);
}

TEST(CoveringNumber, DefaultCountGridHasNineRows) {
  const auto grid = geometric_range(1e-2, 1e-6, std::pow(10.0, -0.5));
  EXPECT_EQ(grid.size(), 9u);
  EXPECT_NEAR(grid.back(), 1e-6, 1e-18);
}

TEST(Sources, ReciprocalSourceMatchesTruncation) {
  for (double p : {0.5, 1.0, 2.0}) {
    const auto set = generate(SetSpec::reciprocal(p), 1e-3);
    const ReciprocalSource src(p);
    for (double r : {1e-1, 1e-2, 3e-3, 1e-3}) {
      EXPECT_EQ(greedy_count(src, r, 0.0, 1.0), covering_number(set, r).count) << p << " " << r;
    }
  }
}

TEST(Sources, CantorSourceStaysInsideCountBounds) {
  const auto set = generate(SetSpec::cantor(2, 1.0 / 3.0), 1e-4);
  const CantorSource src(2, 1.0 / 3.0);
  for (double r : {1e-1, 1e-2, 1e-3}) {
    const auto c = covering_number(set, r);
    const auto g = greedy_count(src, r, 0.0, 1.0);
    EXPECT_GE(g, c.count);
    EXPECT_LE(g, c.count + c.error_bound);
  }
}

TEST(Sources, SegmentCount) {
  const SegmentSource src(0.0, 1.0);
  EXPECT_EQ(greedy_count(src, 0.25, 0.0, 1.0), 4u);
  EXPECT_EQ(greedy_count(src, 0.3, 0.0, 1.0), 4u);
}

TEST(Sources, StepCapRaisesResource) {
  const SegmentSource src(0.0, 1.0);
  try {
    greedy_count(src, 1e-6, 0.0, 1.0, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resource);
  }
}
