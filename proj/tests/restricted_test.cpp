#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fracdim/covering.hpp"
#include "fracdim/error.hpp"
#include "fracdim/estimators.hpp"
#include "fracdim/pointset.hpp"
#include "fracdim/source.hpp"

using namespace fracdim;

namespace {

// Every partition of the sorted points into runs; each run costs its span
// raised to the clamped diameter.
double partition_minimum(const std::vector<double>& pts, double s, double delta, double theta) {
  const double rho = std::pow(delta, 1.0 / theta);
  const std::size_t n = pts.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t cuts = 0; cuts < (1u << (n - 1)); ++cuts) {
    double total = 0.0;
    std::size_t start = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (i == n - 1 || (cuts >> i & 1u)) {
        const double span = pts[i] - pts[start];
        if (span > delta) ok = false;
        total += std::pow(std::max(span, rho), s);
        start = i + 1;
      }
    }
    if (ok) best = std::min(best, total);
  }
  return best;
}

}  // namespace

TEST(RestrictedCover, MatchesPartitionEnumeration) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 1023);
  std::uniform_int_distribution<int> size(1, 9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> pts;
    const int n = size(rng);
    for (int i = 0; i < n; ++i) pts.push_back(pick(rng) / 1024.0);
    const auto set = PointSet::from_unsorted(pts);
    const double s = 0.1 + 0.8 * (trial % 9) / 8.0;
    const double delta = 0.05 + 0.01 * (trial % 20);
    const double theta = 0.3 + 0.1 * (trial % 7);
    const auto got = restricted_cover_min_cost(set, s, delta, theta);
    const double want = partition_minimum(set.points(), s, delta, theta);
    EXPECT_NEAR(got.cost, want, 1e-12 * want) << "trial " << trial;
    EXPECT_NEAR(got.recomputed_cost(), got.cost, 1e-12 * want);
  }
}

TEST(RestrictedCover, CoverCoversEveryPoint) {
  const auto set = generate(SetSpec::reciprocal(1.0), 1e-3);
  const auto res = restricted_cover_min_cost(set, 0.4, 1e-1, 0.5);
  const double rho = std::pow(0.1, 2.0);
  for (double x : set.points()) {
    bool covered = false;
    for (const auto& b : res.cover) covered = covered || (b.position <= x && x <= b.position + b.diameter);
    ASSERT_TRUE(covered) << x;
  }
  for (const auto& b : res.cover) {
    EXPECT_GE(b.diameter, rho * (1 - 1e-12));
    EXPECT_LE(b.diameter, 0.1 * (1 + 1e-12));
  }
}

TEST(RestrictedCover, ThetaOneIsCoveringNumberCost) {
  const auto set = generate(SetSpec::reciprocal(1.0), 1e-3);
  for (double delta : {1e-1, 1e-2, 1e-3}) {
    const auto c = covering_number(set, delta);
    const auto res = restricted_cover_min_cost(set, 0.5, delta, 1.0);
    EXPECT_NEAR(res.cost, static_cast<double>(c.count) * std::pow(delta, 0.5), 1e-12 * res.cost);
  }
}

TEST(RestrictedCover, FlagsUncertifiedScales) {
  const auto set = generate(SetSpec::reciprocal(1.0), 1e-2);
  EXPECT_FALSE(restricted_cover_min_cost(set, 0.5, 1e-2, 0.5).certified);
  EXPECT_TRUE(restricted_cover_min_cost(set, 0.5, 1e-1, 0.5).certified);
}

TEST(RestrictedCover, RejectsBadParameters) {
  const PointSet set({0.0, 0.5});
  EXPECT_THROW(restricted_cover_min_cost(set, 0.5, 0.1, 0.0), Error);
  EXPECT_THROW(restricted_cover_min_cost(set, 0.5, 0.0, 0.5), Error);
  EXPECT_THROW(restricted_cover_min_cost(set, -0.1, 0.1, 0.5), Error);
}

TEST(RestrictedCover, ClusterProblemBoundsSingletonProblem) {
  const auto set = generate(SetSpec::reciprocal(1.0), 1e-4);
  const ReciprocalSource src(1.0);
  const double delta = 1e-2;
  const auto clusters = cluster_points(src, 0.01 * delta, 400000);
  ASSERT_TRUE(clusters.has_value());
  const RestrictedCoverProblem upper(*clusters, delta, 0.5);
  const RestrictedCoverProblem exact(singleton_clusters(set), delta, 0.5);
  const auto lower = upper.endpoint_relaxation();
  for (double s : {0.2, 0.33, 0.5}) {
    const double e = exact.solve(s).cost;
    EXPECT_LE(lower.solve(s).cost, e * (1 + 1e-12));
    EXPECT_GE(upper.solve(s).cost, e * (1 - 1e-12));
  }
}

TEST(CriticalExponent, SolvesCostEqualsOne) {
  const auto set = generate(SetSpec::reciprocal(1.0), 1e-4);
  const RestrictedCoverProblem problem(singleton_clusters(set), 1e-2, 0.5);
  const auto ce = critical_exponent(problem);
  EXPECT_FALSE(ce.saturated);
  EXPECT_NEAR(problem.solve(ce.s_star).cost, 1.0, 1e-6);
  EXPECT_GT(problem.solve(ce.s_star - 1e-3).cost, 1.0);
  EXPECT_LT(problem.solve(ce.s_star + 1e-3).cost, 1.0);
}

TEST(TwoScale, FrozenValue) {
  const auto t = two_scale_cover_cost(0.4, 1e-4, 0.5);
  EXPECT_EQ(t.M, 26u);
  EXPECT_EQ(t.coarse_count, 4u);
  EXPECT_NEAR(t.cost, 1.287047749176936223, 1e-12);
  EXPECT_NEAR(t.fine_term + t.coarse_term, t.cost, 1e-15);
}

TEST(TwoScale, RejectsBadParameters) {
  EXPECT_THROW(two_scale_cover_cost(0.4, 0.0, 0.5), Error);
  EXPECT_THROW(two_scale_cover_cost(0.4, 1e-4, 1.5), Error);
}
