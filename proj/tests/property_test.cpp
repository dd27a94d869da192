#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fracdim/covering.hpp"
#include "fracdim/pointset.hpp"
#include "fracdim/verify.hpp"

using namespace fracdim;

namespace {

// Fewest runs of consecutive points with span <= r, by an O(n^2) partition DP.
std::uint64_t min_runs(const std::vector<double>& pts, double r) {
  std::vector<std::uint64_t> best(pts.size() + 1, UINT64_MAX);
  best[0] = 0;
  for (std::size_t j = 1; j <= pts.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (pts[j - 1] - pts[i] <= r && best[i] != UINT64_MAX) best[j] = std::min(best[j], best[i] + 1);
    }
  }
  return best.back();
}

class Dyadic {
 public:
  explicit Dyadic(std::uint64_t seed) : rng_(seed) {}
  std::vector<double> points(int max_n) {
    std::uniform_int_distribution<int> n(1, max_n);
    std::uniform_int_distribution<int> k(0, 4096);
    std::vector<double> pts(n(rng_));
    for (auto& x : pts) x = k(rng_) / 4096.0;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  }
  double scale() { return std::uniform_int_distribution<int>(1, 1024)(rng_) / 2048.0; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

TEST(Property, GreedyEqualsPartitionDpAndBruteForce) {
  Dyadic gen(11);
  for (int i = 0; i < 500; ++i) {
    const auto pts = gen.points(12);
    const double r = gen.scale();
    const PointSet set(pts);
    const auto greedy = covering_number(set, r).count;
    ASSERT_EQ(greedy, min_runs(pts, r)) << "case " << i;
    ASSERT_EQ(greedy, covering_number_brute(set, r).count) << "case " << i;
  }
}

TEST(Property, CoveringInvariants) {
  Dyadic gen(12);
  for (int i = 0; i < 200; ++i) {
    const auto a = gen.points(40);
    const auto b = gen.points(40);
    const double r1 = gen.scale();
    const double r2 = std::min(r1, gen.scale());
    const PointSet A(a);
    const PointSet B(b);
    std::vector<double> uni(a);
    uni.insert(uni.end(), b.begin(), b.end());
    const auto U = PointSet::from_unsorted(uni);
    std::vector<double> sub;
    for (std::size_t j = 0; j < a.size(); j += 2) sub.push_back(a[j]);
    const PointSet S(sub);

    EXPECT_LE(covering_number(A, r1).count, covering_number(A, r2).count);
    EXPECT_LE(covering_number(S, r1).count, covering_number(A, r1).count);
    EXPECT_LE(covering_number(U, r1).count, covering_number(A, r1).count + covering_number(B, r1).count);
    const double lambda = std::ldexp(1.0, (i % 7) - 3);
    EXPECT_EQ(covering_number(A.scaled(lambda), lambda * r1).count, covering_number(A, r1).count);
    const double shift = (i % 17) / 64.0 - 0.125;
    EXPECT_EQ(covering_number(A.translated(shift), r1).count, covering_number(A, r1).count);
  }
}

TEST(Property, VerifySuiteCoveringGroupPasses) {
  VerifyOptions opts;
  opts.only = "covering";
  for (const auto& r : run_verify_suite(opts)) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
}

TEST(Property, InjectedFaultIsCaught) {
  VerifyOptions opts;
  opts.only = "covering";
  opts.greedy_off_by_one = true;
  const auto results = run_verify_suite(opts);
  const auto it = std::find_if(results.begin(), results.end(), [](const CheckResult& r) { return r.name == "greedy-vs-brute"; });
  ASSERT_NE(it, results.end());
  EXPECT_FALSE(it->passed);
  EXPECT_FALSE(it->counterexample.empty());
}
