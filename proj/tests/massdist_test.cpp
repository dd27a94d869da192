#include <gtest/gtest.h>

#include <cmath>

#include "fracdim/covering.hpp"
#include "fracdim/error.hpp"
#include "fracdim/massdist.hpp"
#include "fracdim/pointset.hpp"

using namespace fracdim;

TEST(MassDistribution, AtomCountAtOneThousandth) {
  const auto mu = build_mass_distribution(1e-3, 0.5);
  EXPECT_EQ(mu.M, 10u);
  EXPECT_EQ(mu.atoms.size(), 10u);
  EXPECT_DOUBLE_EQ(mu.s, 1.0 / 3.0);
}

TEST(MassDistribution, TotalMassAndGaps) {
  for (double theta : {0.3, 0.5, 0.7}) {
    for (double r : {1e-3, 1e-4, 1e-5}) {
      const auto mu = build_mass_distribution(r, theta);
      const double total = mu.total_mass();
      EXPECT_GE(total, 1.0 - 1e-12) << theta << " " << r;
      EXPECT_LT(total, 1.0 + std::pow(r, mu.s)) << theta << " " << r;
      const double bound = 1.0 / (static_cast<double>(mu.M) * static_cast<double>(mu.M));
      for (std::size_t i = 1; i < mu.atoms.size(); ++i) {
        ASSERT_GE(mu.atoms[i].coordinate - mu.atoms[i - 1].coordinate, bound);
      }
    }
  }
}

TEST(MassDistribution, BallMassIsBounded) {
  for (double theta : {0.3, 0.5, 0.7}) {
    for (double r : {1e-3, 1e-4, 1e-5}) {
      const auto mu = build_mass_distribution(r, theta);
      const auto w = max_normalized_ball_mass_witness(mu, theta);
      EXPECT_LE(w.ratio, 8.0) << theta << " " << r;
      EXPECT_GE(w.diameter, r * (1 - 1e-12));
      EXPECT_LE(w.diameter, std::pow(r, theta) * (1 + 1e-12));
    }
  }
}

TEST(MassDistribution, RejectsBadParameters) {
  EXPECT_THROW(build_mass_distribution(0.0, 0.5), Error);
  EXPECT_THROW(build_mass_distribution(1e-3, 1.0), Error);
  try {
    build_mass_distribution(1e-12, 0.9, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resource);
  }
}

TEST(LowerBound, OptimalCoverRespectsCertificate) {
  const double r = 1e-4;
  const double theta = 0.5;
  const auto mu = build_mass_distribution(r, theta);
  const auto set = generate(SetSpec::reciprocal(1.0), r);
  const double delta = std::pow(r, theta);
  const auto best = restricted_cover_min_cost(set, mu.s, delta, theta);
  const auto verdict = mass_lower_bound_check(mu, best.cover, mu.s);
  EXPECT_TRUE(verdict.holds);
  EXPECT_GE(verdict.cost, verdict.implied_bound);
  EXPECT_NEAR(verdict.implied_bound, 1.0 / verdict.constant, 1e-12);
}

TEST(LowerBound, UncoveredAtomIsRejected) {
  const auto mu = build_mass_distribution(1e-3, 0.5);
  std::vector<CoverInterval> cover{{0.9, 0.05}};
  try {
    mass_lower_bound_check(mu, cover, mu.s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::certificate_violation);
  }
}

TEST(LowerBound, InadmissibleDiameterIsRejected) {
  const auto mu = build_mass_distribution(1e-3, 0.5);
  std::vector<CoverInterval> cover{{0.0, 1.0}};
  EXPECT_THROW(mass_lower_bound_check(mu, cover, mu.s), Error);
}

TEST(HausdorffCertificate, ClosedFormCost) {
  for (double s : {0.1, 0.5, 1.0}) {
    for (double eps : {1e-1, 1e-3}) {
      const auto cert = hausdorff_cover_certificate(s, eps);
      const double q = std::exp2(-s);
      const double want = q * std::pow(cert.delta, s) / (1.0 - q);
      EXPECT_LT(cert.cost, eps);
      EXPECT_LE(std::fabs(cert.cost - want), 1e-12 * want) << s << " " << eps;
    }
  }
}

TEST(HausdorffCertificate, DeltaAtUnitExponent) {
  EXPECT_NEAR(hausdorff_cover_certificate(1.0, 0.1).delta, 0.05, 1e-15);
}

TEST(HausdorffCertificate, BallsContainTheirCenters) {
  const auto cert = hausdorff_cover_certificate(0.5, 1e-3, 16);
  ASSERT_EQ(cert.cover.size(), cert.centers.size());
  for (std::size_t k = 0; k < cert.cover.size(); ++k) {
    const auto& b = cert.cover[k];
    EXPECT_LE(b.position, cert.centers[k]);
    EXPECT_GE(b.position + b.diameter, cert.centers[k]);
    EXPECT_NEAR(b.diameter, std::exp2(-static_cast<double>(k + 1)) * cert.delta, 1e-15);
  }
  EXPECT_THROW(hausdorff_cover_certificate(0.0, 0.1), Error);
}
