#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fracdim/error.hpp"
#include "fracdim/estimators.hpp"
#include "fracdim/oracles.hpp"
#include "fracdim/pointset.hpp"

using namespace fracdim;

TEST(Oracles, ReciprocalOneStatedValues) {
  const auto spec = SetSpec::reciprocal(1.0);
  EXPECT_EQ(closed_form(spec, DimensionKind::box).value, 0.5);
  EXPECT_EQ(closed_form(spec, DimensionKind::assouad).value, 1.0);
  EXPECT_EQ(closed_form(spec, DimensionKind::hausdorff).value, 0.0);
  EXPECT_EQ(closed_form(spec, DimensionKind::assouad_spectrum, 0.25).value, 0.5 / 0.75);
  EXPECT_EQ(closed_form(spec, DimensionKind::assouad_spectrum, 0.75).value, 1.0);
  EXPECT_EQ(closed_form(spec, DimensionKind::intermediate, 0.5).value, 0.5 / 1.5);
  EXPECT_EQ(closed_form(spec, DimensionKind::box).provenance, Provenance::stated);
}

TEST(Oracles, EndpointEquality) {
  const auto spec = SetSpec::reciprocal(1.0);
  EXPECT_EQ(intermediate_formula(spec, 1.0), closed_form(spec, DimensionKind::box).value);
  EXPECT_EQ(spectrum_formula(spec, 0.5), 1.0);
  EXPECT_EQ(spectrum_formula(spec, 0.0), closed_form(spec, DimensionKind::box).value);
  EXPECT_EQ(intermediate_formula(spec, 0.0), closed_form(spec, DimensionKind::hausdorff).value);
}

TEST(Oracles, TransitionAtOneHalf) {
  std::vector<double> thetas;
  for (int i = 1; i <= 9; ++i) thetas.push_back(i / 10.0);
  const auto curve = oracle_curve(SetSpec::reciprocal(1.0), DimensionKind::assouad_spectrum, thetas);
  ASSERT_TRUE(curve.transition_theta.has_value());
  EXPECT_DOUBLE_EQ(*curve.transition_theta, 0.5);
  EXPECT_EQ(std::count(curve.transition.begin(), curve.transition.end(), true), 1);
}

TEST(Oracles, DerivedValuesAreGated) {
  EXPECT_TRUE(has_oracle(SetSpec::reciprocal(2.0), DimensionKind::box));
  EXPECT_EQ(closed_form(SetSpec::reciprocal(2.0), DimensionKind::box).provenance, Provenance::derived);
  EXPECT_TRUE(has_oracle(SetSpec::cantor(2, 1.0 / 3.0), DimensionKind::intermediate));
  EXPECT_FALSE(has_oracle(SetSpec::reciprocal(3.0), DimensionKind::box));
  EXPECT_FALSE(has_oracle(SetSpec::cantor(3, 0.2), DimensionKind::box));
  EXPECT_FALSE(has_oracle(SetSpec::explicit_points({0.0, 1.0}), DimensionKind::box));
  try {
    closed_form(SetSpec::reciprocal(3.0), DimensionKind::box);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported_oracle);
  }
}

TEST(Oracles, ThetaDomains) {
  const auto spec = SetSpec::reciprocal(1.0);
  EXPECT_THROW(closed_form(spec, DimensionKind::assouad_spectrum, 1.0), Error);
  EXPECT_THROW(closed_form(spec, DimensionKind::assouad_spectrum), Error);
  EXPECT_THROW(closed_form(spec, DimensionKind::intermediate, 0.0), Error);
  EXPECT_NO_THROW(closed_form(spec, DimensionKind::intermediate, 1.0));
}

TEST(Oracles, OrderChainOnStatedSet) {
  const auto spec = SetSpec::reciprocal(1.0);
  for (int i = 1; i <= 9; ++i) {
    const double t = i / 10.0;
    const double inter = closed_form(spec, DimensionKind::intermediate, t).value;
    const double box = closed_form(spec, DimensionKind::box).value;
    const double spec_v = closed_form(spec, DimensionKind::assouad_spectrum, t).value;
    const double assouad = closed_form(spec, DimensionKind::assouad).value;
    EXPECT_LE(inter, box);
    EXPECT_LE(box, spec_v);
    EXPECT_LE(spec_v, assouad);
  }
}
