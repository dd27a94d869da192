#include <gtest/gtest.h>

#include <cmath>

#include "fracdim/estimators.hpp"
#include "fracdim/oracles.hpp"
#include "fracdim/pointset.hpp"

using namespace fracdim;

// Every set with derived oracle values must be reproduced by the estimators.
namespace {

constexpr double kTolerance = 0.05;

void check_set(const SetSpec& spec, const std::vector<double>& spectrum_thetas,
               const std::vector<double>& intermediate_thetas) {
  const auto box = estimate_box_dimension(spec, ScaleGrid::geometric(1e-2, 1e-7, kDefaultRatio));
  EXPECT_NEAR(box.value, closed_form(spec, DimensionKind::box).value, kTolerance) << spec.describe();

  const auto assouad = estimate_assouad_dimension(spec, std::nullopt);
  EXPECT_NEAR(assouad.value, closed_form(spec, DimensionKind::assouad).value, kTolerance) << spec.describe();

  const auto spectrum = estimate_assouad_spectrum(spec, spectrum_thetas, std::nullopt);
  for (std::size_t i = 0; i < spectrum_thetas.size(); ++i) {
    const double want = closed_form(spec, DimensionKind::assouad_spectrum, spectrum_thetas[i]).value;
    EXPECT_NEAR(spectrum.estimates[i].value, want, kTolerance) << spec.describe() << " theta " << spectrum_thetas[i];
  }

  const auto inter = estimate_intermediate_dimension(spec, intermediate_thetas, intermediate_policy_grid());
  for (std::size_t i = 0; i < intermediate_thetas.size(); ++i) {
    const double want = closed_form(spec, DimensionKind::intermediate, intermediate_thetas[i]).value;
    EXPECT_NEAR(inter.estimates[i].value, want, kTolerance) << spec.describe() << " theta " << intermediate_thetas[i];
  }
}

}  // namespace

TEST(OracleValidation, ReciprocalTwo) {
  check_set(SetSpec::reciprocal(2.0), {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9},
            {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0});
}

TEST(OracleValidation, MiddleThirdCantor) {
  check_set(SetSpec::cantor(2, 1.0 / 3.0), {0.2, 0.5, 0.8}, {0.3, 0.7, 1.0});
}
