#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracdim/estimators.hpp"
#include "fracdim/pointset.hpp"

namespace fracdim {

enum class Provenance { stated, derived };
const char* to_string(Provenance provenance) noexcept;

struct OracleValue {
  double value = 0.0;
  Provenance provenance = Provenance::stated;
  std::string formula;
};

// theta is required for the two spectra: (0,1) for the Assouad spectrum and
// (0,1] for the intermediate dimensions.
OracleValue closed_form(const SetSpec& spec, DimensionKind kind,
                        std::optional<double> theta = std::nullopt);

bool has_oracle(const SetSpec& spec, DimensionKind kind);

struct OracleCurve {
  DimensionKind kind = DimensionKind::assouad_spectrum;
  std::vector<double> theta_grid;
  std::vector<OracleValue> values;
  std::vector<bool> transition;
  std::optional<double> transition_theta;
};

OracleCurve oracle_curve(const SetSpec& spec, DimensionKind kind,
                         const std::vector<double>& thetas);

// Formulas on the closed parameter range [0,1], for endpoint checks.
double intermediate_formula(const SetSpec& spec, double theta);
double spectrum_formula(const SetSpec& spec, double theta);

}  // namespace fracdim
