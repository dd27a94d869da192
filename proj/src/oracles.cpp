#include "fracdim/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "fracdim/error.hpp"

namespace fracdim {

const char* to_string(Provenance provenance) noexcept {
  return provenance == Provenance::stated ? "stated" : "derived";
}

namespace {

// Derived formulas are enabled only for parameters that the estimator
// pipeline has reproduced within 0.05 (see tests/oracle_validation_test.cpp).
constexpr double kValidatedReciprocal[] = {2.0};
struct CantorParams {
  int m;
  double c;
};
constexpr CantorParams kValidatedCantor[] = {{2, 1.0 / 3.0}};

bool same(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(b)); }

bool derived_enabled(const SetSpec& spec) {
  if (const auto* rec = std::get_if<Reciprocal>(&spec.kind)) {
    return std::any_of(std::begin(kValidatedReciprocal), std::end(kValidatedReciprocal),
                       [&](double p) { return same(rec->p, p); });
  }
  if (const auto* can = std::get_if<Cantor>(&spec.kind)) {
    return std::any_of(std::begin(kValidatedCantor), std::end(kValidatedCantor),
                       [&](const CantorParams& v) { return can->m == v.m && same(can->c, v.c); });
  }
  return false;
}

bool is_spectrum(DimensionKind kind) {
  return kind == DimensionKind::assouad_spectrum || kind == DimensionKind::intermediate;
}

double cantor_dimension(const Cantor& can) { return std::log(can.m) / std::log(1.0 / can.c); }

}  // namespace

double intermediate_formula(const SetSpec& spec, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) raise(ErrorKind::domain, "theta must lie in [0,1]");
  if (const auto* rec = std::get_if<Reciprocal>(&spec.kind)) return theta / (theta + rec->p);
  if (const auto* can = std::get_if<Cantor>(&spec.kind)) return cantor_dimension(*can);
  if (std::holds_alternative<UnitInterval>(spec.kind)) return 1.0;
  raise(ErrorKind::unsupported_oracle, "no closed form for " + spec.describe());
}

double spectrum_formula(const SetSpec& spec, double theta) {
  if (!(theta >= 0.0 && theta < 1.0)) raise(ErrorKind::domain, "theta must lie in [0,1)");
  if (const auto* rec = std::get_if<Reciprocal>(&spec.kind)) {
    return std::min((1.0 / (1.0 + rec->p)) / (1.0 - theta), 1.0);
  }
  if (const auto* can = std::get_if<Cantor>(&spec.kind)) return cantor_dimension(*can);
  if (std::holds_alternative<UnitInterval>(spec.kind)) return 1.0;
  raise(ErrorKind::unsupported_oracle, "no closed form for " + spec.describe());
}

bool has_oracle(const SetSpec& spec, DimensionKind kind) {
  (void)kind;
  if (std::holds_alternative<UnitInterval>(spec.kind)) return true;
  if (const auto* rec = std::get_if<Reciprocal>(&spec.kind)) {
    if (rec->p == 1.0) return true;
  }
  return derived_enabled(spec);
}

OracleValue closed_form(const SetSpec& spec, DimensionKind kind, std::optional<double> theta) {
  spec.validate();
  if (is_spectrum(kind) != theta.has_value()) {
    raise(ErrorKind::domain, "theta is required exactly for the spectrum kinds");
  }
  if (kind == DimensionKind::assouad_spectrum && !(*theta > 0.0 && *theta < 1.0)) {
    raise(ErrorKind::domain, "Assouad spectrum theta must lie in (0,1)");
  }
  if (kind == DimensionKind::intermediate && !(*theta > 0.0 && *theta <= 1.0)) {
    raise(ErrorKind::domain, "intermediate theta must lie in (0,1]");
  }
  if (!has_oracle(spec, kind)) {
    raise(ErrorKind::unsupported_oracle,
          std::string("no enabled closed form for ") + to_string(kind) + " of " + spec.describe());
  }

  OracleValue out;
  if (std::holds_alternative<UnitInterval>(spec.kind)) {
    out.value = 1.0;
    out.provenance = Provenance::stated;
    out.formula = "1";
    return out;
  }
  if (const auto* can = std::get_if<Cantor>(&spec.kind)) {
    out.value = cantor_dimension(*can);
    out.provenance = Provenance::derived;
    out.formula = "log m / log(1/c)";
    return out;
  }
  const double p = std::get<Reciprocal>(spec.kind).p;
  out.provenance = p == 1.0 ? Provenance::stated : Provenance::derived;
  switch (kind) {
    case DimensionKind::hausdorff:
      out.value = 0.0;
      out.formula = "0";
      break;
    case DimensionKind::box:
      out.value = 1.0 / (1.0 + p);
      out.formula = p == 1.0 ? "1/2" : "1/(1+p)";
      break;
    case DimensionKind::assouad:
      out.value = 1.0;
      out.formula = "1";
      break;
    case DimensionKind::intermediate:
      out.value = intermediate_formula(spec, *theta);
      out.formula = p == 1.0 ? "theta/(1+theta)" : "theta/(theta+p)";
      break;
    case DimensionKind::assouad_spectrum:
      out.value = spectrum_formula(spec, *theta);
      out.formula = p == 1.0 ? "min{(1/2)/(1-theta), 1}" : "min{(1/(1+p))/(1-theta), 1}";
      break;
  }
  return out;
}

OracleCurve oracle_curve(const SetSpec& spec, DimensionKind kind, const std::vector<double>& thetas) {
  if (!is_spectrum(kind)) raise(ErrorKind::domain, "oracle curves exist only for the spectrum kinds");
  OracleCurve curve;
  curve.kind = kind;
  curve.theta_grid = thetas;
  if (kind == DimensionKind::assouad_spectrum) {
    if (const auto* rec = std::get_if<Reciprocal>(&spec.kind)) {
      curve.transition_theta = rec->p / (1.0 + rec->p);
    }
  }
  for (double t : thetas) {
    curve.values.push_back(closed_form(spec, kind, t));
    curve.transition.push_back(curve.transition_theta.has_value() &&
                               std::fabs(t - *curve.transition_theta) <= 1e-12);
  }
  return curve;
}

}  // namespace fracdim
