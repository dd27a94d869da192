#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracdim/pointset.hpp"
#include "fracdim/source.hpp"

namespace fracdim {

class ScaleGrid {
 public:
  // r_max, r_max*ratio, ... down to r_min (half-step tolerance).
  static ScaleGrid geometric(double r_max, double r_min, double ratio);
  explicit ScaleGrid(std::vector<double> scales);

  const std::vector<double>& scales() const noexcept { return scales_; }
  double largest() const { return scales_.front(); }
  double smallest() const { return scales_.back(); }
  ScaleGrid scaled(double lambda) const;

 private:
  std::vector<double> scales_;
};

inline constexpr double kDefaultRatio = 0.31622776601683794;  // 10^{-1/2}

struct ScaleSample {
  double scale = 0.0;
  double count = 0.0;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  std::size_t n_samples = 0;
  std::vector<ScaleSample> samples;
};

// Least-squares slope of log(count) against log(1/scale).
SlopeFit fit_loglog_slope(const std::vector<ScaleSample>& samples);

enum class DimensionKind { box, assouad, assouad_spectrum, intermediate, hausdorff };
const char* to_string(DimensionKind kind) noexcept;

struct CriticalExponentSample {
  double delta = 0.0;
  double s_star = 0.0;
  double s_lower = 0.0;  // crossing of the endpoint relaxation
  bool saturated = false;
  std::size_t clusters = 0;
  std::size_t iterations = 0;
};

struct Witness {
  double center = 0.0;
  std::string relation;               // "R=r^0.5" or "R=0.01"
  std::optional<double> theta;        // exponent of a power relation
  std::optional<double> fixed_radius;
};

struct DimensionEstimate {
  double value = 0.0;
  double raw_value = 0.0;
  bool clipped = false;
  DimensionKind kind = DimensionKind::box;
  std::optional<double> theta;
  double r_min = 0.0;
  double r_max = 0.0;
  std::optional<SlopeFit> fit;
  std::vector<CriticalExponentSample> trace;
  std::optional<Witness> witness;
  bool saturated = false;
};

struct SpectrumCurve {
  DimensionKind kind = DimensionKind::assouad_spectrum;
  std::vector<double> theta_grid;
  std::vector<DimensionEstimate> estimates;
};

struct EstimatorOptions {
  unsigned workers = 1;
  // Per-count cap on greedy steps for localized counts.
  std::uint64_t max_steps = 4'000'000;
  // Scale at which the set is sampled for the center policy.
  double center_sample_scale = 1e-3;
  std::optional<std::vector<double>> centers;
  // Cluster width relative to delta in the intermediate-dimension program.
  double cluster_fraction = 0.01;
  std::size_t max_clusters = 400'000;
  std::uint64_t point_budget = kDefaultPointBudget;
};

DimensionEstimate estimate_box_dimension(const SetSpec& spec, const ScaleGrid& grid,
                                         const EstimatorOptions& options = {});

// Default scale window used for the relation R = r^theta.
ScaleGrid spectrum_policy_grid(double theta);

SpectrumCurve estimate_assouad_spectrum(const SetSpec& spec, const std::vector<double>& thetas,
                                        const std::optional<ScaleGrid>& grid,
                                        const EstimatorOptions& options = {});

DimensionEstimate estimate_assouad_dimension(const SetSpec& spec,
                                             const std::optional<ScaleGrid>& grid,
                                             const EstimatorOptions& options = {});

ScaleGrid intermediate_policy_grid();

SpectrumCurve estimate_intermediate_dimension(const SetSpec& spec,
                                              const std::vector<double>& thetas,
                                              const ScaleGrid& deltas,
                                              const EstimatorOptions& options = {});

struct CriticalExponent {
  double s_star = 0.0;
  bool saturated = false;
  std::size_t iterations = 0;
};

class RestrictedCoverProblem;
// Exponent where the minimal restricted cost crosses 1.
CriticalExponent critical_exponent(const RestrictedCoverProblem& problem);

std::vector<double> center_policy_default(const PointSet& set);

}  // namespace fracdim
