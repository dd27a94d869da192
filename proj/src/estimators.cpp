#include "fracdim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "fracdim/covering.hpp"
#include "fracdim/error.hpp"
#include "fracdim/numeric.hpp"
#include "fracdim/parallel.hpp"

namespace fracdim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_theta_open(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) raise(ErrorKind::domain, "theta must lie in (0,1)");
}

std::string format_relation_theta(double theta) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "R=r^%.12g", theta);
  return buf;
}

std::string format_relation_radius(double radius) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "R=%.12g", radius);
  return buf;
}

double clip_unit(double x, bool& clipped) {
  clipped = x < 0.0 || x > 1.0;
  return std::clamp(x, 0.0, 1.0);
}

}  // namespace

ScaleGrid ScaleGrid::geometric(double r_max, double r_min, double ratio) {
  return ScaleGrid(geometric_range(r_max, r_min, ratio));
}

ScaleGrid::ScaleGrid(std::vector<double> scales) : scales_(std::move(scales)) {
  if (scales_.size() < 4) raise(ErrorKind::domain, "a scale grid needs at least 4 scales");
  for (std::size_t i = 0; i < scales_.size(); ++i) {
    if (!(scales_[i] > 0.0) || !std::isfinite(scales_[i])) raise(ErrorKind::domain, "scales must be positive");
    if (i > 0 && !(scales_[i] < scales_[i - 1])) raise(ErrorKind::domain, "scales must be strictly decreasing");
  }
}

ScaleGrid ScaleGrid::scaled(double lambda) const {
  std::vector<double> out(scales_);
  for (double& r : out) r *= lambda;
  return ScaleGrid(std::move(out));
}

SlopeFit fit_loglog_slope(const std::vector<ScaleSample>& samples) {
  if (samples.size() < 4) raise(ErrorKind::domain, "slope fit needs at least 4 samples");
  const std::size_t n = samples.size();
  std::vector<double> x(n);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(samples[i].scale > 0.0)) raise(ErrorKind::domain, "slope fit scales must be positive");
    if (!(samples[i].count >= 1.0)) raise(ErrorKind::domain, "slope fit counts must be >= 1");
    x[i] = -std::log(samples[i].scale);
    y[i] = std::log(samples[i].count);
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) raise(ErrorKind::domain, "slope fit needs distinct scales");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    fit.residual = std::max(fit.residual, std::fabs(y[i] - (fit.intercept + fit.slope * x[i])));
  }
  fit.n_samples = n;
  fit.samples = samples;
  return fit;
}

const char* to_string(DimensionKind kind) noexcept {
  switch (kind) {
    case DimensionKind::box: return "box";
    case DimensionKind::assouad: return "assouad";
    case DimensionKind::assouad_spectrum: return "assouad_spectrum";
    case DimensionKind::intermediate: return "intermediate";
    case DimensionKind::hausdorff: return "hausdorff";
  }
  return "unknown";
}

DimensionEstimate estimate_box_dimension(const SetSpec& spec, const ScaleGrid& grid,
                                         const EstimatorOptions& options) {
  const auto source = make_source(spec);
  const auto& scales = grid.scales();
  std::vector<ScaleSample> samples(scales.size());
  parallel_for(scales.size(), options.workers, [&](std::size_t i) {
    const auto count = greedy_count(*source, scales[i], -kInf, kInf, options.point_budget);
    samples[i] = ScaleSample{scales[i], static_cast<double>(count)};
  });
  DimensionEstimate est;
  est.kind = DimensionKind::box;
  est.fit = fit_loglog_slope(samples);
  est.raw_value = est.fit->slope;
  est.value = clip_unit(est.raw_value, est.clipped);
  est.r_min = grid.smallest();
  est.r_max = grid.largest();
  return est;
}

std::vector<double> center_policy_default(const PointSet& set) {
  if (set.empty()) raise(ErrorKind::domain, "center policy needs a nonempty set");
  const auto& pts = set.points();
  const std::size_t n = pts.size();
  std::vector<double> centers;
  if (set.includes_accumulation()) centers.push_back(pts.front());
  if (n >= 2) {
    std::vector<std::size_t> order(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) order[i] = i;
    const std::size_t top = std::min<std::size_t>(8, n - 1);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                      [&](std::size_t a, std::size_t b) {
                        const double ga = pts[a + 1] - pts[a];
                        const double gb = pts[b + 1] - pts[b];
                        return ga < gb || (ga == gb && a < b);
                      });
    for (std::size_t k = 0; k < top; ++k) {
      centers.push_back(pts[order[k]]);
      centers.push_back(pts[order[k] + 1]);
    }
  }
  constexpr std::size_t kSubsample = 16;
  if (n <= kSubsample) {
    centers.insert(centers.end(), pts.begin(), pts.end());
  } else {
    for (std::size_t k = 0; k < kSubsample; ++k) {
      const std::size_t idx = (k * (n - 1) + (kSubsample - 1) / 2) / (kSubsample - 1);
      centers.push_back(pts[idx]);
    }
  }
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  return centers;
}

namespace {

std::vector<double> resolve_centers(const SetSpec& spec, const EstimatorOptions& options) {
  if (options.centers) {
    if (options.centers->empty()) raise(ErrorKind::domain, "center list is empty");
    std::vector<double> c(*options.centers);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  }
  return center_policy_default(generate(spec, options.center_sample_scale, options.point_budget));
}

struct RelationFit {
  bool ok = false;
  SlopeFit fit;
};

// Slope of log N_r(X ∩ B(center, R(r))) against log(R/r) over the scales,
// stopping at the first scale whose count exceeds the step cap.
template <class RadiusOf>
RelationFit relation_fit(const PointSource& source, double center, const std::vector<double>& scales,
                         RadiusOf radius_of, std::uint64_t max_steps) {
  std::vector<ScaleSample> samples;
  for (double r : scales) {
    const double R = radius_of(r);
    if (!(R > r)) continue;
    if (!samples.empty()) {
      // Counts grow at most like R/r; skip scales that would exceed the cap.
      const auto& last = samples.back();
      if (last.count * (last.scale * R / r) > static_cast<double>(max_steps)) break;
    }
    std::uint64_t count = 0;
    try {
      count = greedy_count(source, r, center - R, center + R, max_steps);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::resource) throw;
      break;
    }
    if (count == 0) continue;
    samples.push_back(ScaleSample{r / R, static_cast<double>(count)});
  }
  RelationFit out;
  if (samples.size() < 4) return out;
  out.fit = fit_loglog_slope(samples);
  out.ok = true;
  return out;
}

struct RelationResult {
  bool ok = false;
  double slope = 0.0;
  double center = 0.0;
  SlopeFit fit;
};

// Max over centers; centers are ascending so the first maximum is the
// smallest coordinate.
RelationResult reduce_centers(const std::vector<RelationFit>& fits, const std::vector<double>& centers,
                              std::size_t offset) {
  RelationResult best;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    const auto& f = fits[offset + k];
    if (!f.ok) continue;
    if (!best.ok || f.fit.slope > best.slope) {
      best.ok = true;
      best.slope = f.fit.slope;
      best.center = centers[k];
      best.fit = f.fit;
    }
  }
  return best;
}

std::vector<double> relation_scales(const std::optional<ScaleGrid>& grid, double theta) {
  return grid ? grid->scales() : spectrum_policy_grid(theta).scales();
}

DimensionEstimate spectrum_estimate(const RelationResult& best, double theta) {
  if (!best.ok) raise(ErrorKind::domain, "no center produced enough nonempty scales for the spectrum fit");
  DimensionEstimate est;
  est.kind = DimensionKind::assouad_spectrum;
  est.theta = theta;
  est.raw_value = best.slope;
  est.value = clip_unit(best.slope, est.clipped);
  est.fit = best.fit;
  const auto& smp = best.fit.samples;
  est.r_max = smp.front().scale * std::pow(smp.front().scale, theta / (1.0 - theta));
  est.r_min = smp.back().scale * std::pow(smp.back().scale, theta / (1.0 - theta));
  est.witness = Witness{best.center, format_relation_theta(theta), theta, std::nullopt};
  return est;
}

}  // namespace

ScaleGrid spectrum_policy_grid(double theta) {
  check_theta_open(theta);
  // R = r^theta must stay below 0.1 and R/r must span at least three decades.
  const double r_max = std::min(1e-4, std::pow(10.0, -1.0 / (1.0 - theta)));
  const double r_min = std::pow(10.0, -std::max(12.0, 4.0 / (1.0 - theta)));
  return ScaleGrid::geometric(r_max, r_min, kDefaultRatio);
}

SpectrumCurve estimate_assouad_spectrum(const SetSpec& spec, const std::vector<double>& thetas,
                                        const std::optional<ScaleGrid>& grid,
                                        const EstimatorOptions& options) {
  if (thetas.empty()) raise(ErrorKind::domain, "theta grid is empty");
  for (double t : thetas) check_theta_open(t);
  const auto source = make_source(spec);
  const auto centers = resolve_centers(spec, options);
  std::vector<std::vector<double>> scales;
  for (double t : thetas) scales.push_back(relation_scales(grid, t));

  const std::size_t nc = centers.size();
  std::vector<RelationFit> fits(thetas.size() * nc);
  parallel_for(fits.size(), options.workers, [&](std::size_t task) {
    const std::size_t ti = task / nc;
    const double theta = thetas[ti];
    fits[task] = relation_fit(*source, centers[task % nc], scales[ti],
                              [theta](double r) { return std::pow(r, theta); }, options.max_steps);
  });

  SpectrumCurve curve;
  curve.kind = DimensionKind::assouad_spectrum;
  curve.theta_grid = thetas;
  for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
    curve.estimates.push_back(spectrum_estimate(reduce_centers(fits, centers, ti * nc), thetas[ti]));
  }
  return curve;
}

DimensionEstimate estimate_assouad_dimension(const SetSpec& spec, const std::optional<ScaleGrid>& grid,
                                             const EstimatorOptions& options) {
  static const std::vector<double> kRelationThetas{0.3, 0.5, 0.7, 0.9};
  static const std::vector<double> kFixedRadii{1e-1, 1e-2, 1e-3};
  constexpr double kWitnessTolerance = 0.02;

  const auto source = make_source(spec);
  const auto centers = resolve_centers(spec, options);
  const std::size_t nc = centers.size();
  const std::size_t nrel = kRelationThetas.size() + kFixedRadii.size();

  std::vector<std::vector<double>> scales;
  for (double t : kRelationThetas) scales.push_back(relation_scales(grid, t));
  for (double R : kFixedRadii) {
    if (grid) {
      std::vector<double> below;
      for (double r : grid->scales()) {
        if (r < R) below.push_back(r);
      }
      scales.push_back(below);
    } else {
      scales.push_back(geometric_range(R * 0.1, R * 1e-6, kDefaultRatio));
    }
  }

  std::vector<RelationFit> fits(nrel * nc);
  parallel_for(fits.size(), options.workers, [&](std::size_t task) {
    const std::size_t rel = task / nc;
    const double center = centers[task % nc];
    if (rel < kRelationThetas.size()) {
      const double theta = kRelationThetas[rel];
      fits[task] = relation_fit(*source, center, scales[rel],
                                [theta](double r) { return std::pow(r, theta); }, options.max_steps);
    } else {
      const double R = kFixedRadii[rel - kRelationThetas.size()];
      fits[task] = relation_fit(*source, center, scales[rel], [R](double) { return R; },
                                options.max_steps);
    }
  });

  std::vector<RelationResult> results(nrel);
  double best_value = -kInf;
  double best_raw = -kInf;
  for (std::size_t rel = 0; rel < nrel; ++rel) {
    results[rel] = reduce_centers(fits, centers, rel * nc);
    if (!results[rel].ok) continue;
    bool clipped = false;
    best_value = std::max(best_value, clip_unit(results[rel].slope, clipped));
    best_raw = std::max(best_raw, results[rel].slope);
  }
  if (best_value == -kInf) raise(ErrorKind::domain, "no scale relation produced a usable fit");

  DimensionEstimate est;
  est.kind = DimensionKind::assouad;
  est.raw_value = best_raw;
  est.value = clip_unit(best_raw, est.clipped);
  // Witness: the widest scale separation attaining the maximum within tolerance.
  for (std::size_t rel = 0; rel < nrel; ++rel) {
    const auto& res = results[rel];
    if (!res.ok) continue;
    bool clipped = false;
    if (clip_unit(res.slope, clipped) < best_value - kWitnessTolerance) continue;
    Witness w;
    w.center = res.center;
    if (rel < kRelationThetas.size()) {
      w.theta = kRelationThetas[rel];
      w.relation = format_relation_theta(*w.theta);
    } else {
      w.fixed_radius = kFixedRadii[rel - kRelationThetas.size()];
      w.relation = format_relation_radius(*w.fixed_radius);
    }
    est.witness = w;
    est.fit = res.fit;
    break;
  }
  est.r_max = 0.0;
  est.r_min = kInf;
  for (const auto& s : scales) {
    if (s.empty()) continue;
    est.r_max = std::max(est.r_max, s.front());
    est.r_min = std::min(est.r_min, s.back());
  }
  return est;
}

namespace {

// Root in [0, hi] of sum m_k d_k^s = 1 for a fixed cover.
double fixed_cover_root(const RestrictedCoverProblem::Solution& sol, double hi) {
  double total = 0.0;
  for (auto m : sol.multiplicity) total += static_cast<double>(m);
  if (total <= 1.0) return 0.0;
  auto excess = [&](double s) {
    CompensatedSum acc;
    for (std::size_t k = 0; k < sol.cover.size(); ++k) {
      acc.add(static_cast<double>(sol.multiplicity[k]) * std::pow(sol.cover[k].diameter, s));
    }
    return acc.value() - 1.0;
  };
  double lo = 0.0;
  for (int it = 0; it < 64; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace

// The minimal cost is decreasing in s. Each step takes the optimal cover at
// the current exponent and moves to where that cover costs exactly 1, which
// approaches the crossing monotonically from above.
CriticalExponent critical_exponent(const RestrictedCoverProblem& problem) {
  CriticalExponent out;
  auto sol = problem.solve(1.0);
  out.iterations = 1;
  if (sol.cost >= 1.0) {
    out.s_star = 1.0;
    out.saturated = true;
    return out;
  }
  double s = 1.0;
  for (int it = 0; it < 100; ++it) {
    const double next = fixed_cover_root(sol, s);
    const bool stalled = s - next <= 1e-12;
    s = next;
    if (stalled || s == 0.0) break;
    sol = problem.solve(s);
    ++out.iterations;
    if (sol.cost >= 1.0 - 1e-13) break;
  }
  out.s_star = s;
  return out;
}

ScaleGrid intermediate_policy_grid() { return ScaleGrid::geometric(1e-2, 1e-7, kDefaultRatio); }

namespace {

std::optional<std::vector<Cluster>> adaptive_clusters(const PointSource& source, double delta,
                                                      const EstimatorOptions& options) {
  for (double width = options.cluster_fraction * delta; width <= 0.25 * delta; width *= 2.0) {
    auto clusters = cluster_points(source, width, options.max_clusters);
    if (clusters) return clusters;
  }
  return std::nullopt;
}

}  // namespace

SpectrumCurve estimate_intermediate_dimension(const SetSpec& spec, const std::vector<double>& thetas,
                                              const ScaleGrid& deltas, const EstimatorOptions& options) {
  if (thetas.empty()) raise(ErrorKind::domain, "theta grid is empty");
  for (double t : thetas) {
    if (!(t > 0.0 && t <= 1.0)) raise(ErrorKind::domain, "theta must lie in (0,1]");
  }
  for (double d : deltas.scales()) {
    if (!(d < 1.0)) raise(ErrorKind::domain, "delta must lie in (0,1)");
  }
  const auto source = make_source(spec);
  const auto& ds = deltas.scales();

  std::vector<std::optional<std::vector<Cluster>>> clusters(ds.size());
  parallel_for(ds.size(), options.workers,
               [&](std::size_t i) { clusters[i] = adaptive_clusters(*source, ds[i], options); });

  std::vector<std::optional<CriticalExponentSample>> cells(thetas.size() * ds.size());
  parallel_for(cells.size(), options.workers, [&](std::size_t task) {
    const std::size_t ti = task / ds.size();
    const std::size_t di = task % ds.size();
    if (!clusters[di]) return;
    const RestrictedCoverProblem problem(*clusters[di], ds[di], thetas[ti]);
    const auto upper = critical_exponent(problem);
    const auto lower = critical_exponent(problem.endpoint_relaxation());
    cells[task] = CriticalExponentSample{ds[di], upper.s_star, lower.s_star, upper.saturated,
                                         problem.size(), upper.iterations};
  });

  SpectrumCurve curve;
  curve.kind = DimensionKind::intermediate;
  curve.theta_grid = thetas;
  for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
    DimensionEstimate est;
    est.kind = DimensionKind::intermediate;
    est.theta = thetas[ti];
    for (std::size_t di = 0; di < ds.size(); ++di) {
      if (cells[ti * ds.size() + di]) est.trace.push_back(*cells[ti * ds.size() + di]);
    }
    if (est.trace.size() < 3) {
      raise(ErrorKind::resource, "too few delta values fit the cluster budget for extrapolation");
    }
    // s*(delta) = a + b / log(1/delta); the intercept a is the delta -> 0 limit.
    const std::size_t n = est.trace.size();
    double mx = 0.0;
    double my = 0.0;
    for (const auto& c : est.trace) {
      mx += 1.0 / std::log(1.0 / c.delta);
      my += c.s_star;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& c : est.trace) {
      const double x = 1.0 / std::log(1.0 / c.delta) - mx;
      sxx += x * x;
      sxy += x * (c.s_star - my);
    }
    SlopeFit fit;
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    fit.n_samples = n;
    bool all_saturated = true;
    for (const auto& c : est.trace) {
      const double x = 1.0 / std::log(1.0 / c.delta);
      fit.residual = std::max(fit.residual, std::fabs(c.s_star - (fit.intercept + fit.slope * x)));
      all_saturated = all_saturated && c.saturated;
    }
    est.saturated = all_saturated;
    est.raw_value = all_saturated ? 1.0 : fit.intercept;
    est.value = clip_unit(est.raw_value, est.clipped);
    est.fit = fit;
    est.r_max = est.trace.front().delta;
    est.r_min = est.trace.back().delta;
    curve.estimates.push_back(std::move(est));
  }
  return curve;
}

}  // namespace fracdim
