#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fracdim/pointset.hpp"
#include "fracdim/source.hpp"

namespace fracdim {

enum class Exactness { exact, bounded };

struct CoverCount {
  std::uint64_t count = 0;
  double scale = 0.0;
  Exactness exactness = Exactness::exact;
  // Additive bound: the true count lies in [count, count + error_bound].
  std::uint64_t error_bound = 0;
  bool below_adequacy = false;
  bool empty_localization = false;
};

CoverCount covering_number(const PointSet& set, double r);

inline constexpr std::size_t kBruteForceLimit = 20;
CoverCount covering_number_brute(const PointSet& set, double r);

CoverCount localized_covering_number(const PointSet& set, double center, double R, double r);

struct CoverInterval {
  double position = 0.0;  // left end
  double diameter = 0.0;
};

struct RestrictedCoverCost {
  double s = 0.0;
  double delta = 0.0;
  double theta = 1.0;
  double cost = 0.0;
  std::vector<CoverInterval> cover;
  // False when delta^{1/theta} falls below the set's adequacy scale.
  bool certified = true;

  double recomputed_cost() const;
};

RestrictedCoverCost restricted_cover_min_cost(const PointSet& set, double s, double delta,
                                              double theta);

struct TwoScaleCost {
  double s = 0.0;
  double r = 0.0;
  double theta = 0.0;
  std::uint64_t M = 0;
  std::uint64_t coarse_count = 0;
  double fine_term = 0.0;
  double coarse_term = 0.0;
  double cost = 0.0;
};

TwoScaleCost two_scale_cover_cost(double s, double r, double theta);

// A contiguous group of points with hull [lo, hi]; count is nullopt when the
// group holds infinitely many points.
struct Cluster {
  double lo = 0.0;
  double hi = 0.0;
  std::optional<std::uint64_t> count;
};

// Groups the points of a source into consecutive clusters of span <= width.
// Returns nullopt when more than max_clusters would be needed.
std::optional<std::vector<Cluster>> cluster_points(const PointSource& source, double width,
                                                   std::size_t max_clusters);

std::vector<Cluster> singleton_clusters(const PointSet& set);

// Restricted-cover dynamic program over clusters. Clusters are never split, so
// the minimum is an upper bound for the underlying set (exact for singletons).
// A cluster may also be covered point by point at the minimal diameter.
class RestrictedCoverProblem {
 public:
  RestrictedCoverProblem(std::vector<Cluster> clusters, double delta, double theta);

  struct Solution {
    double cost = 0.0;
    std::vector<CoverInterval> cover;
    std::vector<std::uint64_t> multiplicity;
  };

  Solution solve(double s) const;

  double delta() const noexcept { return delta_; }
  double theta() const noexcept { return theta_; }
  double min_diameter() const noexcept { return rho_; }
  std::size_t size() const noexcept { return clusters_.size(); }

  // Problem on both endpoints of every cluster: its minimum is a lower bound.
  RestrictedCoverProblem endpoint_relaxation() const;

 private:
  std::vector<Cluster> clusters_;
  double delta_;
  double theta_;
  double rho_;
};

}  // namespace fracdim
