#include "fracdim/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracdim/error.hpp"
#include "fracdim/numeric.hpp"

namespace fracdim {

namespace {

void check_scale(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) raise(ErrorKind::domain, "covering scale r must be positive");
}

std::uint64_t greedy_points(const std::vector<double>& pts, double r) {
  std::uint64_t count = 0;
  auto it = pts.begin();
  while (it != pts.end()) {
    ++count;
    it = std::upper_bound(it, pts.end(), *it + r);
  }
  return count;
}

// Greedy over the union of cells [x, min(x + length, hull_end)].
std::uint64_t greedy_cells(const std::vector<double>& pts, const CellModel& cells, double r) {
  std::uint64_t count = 0;
  double pos = pts.front();
  for (;;) {
    ++count;
    const double end = pos + r;
    if (cells.hull_end <= end) break;
    const auto it = std::upper_bound(pts.begin(), pts.end(), end - cells.length);
    if (it == pts.end()) break;
    pos = std::max(*it, end);
  }
  return count + (cells.left_partial ? 1 : 0);
}

}  // namespace

CoverCount covering_number(const PointSet& set, double r) {
  check_scale(r);
  if (set.empty()) raise(ErrorKind::domain, "cannot cover an empty set");
  CoverCount out;
  out.scale = r;
  out.count = greedy_points(set.points(), r);
  out.below_adequacy = r < set.adequate_above();
  if (set.cells()) {
    const std::uint64_t upper = greedy_cells(set.points(), *set.cells(), r);
    out.error_bound = upper > out.count ? upper - out.count : 0;
  }
  out.exactness = (out.error_bound == 0 && !out.below_adequacy) ? Exactness::exact : Exactness::bounded;
  return out;
}

CoverCount covering_number_brute(const PointSet& set, double r) {
  check_scale(r);
  if (set.empty()) raise(ErrorKind::domain, "cannot cover an empty set");
  const std::size_t n = set.size();
  if (n > kBruteForceLimit) {
    raise(ErrorKind::resource, "brute-force covering is limited to " +
                                   std::to_string(kBruteForceLimit) + " points");
  }
  const auto& pts = set.points();
  std::vector<std::uint32_t> covers(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (pts[i] <= pts[j] && pts[j] <= pts[i] + r) covers[i] |= 1u << j;
    }
  }
  const std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1u;
  int best = static_cast<int>(n);
  for (std::uint32_t mask = 1; mask <= all; ++mask) {
    const int k = __builtin_popcount(mask);
    if (k >= best) continue;
    std::uint32_t covered = 0;
    for (std::uint32_t m = mask; m != 0; m &= m - 1) covered |= covers[__builtin_ctz(m)];
    if (covered == all) best = k;
  }
  CoverCount out;
  out.count = static_cast<std::uint64_t>(best);
  out.scale = r;
  out.below_adequacy = r < set.adequate_above();
  out.exactness = out.below_adequacy ? Exactness::bounded : Exactness::exact;
  return out;
}

CoverCount localized_covering_number(const PointSet& set, double center, double R, double r) {
  check_scale(r);
  if (r > R) raise(ErrorKind::domain, "localized counts need r <= R");
  const PointSet local = localize(set, center, R);
  if (local.empty()) {
    CoverCount out;
    out.scale = r;
    out.empty_localization = true;
    out.below_adequacy = r < set.adequate_above();
    return out;
  }
  return covering_number(local, r);
}

double RestrictedCoverCost::recomputed_cost() const {
  CompensatedSum acc;
  for (const auto& b : cover) acc.add(std::pow(b.diameter, s));
  return acc.value();
}

namespace {

void check_restricted(double s, double delta, double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) raise(ErrorKind::domain, "theta must lie in (0,1]");
  if (!(delta > 0.0 && delta < 1.0)) raise(ErrorKind::domain, "delta must lie in (0,1)");
  if (!(s >= 0.0) || !std::isfinite(s)) raise(ErrorKind::domain, "exponent s must be >= 0");
}

}  // namespace

RestrictedCoverCost restricted_cover_min_cost(const PointSet& set, double s, double delta,
                                              double theta) {
  check_restricted(s, delta, theta);
  if (set.empty()) raise(ErrorKind::domain, "cannot cover an empty set");
  const RestrictedCoverProblem problem(singleton_clusters(set), delta, theta);
  const auto sol = problem.solve(s);
  RestrictedCoverCost out;
  out.s = s;
  out.delta = delta;
  out.theta = theta;
  for (std::size_t k = 0; k < sol.cover.size(); ++k) {
    for (std::uint64_t m = 0; m < sol.multiplicity[k]; ++m) out.cover.push_back(sol.cover[k]);
  }
  out.cost = out.recomputed_cost();
  out.certified = problem.min_diameter() >= set.adequate_above();
  return out;
}

TwoScaleCost two_scale_cover_cost(double s, double r, double theta) {
  if (!(r > 0.0 && r < 1.0)) raise(ErrorKind::domain, "two-scale cost needs 0 < r < 1");
  if (!(theta > 0.0 && theta < 1.0)) raise(ErrorKind::domain, "two-scale cost needs 0 < theta < 1");
  if (!(s > 0.0) || !std::isfinite(s)) raise(ErrorKind::domain, "two-scale cost needs s > 0");
  TwoScaleCost out;
  out.s = s;
  out.r = r;
  out.theta = theta;
  out.M = snapped_ceil(std::pow(r, -(s + theta * (1.0 - s)) / 2.0));
  const double coarse_diameter = std::pow(r, theta);
  out.coarse_count = snapped_ceil((1.0 / static_cast<double>(out.M)) / coarse_diameter);
  out.fine_term = static_cast<double>(out.M) * std::pow(r, s);
  out.coarse_term = static_cast<double>(out.coarse_count) * std::pow(coarse_diameter, s);
  CompensatedSum acc;
  acc.add(out.fine_term);
  acc.add(out.coarse_term);
  out.cost = acc.value();
  return out;
}

std::optional<std::vector<Cluster>> cluster_points(const PointSource& source, double width,
                                                   std::size_t max_clusters) {
  if (!(width >= 0.0)) raise(ErrorKind::domain, "cluster width must be >= 0");
  std::vector<Cluster> out;
  for (auto q = source.first_at_least(-std::numeric_limits<double>::infinity()); q;) {
    auto hi = source.last_at_most(*q + width);
    if (!hi || *hi < *q) hi = *q;
    out.push_back(Cluster{*q, *hi, source.count_in(*q, *hi)});
    if (out.size() > max_clusters) return std::nullopt;
    q = source.next_above(*hi);
  }
  return out;
}

std::vector<Cluster> singleton_clusters(const PointSet& set) {
  std::vector<Cluster> out;
  out.reserve(set.size());
  for (double x : set.points()) out.push_back(Cluster{x, x, 1});
  return out;
}

RestrictedCoverProblem::RestrictedCoverProblem(std::vector<Cluster> clusters, double delta,
                                               double theta)
    : clusters_(std::move(clusters)), delta_(delta), theta_(theta) {
  check_restricted(0.0, delta, theta);
  if (clusters_.empty()) raise(ErrorKind::domain, "cannot cover an empty set");
  rho_ = std::pow(delta, 1.0 / theta);
  for (std::size_t i = 0; i < clusters_.size(); ++i) {
    const auto& c = clusters_[i];
    if (!(c.lo <= c.hi) || c.hi > c.lo + delta_) {
      raise(ErrorKind::domain, "cluster spans must not exceed delta");
    }
    if (i > 0 && !(clusters_[i - 1].hi < c.lo)) raise(ErrorKind::domain, "clusters must be disjoint and sorted");
  }
}

RestrictedCoverProblem::Solution RestrictedCoverProblem::solve(double s) const {
  const std::size_t n = clusters_.size();
  const double rho_cost = std::pow(rho_, s);
  constexpr std::size_t kAlone = std::numeric_limits<std::size_t>::max();
  std::vector<double> f(n + 1, 0.0);
  std::vector<std::size_t> from(n + 1, 0);
  std::size_t lo = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double hi = clusters_[j - 1].hi;
    while (hi > clusters_[lo].lo + delta_) ++lo;
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = j - 1;
    for (std::size_t i = lo; i < j; ++i) {
      const double span = hi - clusters_[i].lo;
      const double c = f[i] + (span <= rho_ ? rho_cost : std::pow(span, s));
      if (c < best) {
        best = c;
        arg = i;
      }
    }
    const auto& count = clusters_[j - 1].count;
    if (count && *count > 1) {
      const double c = f[j - 1] + static_cast<double>(*count) * rho_cost;
      if (c < best) {
        best = c;
        arg = kAlone;
      }
    }
    f[j] = best;
    from[j] = arg;
  }

  Solution sol;
  CompensatedSum acc;
  for (std::size_t j = n; j > 0;) {
    if (from[j] == kAlone) {
      const auto& c = clusters_[j - 1];
      sol.cover.push_back(CoverInterval{c.lo, rho_});
      sol.multiplicity.push_back(*c.count);
      acc.add(static_cast<double>(*c.count) * rho_cost);
      j -= 1;
    } else {
      const std::size_t i = from[j];
      const double d = std::max(clusters_[j - 1].hi - clusters_[i].lo, rho_);
      sol.cover.push_back(CoverInterval{clusters_[i].lo, d});
      sol.multiplicity.push_back(1);
      acc.add(std::pow(d, s));
      j = i;
    }
  }
  std::reverse(sol.cover.begin(), sol.cover.end());
  std::reverse(sol.multiplicity.begin(), sol.multiplicity.end());
  sol.cost = acc.value();
  return sol;
}

RestrictedCoverProblem RestrictedCoverProblem::endpoint_relaxation() const {
  std::vector<double> pts;
  pts.reserve(2 * clusters_.size());
  for (const auto& c : clusters_) {
    pts.push_back(c.lo);
    if (c.hi != c.lo) pts.push_back(c.hi);
  }
  std::vector<Cluster> singles;
  singles.reserve(pts.size());
  for (double x : pts) singles.push_back(Cluster{x, x, 1});
  return RestrictedCoverProblem(std::move(singles), delta_, theta_);
}

}  // namespace fracdim
