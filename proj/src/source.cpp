#include "fracdim/source.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracdim/error.hpp"

namespace fracdim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Indices beyond 2^52 are not exactly representable steps.
constexpr double kIndexLimit = 4503599627370496.0;

}  // namespace

std::optional<double> PointSetSource::first_at_least(double y) const {
  const auto& pts = set_->points();
  const auto it = std::lower_bound(pts.begin(), pts.end(), y);
  if (it == pts.end()) return std::nullopt;
  return *it;
}

std::optional<double> PointSetSource::next_above(double y) const {
  const auto& pts = set_->points();
  const auto it = std::upper_bound(pts.begin(), pts.end(), y);
  if (it == pts.end()) return std::nullopt;
  return *it;
}

std::optional<double> PointSetSource::last_at_most(double y) const {
  const auto& pts = set_->points();
  const auto it = std::upper_bound(pts.begin(), pts.end(), y);
  if (it == pts.begin()) return std::nullopt;
  return *(it - 1);
}

std::optional<std::uint64_t> PointSetSource::count_in(double lo, double hi) const {
  const auto& pts = set_->points();
  const auto a = std::lower_bound(pts.begin(), pts.end(), lo);
  const auto b = std::upper_bound(a, pts.end(), hi);
  return static_cast<std::uint64_t>(b - a);
}

std::optional<double> ReciprocalSource::index_from_above(double y, bool strict) const {
  auto keep = [&](double n) {
    const double x = reciprocal_point(n, p_);
    return strict ? x > y : x >= y;
  };
  const double t = std::pow(y, -1.0 / p_);
  if (!(t < kIndexLimit)) return std::nullopt;
  double n = std::max(1.0, std::floor(t));
  while (n >= 1.0 && !keep(n)) n -= 1.0;
  while (keep(n + 1.0)) n += 1.0;
  return n;
}

std::optional<double> ReciprocalSource::first_at_least(double y) const {
  if (y <= 0.0) return 0.0;
  if (y > 1.0) return std::nullopt;
  const auto n = index_from_above(y, false);
  if (!n) return y;
  return reciprocal_point(*n, p_);
}

std::optional<double> ReciprocalSource::next_above(double y) const {
  if (y < 0.0) return 0.0;
  if (y >= 1.0) return std::nullopt;
  if (y == 0.0) return std::nextafter(0.0, 1.0);
  const auto n = index_from_above(y, true);
  if (!n) return std::nextafter(y, kInf);
  return reciprocal_point(*n, p_);
}

std::optional<double> ReciprocalSource::last_at_most(double y) const {
  if (y < 0.0) return std::nullopt;
  if (y >= 1.0) return 1.0;
  if (y == 0.0) return 0.0;
  const auto n = index_from_above(y, true);
  if (!n) return y;
  // point(n) > y >= point(n + 1)
  return reciprocal_point(*n + 1.0, p_);
}

std::optional<std::uint64_t> ReciprocalSource::count_in(double lo, double hi) const {
  if (hi < lo || hi < 0.0) return 0;
  if (lo <= 0.0) return std::nullopt;
  if (lo > 1.0) return 0;
  const auto n_lo = index_from_above(lo, false);
  if (!n_lo) return std::nullopt;
  double n_hi = 0.0;  // points strictly above hi
  if (hi < 1.0) {
    const auto n = index_from_above(hi, true);
    if (!n) return std::nullopt;
    n_hi = *n;
  }
  if (*n_lo <= n_hi) return 0;
  return static_cast<std::uint64_t>(*n_lo - n_hi);
}

std::optional<double> SegmentSource::first_at_least(double y) const {
  if (y <= lo_) return lo_;
  if (y > hi_) return std::nullopt;
  return y;
}

std::optional<double> SegmentSource::next_above(double y) const {
  if (y < lo_) return lo_;
  if (y >= hi_) return std::nullopt;
  return std::nextafter(y, kInf);
}

std::optional<double> SegmentSource::last_at_most(double y) const {
  if (y < lo_) return std::nullopt;
  return std::min(y, hi_);
}

std::optional<std::uint64_t> SegmentSource::count_in(double lo, double hi) const {
  const double a = std::max(lo, lo_);
  const double b = std::min(hi, hi_);
  if (a > b) return 0;
  if (a == b) return 1;
  return std::nullopt;
}

// Descends the construction tree; every construction interval endpoint is in
// the attractor, and at binary64 resolution a nested point is y itself.
std::optional<double> CantorSource::first_at_least(double y) const {
  if (y <= 0.0) return 0.0;
  if (y > 1.0) return std::nullopt;
  double a = 0.0;
  double len = 1.0;
  for (;;) {
    const double child = len * c_;
    const double step = (len - child) / (m_ - 1);
    if (child <= 0.0 || a + child == a || len <= 4.0 * std::numeric_limits<double>::epsilon() * y) {
      return y;
    }
    bool descended = false;
    for (int j = 0; j < m_; ++j) {
      const double left = a + j * step;
      if (y <= left) return left;
      if (y <= left + child) {
        a = left;
        len = child;
        descended = true;
        break;
      }
    }
    if (!descended) return y;
  }
}

std::optional<double> CantorSource::next_above(double y) const {
  if (y < 0.0) return 0.0;
  if (y >= 1.0) return std::nullopt;
  return first_at_least(std::nextafter(y, kInf));
}

std::optional<double> CantorSource::last_at_most(double y) const {
  if (y < 0.0) return std::nullopt;
  if (y >= 1.0) return 1.0;
  double a = 0.0;
  double len = 1.0;
  for (;;) {
    const double child = len * c_;
    const double step = (len - child) / (m_ - 1);
    if (child <= 0.0 || a + child == a || len <= 4.0 * std::numeric_limits<double>::epsilon() * y) {
      return y;
    }
    bool descended = false;
    for (int j = m_ - 1; j >= 0; --j) {
      const double left = a + j * step;
      const double right = left + child;
      if (y >= right) return right;
      if (y >= left) {
        a = left;
        len = child;
        descended = true;
        break;
      }
    }
    if (!descended) return a;
  }
}

std::optional<std::uint64_t> CantorSource::count_in(double lo, double hi) const {
  if (hi < lo) return 0;
  const auto first = first_at_least(lo);
  if (!first || *first > hi) return 0;
  const auto next = next_above(*first);
  if (!next || *next > hi) return 1;
  return std::nullopt;
}

std::shared_ptr<const PointSource> make_source(const SetSpec& spec) {
  spec.validate();
  if (const auto* rec = std::get_if<Reciprocal>(&spec.kind)) {
    return std::make_shared<ReciprocalSource>(rec->p);
  }
  if (const auto* can = std::get_if<Cantor>(&spec.kind)) {
    if (can->m * can->c >= 1.0) return std::make_shared<SegmentSource>(0.0, 1.0);
    return std::make_shared<CantorSource>(can->m, can->c);
  }
  if (std::holds_alternative<UnitInterval>(spec.kind)) {
    return std::make_shared<SegmentSource>(0.0, 1.0);
  }
  return std::make_shared<PointSetSource>(
      PointSet::from_unsorted(std::get<ExplicitPoints>(spec.kind).points));
}

std::uint64_t greedy_count(const PointSource& source, double r, double lo, double hi,
                           std::uint64_t max_steps) {
  if (!(r > 0.0)) raise(ErrorKind::domain, "covering scale must be positive");
  std::uint64_t count = 0;
  for (auto q = source.first_at_least(lo); q && *q <= hi; q = source.next_above(*q + r)) {
    if (++count > max_steps) {
      raise(ErrorKind::resource, "greedy count exceeded the step cap of " + std::to_string(max_steps));
    }
  }
  return count;
}

}  // namespace fracdim
