#include "fracdim/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "fracdim/error.hpp"

namespace fracdim {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    carry_ += (sum_ - t) + x;
  } else {
    carry_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_total(const std::vector<double>& terms) noexcept {
  CompensatedSum acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

std::uint64_t snapped_ceil(double x) {
  if (!std::isfinite(x) || x > 9.0e18) raise(ErrorKind::resource, "count exceeds integer range");
  if (x <= 0.0) return 0;
  const double nearest = std::round(x);
  if (std::fabs(x - nearest) <= 1e-12 * std::max(1.0, x)) {
    return static_cast<std::uint64_t>(nearest);
  }
  return static_cast<std::uint64_t>(std::ceil(x));
}

namespace {

double round_12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace

std::vector<double> geometric_range(double start, double stop, double ratio) {
  if (!(start > 0.0) || !(stop > 0.0) || !std::isfinite(start) || !std::isfinite(stop)) {
    raise(ErrorKind::domain, "scale range endpoints must be positive and finite");
  }
  if (!(ratio > 0.0 && ratio < 1.0)) raise(ErrorKind::domain, "scale ratio must lie in (0,1)");
  if (stop > start) raise(ErrorKind::domain, "rmin must not exceed rmax");
  const double floor = stop * std::sqrt(ratio);
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double t = start * std::pow(ratio, i);
    if (t < floor) break;
    out.push_back(t);
    if (out.size() > 100000) raise(ErrorKind::resource, "scale grid too long");
  }
  return out;
}

std::vector<double> arithmetic_range(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop)) {
    raise(ErrorKind::parse, "grid step must be positive");
  }
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double t = start + i * step;
    if (t > stop + 0.5 * step) break;
    out.push_back(round_12(t));
    if (out.size() > 100000) raise(ErrorKind::resource, "grid too long");
  }
  return out;
}

}  // namespace fracdim
