#pragma once

#include <cstdint>
#include <vector>

namespace fracdim {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double compensated_total(const std::vector<double>& terms) noexcept;

// ceil(x), except values within a relative 1e-12 of an integer snap to it,
// so that r^{-s} = 10 does not become 11 through rounding in pow.
std::uint64_t snapped_ceil(double x);

// Geometric progression start, start*ratio, ... kept while the term is at
// least `stop` up to half a step in log space.
std::vector<double> geometric_range(double start, double stop, double ratio);

// Arithmetic progression start:stop:step inclusive within half a step.
std::vector<double> arithmetic_range(double start, double stop, double step);

}  // namespace fracdim
