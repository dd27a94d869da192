#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "fracdim/pointset.hpp"

namespace fracdim {

// Ordered access to a closed subset of the line, finite or not.
// Queries return infima/suprema, which belong to the set because it is closed.
class PointSource {
 public:
  virtual ~PointSource() = default;

  // inf of points >= y.
  virtual std::optional<double> first_at_least(double y) const = 0;
  // inf of points > y.
  virtual std::optional<double> next_above(double y) const = 0;
  // sup of points <= y.
  virtual std::optional<double> last_at_most(double y) const = 0;
  // Number of points in [lo, hi]; nullopt when infinite.
  virtual std::optional<std::uint64_t> count_in(double lo, double hi) const = 0;

  virtual bool includes_accumulation() const { return false; }
};

class PointSetSource final : public PointSource {
 public:
  explicit PointSetSource(PointSet set)
      : set_(std::make_shared<const PointSet>(std::move(set))) {}
  explicit PointSetSource(std::shared_ptr<const PointSet> set) : set_(std::move(set)) {}

  std::optional<double> first_at_least(double y) const override;
  std::optional<double> next_above(double y) const override;
  std::optional<double> last_at_most(double y) const override;
  std::optional<std::uint64_t> count_in(double lo, double hi) const override;
  bool includes_accumulation() const override { return set_->includes_accumulation(); }

 private:
  std::shared_ptr<const PointSet> set_;
};

// The full infinite set {1/n^p} ∪ {0}. Below the resolution where consecutive
// points stop being distinguishable in binary64 the set is treated as solid.
class ReciprocalSource final : public PointSource {
 public:
  explicit ReciprocalSource(double p) : p_(p) {}

  std::optional<double> first_at_least(double y) const override;
  std::optional<double> next_above(double y) const override;
  std::optional<double> last_at_most(double y) const override;
  std::optional<std::uint64_t> count_in(double lo, double hi) const override;
  bool includes_accumulation() const override { return true; }

 private:
  // Largest n with point(n) >= y (or > y when strict), 0 if none.
  std::optional<double> index_from_above(double y, bool strict) const;
  double p_;
};

class SegmentSource final : public PointSource {
 public:
  SegmentSource(double lo, double hi) : lo_(lo), hi_(hi) {}

  std::optional<double> first_at_least(double y) const override;
  std::optional<double> next_above(double y) const override;
  std::optional<double> last_at_most(double y) const override;
  std::optional<std::uint64_t> count_in(double lo, double hi) const override;

 private:
  double lo_;
  double hi_;
};

// Exact attractor of the Cantor construction, resolved to binary64.
class CantorSource final : public PointSource {
 public:
  CantorSource(int m, double c) : m_(m), c_(c) {}

  std::optional<double> first_at_least(double y) const override;
  std::optional<double> next_above(double y) const override;
  std::optional<double> last_at_most(double y) const override;
  std::optional<std::uint64_t> count_in(double lo, double hi) const override;

 private:
  int m_;
  double c_;
};

std::shared_ptr<const PointSource> make_source(const SetSpec& spec);

// Greedy count of the points in [lo, hi] at scale r.
// Throws a resource error once more than max_steps intervals are needed.
std::uint64_t greedy_count(const PointSource& source, double r, double lo, double hi,
                           std::uint64_t max_steps = UINT64_MAX);

}  // namespace fracdim
