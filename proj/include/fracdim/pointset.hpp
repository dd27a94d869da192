#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fracdim {

// {1/n^p : n >= 1} together with the accumulation point 0.
struct Reciprocal {
  double p = 1.0;
};

// Attractor of m equally spaced maps of ratio c on [0,1].
struct Cantor {
  int m = 2;
  double c = 1.0 / 3.0;
};

struct UnitInterval {};

struct ExplicitPoints {
  std::vector<double> points;
};

struct SetSpec {
  std::variant<Reciprocal, Cantor, UnitInterval, ExplicitPoints> kind;

  static SetSpec reciprocal(double p);
  static SetSpec cantor(int m, double c);
  static SetSpec unit_interval();
  static SetSpec explicit_points(std::vector<double> points);

  // Throws a parameter error when the family parameters are invalid.
  void validate() const;
  std::string describe() const;
};

// Parses "reciprocal:p=1", "cantor:m=2,c=1/3", "interval", "unit_interval"
// and "file:<path>" (the file is loaded immediately).
SetSpec parse_set_spec(std::string_view text);

// Cells [x, min(x + length, hull_end)] represented by each point; used when
// the points stand in for small intervals of a perfect set.
struct CellModel {
  double length = 0.0;
  double hull_end = 0.0;
  bool left_partial = false;
};

class PointSet {
 public:
  PointSet() = default;
  // Requires strictly increasing finite coordinates.
  explicit PointSet(std::vector<double> points, bool includes_accumulation = false,
                    double adequate_above = 0.0,
                    std::optional<CellModel> cells = std::nullopt);

  // Sorts and removes duplicates first.
  static PointSet from_unsorted(std::vector<double> points);

  const std::vector<double>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  double operator[](std::size_t i) const { return points_[i]; }

  bool includes_accumulation() const noexcept { return includes_accumulation_; }
  double adequate_above() const noexcept { return adequate_above_; }
  const std::optional<CellModel>& cells() const noexcept { return cells_; }

  PointSet scaled(double lambda) const;
  PointSet translated(double offset) const;

 private:
  std::vector<double> points_;
  bool includes_accumulation_ = false;
  double adequate_above_ = 0.0;
  std::optional<CellModel> cells_;
};

inline constexpr std::uint64_t kDefaultPointBudget = 50'000'000;

// Point budget from FRACDIM_MAX_POINTS, falling back to the default.
std::uint64_t point_budget_from_env();

// Coordinate 1/n^p, computed directly from the integer index.
double reciprocal_point(double n, double p) noexcept;

PointSet generate(const SetSpec& spec, double r,
                  std::uint64_t point_budget = kDefaultPointBudget);

PointSet load_points(std::istream& source);
PointSet load_points_file(const std::string& path);
void write_points(std::ostream& out, const PointSet& set);

double min_gap(const PointSet& set);

PointSet localize(const PointSet& set, double center, double radius);

}  // namespace fracdim
