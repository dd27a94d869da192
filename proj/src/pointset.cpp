#include "fracdim/pointset.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fracdim/error.hpp"
#include "fracdim/numeric.hpp"

namespace fracdim {

SetSpec SetSpec::reciprocal(double p) { return SetSpec{Reciprocal{p}}; }
SetSpec SetSpec::cantor(int m, double c) { return SetSpec{Cantor{m, c}}; }
SetSpec SetSpec::unit_interval() { return SetSpec{UnitInterval{}}; }
SetSpec SetSpec::explicit_points(std::vector<double> points) {
  return SetSpec{ExplicitPoints{std::move(points)}};
}

void SetSpec::validate() const {
  if (const auto* rec = std::get_if<Reciprocal>(&kind)) {
    if (!(rec->p > 0.0) || !std::isfinite(rec->p)) {
      raise(ErrorKind::parameter, "reciprocal exponent p must be positive");
    }
  } else if (const auto* can = std::get_if<Cantor>(&kind)) {
    if (can->m < 2) raise(ErrorKind::parameter, "cantor branch count m must be >= 2");
    if (!(can->c > 0.0 && can->c < 1.0)) {
      raise(ErrorKind::parameter, "cantor ratio c must lie in (0,1)");
    }
    if (can->m * can->c > 1.0 + 1e-12) raise(ErrorKind::parameter, "cantor requires m*c <= 1");
  } else if (const auto* ex = std::get_if<ExplicitPoints>(&kind)) {
    if (ex->points.empty()) raise(ErrorKind::empty_set, "explicit point set is empty");
    for (double x : ex->points) {
      if (!std::isfinite(x)) raise(ErrorKind::parameter, "explicit coordinates must be finite");
    }
  }
}

namespace {

std::string number_text(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_real(const std::string& text, double& out) {
  if (text.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return errno == 0 && end == text.c_str() + text.size() && std::isfinite(out);
}

// Accepts decimals and simple fractions such as 1/3.
double parse_parameter(const std::string& key, const std::string& text) {
  const auto slash = text.find('/');
  double value = 0.0;
  if (slash == std::string::npos) {
    if (parse_real(text, value)) return value;
  } else {
    double num = 0.0;
    double den = 0.0;
    if (parse_real(trim(text.substr(0, slash)), num) &&
        parse_real(trim(text.substr(slash + 1)), den) && den != 0.0) {
      return num / den;
    }
  }
  raise(ErrorKind::parse, "invalid value for '" + key + "': '" + text + "'");
}

}  // namespace

std::string SetSpec::describe() const {
  if (const auto* rec = std::get_if<Reciprocal>(&kind)) return "reciprocal:p=" + number_text(rec->p);
  if (const auto* can = std::get_if<Cantor>(&kind)) {
    return "cantor:m=" + std::to_string(can->m) + ",c=" + number_text(can->c);
  }
  if (std::holds_alternative<UnitInterval>(kind)) return "interval";
  return "explicit:n=" + std::to_string(std::get<ExplicitPoints>(kind).points.size());
}

SetSpec parse_set_spec(std::string_view text) {
  const std::string full = trim(text);
  const auto colon = full.find(':');
  const std::string name = full.substr(0, colon);
  const std::string args = colon == std::string::npos ? std::string() : full.substr(colon + 1);

  if (name == "file") {
    if (args.empty()) raise(ErrorKind::parse, "file spec needs a path: file:<path>");
    return SetSpec::explicit_points(load_points_file(args).points());
  }

  std::vector<std::pair<std::string, std::string>> kv;
  std::stringstream ss(args);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) raise(ErrorKind::parse, "expected key=value in set spec: '" + item + "'");
    kv.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
  }

  SetSpec spec;
  if (name == "reciprocal") {
    Reciprocal rec;
    for (const auto& [k, v] : kv) {
      if (k != "p") raise(ErrorKind::parse, "unknown reciprocal parameter '" + k + "'");
      rec.p = parse_parameter(k, v);
    }
    spec.kind = rec;
  } else if (name == "cantor") {
    Cantor can;
    for (const auto& [k, v] : kv) {
      if (k == "m") {
        const double m = parse_parameter(k, v);
        if (m != std::floor(m) || m > 1e6) raise(ErrorKind::parse, "cantor m must be an integer");
        can.m = static_cast<int>(m);
      } else if (k == "c") {
        can.c = parse_parameter(k, v);
      } else {
        raise(ErrorKind::parse, "unknown cantor parameter '" + k + "'");
      }
    }
    spec.kind = can;
  } else if (name == "interval" || name == "unit_interval") {
    if (!kv.empty()) raise(ErrorKind::parse, "interval takes no parameters");
    spec.kind = UnitInterval{};
  } else {
    raise(ErrorKind::parse, "unknown set family '" + name + "'");
  }
  spec.validate();
  return spec;
}

PointSet::PointSet(std::vector<double> points, bool includes_accumulation, double adequate_above,
                   std::optional<CellModel> cells)
    : points_(std::move(points)),
      includes_accumulation_(includes_accumulation),
      adequate_above_(adequate_above),
      cells_(cells) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) raise(ErrorKind::parameter, "point coordinates must be finite");
    if (i > 0 && !(points_[i - 1] < points_[i])) {
      raise(ErrorKind::parameter, "points must be strictly increasing");
    }
  }
  if (!(adequate_above_ >= 0.0)) raise(ErrorKind::parameter, "adequacy scale must be >= 0");
}

PointSet PointSet::from_unsorted(std::vector<double> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return PointSet(std::move(points));
}

PointSet PointSet::scaled(double lambda) const {
  if (!(lambda > 0.0)) raise(ErrorKind::domain, "scale factor must be positive");
  std::vector<double> pts(points_);
  for (double& x : pts) x *= lambda;
  std::optional<CellModel> cells = cells_;
  if (cells) {
    cells->length *= lambda;
    cells->hull_end *= lambda;
  }
  return PointSet(std::move(pts), includes_accumulation_, adequate_above_ * lambda, cells);
}

PointSet PointSet::translated(double offset) const {
  std::vector<double> pts(points_);
  for (double& x : pts) x += offset;
  std::optional<CellModel> cells = cells_;
  if (cells) cells->hull_end += offset;
  return PointSet(std::move(pts), includes_accumulation_, adequate_above_, cells);
}

std::uint64_t point_budget_from_env() {
  const char* env = std::getenv("FRACDIM_MAX_POINTS");
  if (env == nullptr || *env == '\0') return kDefaultPointBudget;
  double value = 0.0;
  if (!parse_real(trim(env), value) || value < 1.0 || value > 1e18) {
    raise(ErrorKind::parse, std::string("FRACDIM_MAX_POINTS is not a positive count: ") + env);
  }
  return static_cast<std::uint64_t>(value);
}

double reciprocal_point(double n, double p) noexcept {
  return p == 1.0 ? 1.0 / n : 1.0 / std::pow(n, p);
}

namespace {

void check_budget(double needed, std::uint64_t budget) {
  if (needed > static_cast<double>(budget)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "truncation needs %.3g points, above the point budget cap of %llu",
                  needed, static_cast<unsigned long long>(budget));
    raise(ErrorKind::resource, buf);
  }
}

PointSet generate_reciprocal(double p, double r, std::uint64_t budget) {
  // Largest n with 1/n^p >= r.
  const double approx = std::floor(std::pow(r, -1.0 / p));
  check_budget(approx, budget);
  double n = std::max(1.0, approx);
  while (n > 1.0 && reciprocal_point(n, p) < r) n -= 1.0;
  while (reciprocal_point(n + 1.0, p) >= r) n += 1.0;
  check_budget(n + 1.0, budget);
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(n) + 1);
  pts.push_back(0.0);
  for (double k = n; k >= 1.0; k -= 1.0) pts.push_back(reciprocal_point(k, p));
  return PointSet(std::move(pts), true, r);
}

PointSet generate_cantor(int m, double c, double r, std::uint64_t budget) {
  double len = 1.0;
  int level = 0;
  double count = 1.0;
  while (!(len < r)) {
    len *= c;
    ++level;
    count *= m;
    check_budget(count, budget);
  }
  std::vector<double> lefts{0.0};
  double parent = 1.0;
  for (int l = 0; l < level; ++l) {
    const double child = parent * c;
    const double step = (parent - child) / (m - 1);
    std::vector<double> next;
    next.reserve(lefts.size() * m);
    for (double a : lefts) {
      for (int j = 0; j < m; ++j) next.push_back(a + j * step);
    }
    lefts.swap(next);
    parent = child;
  }
  // Touching children (m*c = 1) can produce repeated coordinates.
  lefts.erase(std::unique(lefts.begin(), lefts.end()), lefts.end());
  return PointSet(std::move(lefts), false, r, CellModel{len, 1.0, false});
}

PointSet generate_interval(double r, std::uint64_t budget) {
  const double segments = static_cast<double>(snapped_ceil(2.0 / r));
  check_budget(segments + 1.0, budget);
  const auto n = static_cast<std::size_t>(segments);
  std::vector<double> pts(n + 1);
  for (std::size_t k = 0; k <= n; ++k) pts[k] = static_cast<double>(k) / segments;
  return PointSet(std::move(pts), false, r, CellModel{1.0 / segments, 1.0, false});
}

}  // namespace

PointSet generate(const SetSpec& spec, double r, std::uint64_t point_budget) {
  spec.validate();
  if (!(r > 0.0) || !std::isfinite(r)) raise(ErrorKind::domain, "generation scale r must be positive");
  if (const auto* ex = std::get_if<ExplicitPoints>(&spec.kind)) {
    check_budget(static_cast<double>(ex->points.size()), point_budget);
    return PointSet::from_unsorted(ex->points);
  }
  if (r >= 1.0) raise(ErrorKind::domain, "generation scale r must be below the set diameter 1");
  if (const auto* rec = std::get_if<Reciprocal>(&spec.kind)) {
    return generate_reciprocal(rec->p, r, point_budget);
  }
  if (const auto* can = std::get_if<Cantor>(&spec.kind)) {
    return generate_cantor(can->m, can->c, r, point_budget);
  }
  return generate_interval(r, point_budget);
}

PointSet load_points(std::istream& source) {
  std::vector<double> pts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    double value = 0.0;
    if (!parse_real(text, value)) {
      raise(ErrorKind::parse, "line " + std::to_string(line_no) + ": not a finite decimal: '" + text + "'");
    }
    pts.push_back(value);
  }
  if (pts.empty()) raise(ErrorKind::empty_set, "point file contains no coordinates");
  return PointSet::from_unsorted(std::move(pts));
}

PointSet load_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::parse, "cannot open point file '" + path + "'");
  return load_points(in);
}

void write_points(std::ostream& out, const PointSet& set) {
  char buf[40];
  for (double x : set.points()) {
    std::snprintf(buf, sizeof buf, "%.17g\n", x);
    out << buf;
  }
}

double min_gap(const PointSet& set) {
  if (set.size() < 2) raise(ErrorKind::domain, "min_gap needs at least two points");
  double best = set[1] - set[0];
  for (std::size_t i = 2; i < set.size(); ++i) best = std::min(best, set[i] - set[i - 1]);
  return best;
}

PointSet localize(const PointSet& set, double center, double radius) {
  if (!(radius > 0.0)) raise(ErrorKind::domain, "localization radius must be positive");
  const auto& pts = set.points();
  const auto first = std::lower_bound(pts.begin(), pts.end(), center - radius);
  const auto last = std::upper_bound(first, pts.end(), center + radius);
  std::optional<CellModel> cells = set.cells();
  if (cells) {
    cells->hull_end = std::min(cells->hull_end, center + radius);
    if (first != pts.begin() && *(first - 1) + cells->length >= center - radius) {
      cells->left_partial = true;
    }
  }
  const bool keeps_accumulation = set.includes_accumulation() && first == pts.begin();
  return PointSet(std::vector<double>(first, last), keeps_accumulation && first != last,
                  set.adequate_above(), cells);
}

}  // namespace fracdim
