#include "fracdim/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include "fracdim/covering.hpp"
#include "fracdim/error.hpp"
#include "fracdim/estimators.hpp"
#include "fracdim/numeric.hpp"
#include "fracdim/oracles.hpp"
#include "fracdim/pointset.hpp"
#include "fracdim/verify.hpp"

namespace fracdim {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

using Cell = std::variant<std::monostate, double, std::int64_t, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return "";
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return csv_escape(std::get<std::string>(c));
}

// Same 12-digit value that the CSV carries.
ordered_json number_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(format_number(x).c_str(), nullptr);
}

ordered_json cell_json(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return nullptr;
  if (const auto* d = std::get_if<double>(&c)) return number_json(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (const auto* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

ordered_json table_json(const Table& t) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

ordered_json fit_json(const SlopeFit& fit) {
  ordered_json samples = ordered_json::array();
  for (const auto& s : fit.samples) samples.push_back({{"scale", number_json(s.scale)}, {"count", number_json(s.count)}});
  return {{"slope", number_json(fit.slope)},
          {"intercept", number_json(fit.intercept)},
          {"residual", number_json(fit.residual)},
          {"n_samples", fit.n_samples},
          {"samples", samples}};
}

ordered_json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return {{"center", number_json(w->center)},
          {"relation", w->relation},
          {"theta", w->theta ? number_json(*w->theta) : ordered_json(nullptr)},
          {"fixed_radius", w->fixed_radius ? number_json(*w->fixed_radius) : ordered_json(nullptr)}};
}

struct Options {
  std::string set = "reciprocal:p=1";
  std::string thetas = "0.1:0.9:0.1";
  std::optional<double> rmax;
  std::optional<double> rmin;
  std::optional<double> ratio;
  std::string output;
  std::string format = "csv";
  unsigned workers = 1;
  std::optional<std::uint64_t> max_points;
  std::string kind;
  std::string only;
  std::string fault;
};

std::vector<double> parse_theta_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  auto number = [&](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
      raise(ErrorKind::parse, "invalid theta grid '" + text + "' (expected start:stop:step)");
    }
    return v;
  };
  std::vector<double> grid;
  if (parts.size() == 1) {
    grid.push_back(number(parts[0]));
  } else if (parts.size() == 3) {
    grid = arithmetic_range(number(parts[0]), number(parts[1]), number(parts[2]));
  } else {
    raise(ErrorKind::parse, "invalid theta grid '" + text + "' (expected start:stop:step)");
  }
  if (grid.empty()) raise(ErrorKind::parse, "theta grid '" + text + "' is empty");
  return grid;
}

std::optional<ScaleGrid> explicit_grid(const Options& o) {
  if (!o.rmax && !o.rmin && !o.ratio) return std::nullopt;
  if (!o.rmax || !o.rmin) raise(ErrorKind::parse, "--rmax and --rmin must be given together");
  return ScaleGrid::geometric(*o.rmax, *o.rmin, o.ratio.value_or(kDefaultRatio));
}

ordered_json config_json(const Options& o, const std::string& command) {
  ordered_json c = {{"command", command}, {"set", o.set}, {"format", o.format}, {"workers", o.workers}};
  if (!o.kind.empty()) c["kind"] = o.kind;
  if (command == "spectrum") c["thetas"] = o.thetas;
  if (o.rmax) c["rmax"] = number_json(*o.rmax);
  if (o.rmin) c["rmin"] = number_json(*o.rmin);
  if (o.ratio) c["ratio"] = number_json(*o.ratio);
  if (o.max_points) c["max_points"] = *o.max_points;
  if (!o.only.empty()) c["only"] = o.only;
  if (!o.fault.empty()) c["inject_fault"] = o.fault;
  return c;
}

struct Emission {
  Table table;
  ordered_json diagnostics = ordered_json::object();
};

void emit(const Options& o, const std::string& command, const Emission& e, std::ostream& out) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.output.empty()) {
    file.open(o.output, std::ios::binary);
    if (!file) raise(ErrorKind::parse, "cannot open output file '" + o.output + "'");
    sink = &file;
  }
  if (o.format == "json") {
    ordered_json doc = {{"config", config_json(o, command)},
                        {"results", table_json(e.table)},
                        {"diagnostics", e.diagnostics},
                        {"version", kSchemaVersion}};
    *sink << doc.dump(2) << '\n';
  } else {
    write_csv(*sink, e.table);
  }
}

std::uint64_t resolve_budget(const Options& o) {
  return o.max_points ? *o.max_points : point_budget_from_env();
}

Cell oracle_cell(const SetSpec& spec, DimensionKind kind, std::optional<double> theta) {
  if (!has_oracle(spec, kind)) return std::monostate{};
  return closed_form(spec, kind, theta).value;
}

Cell abs_error_cell(const Cell& oracle, double value) {
  if (const auto* d = std::get_if<double>(&oracle)) return std::fabs(value - *d);
  return std::monostate{};
}

Emission cmd_gen(const Options& o) {
  const SetSpec spec = parse_set_spec(o.set);
  const double r = o.rmin.value_or(1e-2);
  const PointSet set = generate(spec, r, resolve_budget(o));
  Emission e;
  e.table.columns = {"x"};
  for (double x : set.points()) e.table.rows.push_back({x});
  e.diagnostics = {{"points", set.size()}, {"adequate_above", number_json(set.adequate_above())}};
  return e;
}

Emission cmd_count(const Options& o) {
  const SetSpec spec = parse_set_spec(o.set);
  const auto scales = geometric_range(o.rmax.value_or(1e-2), o.rmin.value_or(1e-6), o.ratio.value_or(kDefaultRatio));
  const PointSet set = generate(spec, scales.back(), resolve_budget(o));
  Emission e;
  e.table.columns = {"r", "count", "exactness", "error_bound"};
  for (double r : scales) {
    const auto c = covering_number(set, r);
    e.table.rows.push_back({r, static_cast<std::int64_t>(c.count),
                            std::string(c.exactness == Exactness::exact ? "exact" : "bounded"),
                            static_cast<std::int64_t>(c.error_bound)});
  }
  e.diagnostics = {{"points", set.size()}, {"adequate_above", number_json(set.adequate_above())}};
  return e;
}

EstimatorOptions estimator_options(const Options& o) {
  EstimatorOptions eo;
  eo.workers = std::max(1u, o.workers);
  eo.point_budget = resolve_budget(o);
  return eo;
}

Emission cmd_dim(const Options& o) {
  const SetSpec spec = parse_set_spec(o.set);
  const auto grid = explicit_grid(o);
  const auto eo = estimator_options(o);
  DimensionEstimate est;
  DimensionKind kind;
  if (o.kind == "box") {
    kind = DimensionKind::box;
    est = estimate_box_dimension(spec, grid.value_or(ScaleGrid::geometric(1e-2, 1e-7, kDefaultRatio)), eo);
  } else {
    kind = DimensionKind::assouad;
    est = estimate_assouad_dimension(spec, grid, eo);
  }
  const Cell oracle = oracle_cell(spec, kind, std::nullopt);
  Emission e;
  e.table.columns = {"kind", "estimate", "oracle", "abs_error", "residual", "r_min", "r_max", "clipped", "witness_center", "witness_relation"};
  Cell wc = std::monostate{};
  Cell wr = std::monostate{};
  if (est.witness) {
    wc = est.witness->center;
    wr = est.witness->relation;
  }
  e.table.rows.push_back({std::string(to_string(kind)), est.value, oracle, abs_error_cell(oracle, est.value),
                          est.fit ? Cell(est.fit->residual) : Cell(std::monostate{}), est.r_min, est.r_max,
                          est.clipped, wc, wr});
  e.diagnostics = {{"raw_value", number_json(est.raw_value)},
                   {"fit", est.fit ? fit_json(*est.fit) : ordered_json(nullptr)},
                   {"witness", witness_json(est.witness)}};
  return e;
}

Emission cmd_spectrum(const Options& o) {
  const SetSpec spec = parse_set_spec(o.set);
  const auto thetas = parse_theta_grid(o.thetas);
  const auto grid = explicit_grid(o);
  const auto eo = estimator_options(o);
  Emission e;
  ordered_json per_theta = ordered_json::array();
  if (o.kind == "assouad") {
    const auto curve = estimate_assouad_spectrum(spec, thetas, grid, eo);
    e.table.columns = {"theta", "estimate", "oracle", "abs_error", "residual", "witness_center"};
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      const auto& est = curve.estimates[i];
      const Cell oracle = oracle_cell(spec, DimensionKind::assouad_spectrum, thetas[i]);
      e.table.rows.push_back({thetas[i], est.value, oracle, abs_error_cell(oracle, est.value), est.fit->residual,
                              est.witness->center});
      per_theta.push_back({{"theta", number_json(thetas[i])},
                           {"raw_value", number_json(est.raw_value)},
                           {"clipped", est.clipped},
                           {"r_min", number_json(est.r_min)},
                           {"r_max", number_json(est.r_max)},
                           {"fit", fit_json(*est.fit)}});
    }
    if (has_oracle(spec, DimensionKind::assouad_spectrum)) {
      const auto oc = oracle_curve(spec, DimensionKind::assouad_spectrum, thetas);
      e.diagnostics["oracle_transition_theta"] =
          oc.transition_theta ? number_json(*oc.transition_theta) : ordered_json(nullptr);
    }
    std::optional<double> first_saturated;
    for (std::size_t i = 0; i < thetas.size() && !first_saturated; ++i) {
      if (curve.estimates[i].value >= 0.97) first_saturated = thetas[i];
    }
    e.diagnostics["estimated_transition_theta"] = first_saturated ? number_json(*first_saturated) : ordered_json(nullptr);
    e.diagnostics["per_theta"] = per_theta;
  } else {
    const ScaleGrid deltas = grid.value_or(intermediate_policy_grid());
    const auto curve = estimate_intermediate_dimension(spec, thetas, deltas, eo);
    e.table.columns = {"theta", "estimate", "oracle", "abs_error", "residual", "s_star_trace_ref"};
    ordered_json traces = ordered_json::array();
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      const auto& est = curve.estimates[i];
      const Cell oracle = oracle_cell(spec, DimensionKind::intermediate, thetas[i]);
      e.table.rows.push_back({thetas[i], est.value, oracle, abs_error_cell(oracle, est.value), est.fit->residual,
                              "traces/" + std::to_string(i)});
      ordered_json samples = ordered_json::array();
      for (const auto& s : est.trace) {
        samples.push_back({{"delta", number_json(s.delta)},
                           {"s_star", number_json(s.s_star)},
                           {"s_lower", number_json(s.s_lower)},
                           {"saturated", s.saturated},
                           {"clusters", s.clusters},
                           {"iterations", s.iterations}});
      }
      traces.push_back({{"theta", number_json(thetas[i])},
                        {"limit", number_json(est.fit->intercept)},
                        {"trend", number_json(est.fit->slope)},
                        {"clipped", est.clipped},
                        {"saturated", est.saturated},
                        {"samples", samples}});
    }
    e.diagnostics["traces"] = traces;
  }
  return e;
}

Emission cmd_verify(const Options& o, bool& all_passed) {
  VerifyOptions vo;
  vo.only = o.only;
  vo.workers = std::max(1u, o.workers);
  if (!o.fault.empty()) {
    if (o.fault != "greedy-off-by-one") raise(ErrorKind::parse, "unknown fault '" + o.fault + "'");
    vo.greedy_off_by_one = true;
  }
  const auto results = run_verify_suite(vo);
  Emission e;
  e.table.columns = {"group", "check", "status", "detail"};
  ordered_json failures = ordered_json::array();
  all_passed = true;
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    e.table.rows.push_back({r.group, r.name, std::string(r.passed ? "pass" : "fail"), r.detail});
    if (!r.passed) {
      failures.push_back({{"check", r.group + "/" + r.name},
                          {"detail", r.detail},
                          {"counterexample", r.counterexample.empty() ? ordered_json(nullptr) : ordered_json::parse(r.counterexample)}});
    }
  }
  e.diagnostics = {{"checks", results.size()}, {"failures", failures}};
  return e;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::resource: return kExitResource;
    case ErrorKind::certificate_violation: return kExitVerificationFailed;
    default: return kExitUsage;
  }
}

void add_common(CLI::App* cmd, Options& o, bool grid) {
  cmd->add_option("--set", o.set, "set spec: reciprocal:p=1, cantor:m=2,c=1/3, interval, file:<path>");
  if (grid) {
    cmd->add_option("--rmax", o.rmax, "largest scale");
    cmd->add_option("--rmin", o.rmin, "smallest scale");
    cmd->add_option("--ratio", o.ratio, "geometric ratio between scales, in (0,1)");
  }
  cmd->add_option("--output", o.output, "write to this file instead of stdout");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1u, 1024u));
  cmd->add_option("--max-points", o.max_points, "point budget (overrides FRACDIM_MAX_POINTS)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covering numbers and fractal dimension estimates for 1D point sets", "fracdim"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "write a scale-adequate truncation as a point file");
  add_common(gen, o, true);
  auto* count = app.add_subcommand("count", "covering numbers over a geometric scale grid");
  add_common(count, o, true);
  auto* dim = app.add_subcommand("dim", "box or Assouad dimension estimate");
  dim->add_option("kind", o.kind, "box or assouad")->required()->check(CLI::IsMember({"box", "assouad"}));
  add_common(dim, o, true);
  auto* spectrum = app.add_subcommand("spectrum", "Assouad spectrum or intermediate dimensions over a theta grid");
  spectrum->add_option("kind", o.kind, "assouad or intermediate")->required()->check(CLI::IsMember({"assouad", "intermediate"}));
  spectrum->add_option("--thetas", o.thetas, "theta grid start:stop:step");
  add_common(spectrum, o, true);
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--only", o.only, "run a single group");
  verify->add_option("--inject-fault", o.fault, "test-only fault injection (greedy-off-by-one)");
  add_common(verify, o, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Emission emission;
    std::string command;
    bool passed = true;
    if (*gen) {
      command = "gen";
      emission = cmd_gen(o);
      std::ofstream file;
      std::ostream* sink = &out;
      if (!o.output.empty()) {
        file.open(o.output);
        if (!file) raise(ErrorKind::parse, "cannot open output file '" + o.output + "'");
        sink = &file;
      }
      *sink << "# " << o.set << " truncated at r=" << format_number(o.rmin.value_or(1e-2)) << '\n';
      for (const auto& row : emission.table.rows) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g\n", std::get<double>(row[0]));
        *sink << buf;
      }
      return kExitOk;
    }
    if (*count) {
      command = "count";
      emission = cmd_count(o);
    } else if (*dim) {
      command = "dim";
      emission = cmd_dim(o);
    } else if (*spectrum) {
      command = "spectrum";
      emission = cmd_spectrum(o);
    } else {
      command = "verify";
      emission = cmd_verify(o, passed);
    }
    emit(o, command, emission, out);
    if (!passed) {
      for (const auto& row : emission.table.rows) {
        if (std::get<std::string>(row[2]) == "fail") {
          err << "FAILED " << std::get<std::string>(row[0]) << "/" << std::get<std::string>(row[1]) << ": "
              << std::get<std::string>(row[3]) << '\n';
        }
      }
      return kExitVerificationFailed;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "fracdim: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::bad_alloc&) {
    err << "fracdim: resource error: out of memory\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "fracdim: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
}

}  // namespace fracdim
