#include "fracdim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <random>

#include "fracdim/covering.hpp"
#include "fracdim/error.hpp"
#include "fracdim/estimators.hpp"
#include "fracdim/massdist.hpp"
#include "fracdim/numeric.hpp"
#include "fracdim/oracles.hpp"
#include "fracdim/pointset.hpp"

namespace fracdim {

namespace {

using nlohmann::json;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  // k / 1024 for k in [lo, hi]
  double dyadic(int lo, int hi) {
    return static_cast<double>(lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)))) / 1024.0;
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
  }

 private:
  std::mt19937_64 engine_;
};

PointSet random_dyadic_set(Rng& rng, std::size_t max_points) {
  const std::size_t n = 1 + rng.below(max_points);
  std::vector<double> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(rng.dyadic(0, 1024));
  return PointSet::from_unsorted(std::move(pts));
}

struct Suite {
  const VerifyOptions& options;
  std::vector<CheckResult> results;

  void run(const std::string& group, const std::string& name,
           const std::function<void(CheckResult&)>& body) {
    if (!options.only.empty() && options.only != group) return;
    CheckResult res;
    res.group = group;
    res.name = name;
    res.passed = true;
    try {
      body(res);
    } catch (const std::exception& e) {
      res.passed = false;
      res.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(res));
  }
};

void fail(CheckResult& res, const std::string& detail, const json& example) {
  if (!res.passed) return;
  res.passed = false;
  res.detail = detail;
  res.counterexample = example.dump();
}

double partition_brute(const std::vector<double>& x, double s, double delta, double theta) {
  const double rho = std::pow(delta, 1.0 / theta);
  const std::size_t n = x.size();
  double best = INFINITY;
  for (std::uint32_t cuts = 0; cuts < (1u << (n - 1)); ++cuts) {
    double cost = 0.0;
    std::size_t start = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const bool end_here = i + 1 == n || ((cuts >> i) & 1u);
      if (!end_here) continue;
      if (x[i] > x[start] + delta) ok = false;
      cost += std::pow(std::max(x[i] - x[start], rho), s);
      start = i + 1;
    }
    if (ok) best = std::min(best, cost);
  }
  return best;
}

void covering_checks(Suite& suite) {
  const auto& opt = suite.options;
  suite.run("covering", "greedy-vs-brute", [&](CheckResult& res) {
    Rng rng(opt.seed);
    for (int t = 0; t < 500; ++t) {
      const PointSet set = random_dyadic_set(rng, 12);
      const double r = rng.dyadic(1, 512);
      std::uint64_t greedy = covering_number(set, r).count;
      if (opt.greedy_off_by_one) greedy += 1;
      const std::uint64_t brute = covering_number_brute(set, r).count;
      if (greedy != brute) {
        fail(res, "greedy count differs from brute force",
             json{{"points", set.points()}, {"r", r}, {"greedy", greedy}, {"brute", brute}});
      }
    }
  });

  suite.run("covering", "monotone-in-scale", [&](CheckResult& res) {
    Rng rng(opt.seed + 1);
    for (int t = 0; t < 200; ++t) {
      const PointSet set = random_dyadic_set(rng, 40);
      double r1 = rng.dyadic(1, 512);
      double r2 = rng.dyadic(1, 512);
      if (r1 > r2) std::swap(r1, r2);
      if (covering_number(set, r1).count < covering_number(set, r2).count) {
        fail(res, "count increased with scale", json{{"points", set.points()}, {"r1", r1}, {"r2", r2}});
      }
    }
  });

  suite.run("covering", "monotone-in-set", [&](CheckResult& res) {
    Rng rng(opt.seed + 2);
    for (int t = 0; t < 200; ++t) {
      const PointSet big = random_dyadic_set(rng, 40);
      std::vector<double> sub;
      for (double x : big.points()) {
        if (rng.below(2) == 0) sub.push_back(x);
      }
      if (sub.empty()) sub.push_back(big.front());
      const double r = rng.dyadic(1, 512);
      if (covering_number(PointSet(sub), r).count > covering_number(big, r).count) {
        fail(res, "subset needs more intervals", json{{"set", big.points()}, {"subset", sub}, {"r", r}});
      }
    }
  });

  suite.run("covering", "subadditivity", [&](CheckResult& res) {
    Rng rng(opt.seed + 3);
    for (int t = 0; t < 200; ++t) {
      const PointSet a = random_dyadic_set(rng, 30);
      const PointSet b = random_dyadic_set(rng, 30);
      std::vector<double> u(a.points());
      u.insert(u.end(), b.points().begin(), b.points().end());
      const PointSet uni = PointSet::from_unsorted(u);
      const double r = rng.dyadic(1, 512);
      if (covering_number(uni, r).count > covering_number(a, r).count + covering_number(b, r).count) {
        fail(res, "union exceeds sum of counts", json{{"S", a.points()}, {"T", b.points()}, {"r", r}});
      }
    }
  });

  suite.run("covering", "scale-invariance", [&](CheckResult& res) {
    Rng rng(opt.seed + 4);
    for (int t = 0; t < 200; ++t) {
      const PointSet set = random_dyadic_set(rng, 40);
      const double r = rng.dyadic(1, 512);
      const double lambda = std::ldexp(1.0, static_cast<int>(rng.below(21)) - 10);
      if (covering_number(set.scaled(lambda), lambda * r).count != covering_number(set, r).count) {
        fail(res, "count changed under scaling", json{{"points", set.points()}, {"r", r}, {"lambda", lambda}});
      }
    }
  });

  suite.run("covering", "translation-invariance", [&](CheckResult& res) {
    Rng rng(opt.seed + 5);
    for (int t = 0; t < 200; ++t) {
      const PointSet set = random_dyadic_set(rng, 40);
      const double r = rng.dyadic(1, 512);
      const double c = rng.dyadic(-4096, 4096);
      if (covering_number(set.translated(c), r).count != covering_number(set, r).count) {
        fail(res, "count changed under translation", json{{"points", set.points()}, {"r", r}, {"c", c}});
      }
    }
  });

  suite.run("covering", "scale-adequacy", [&](CheckResult& res) {
    const SetSpec spec = SetSpec::reciprocal(1.0);
    const PointSet coarse = generate(spec, 1e-3);
    const PointSet fine = generate(spec, 1e-5);
    for (double r : {1e-3, 2e-3, 5e-3, 1e-2, 0.1, 0.5}) {
      const auto a = covering_number(coarse, r).count;
      const auto b = covering_number(fine, r).count;
      if (a != b) fail(res, "truncation changed an adequate count", json{{"r", r}, {"coarse", a}, {"fine", b}});
    }
  });

  suite.run("covering", "restricted-dp-vs-partitions", [&](CheckResult& res) {
    Rng rng(opt.seed + 6);
    for (int t = 0; t < 150; ++t) {
      const PointSet set = random_dyadic_set(rng, 10);
      const double s = rng.uniform(0.0, 1.0);
      const double delta = rng.uniform(0.01, 0.9);
      const double theta = rng.uniform(0.1, 1.0);
      const double dp = restricted_cover_min_cost(set, s, delta, theta).cost;
      const double brute = partition_brute(set.points(), s, delta, theta);
      if (std::fabs(dp - brute) > 1e-12 * std::max(1.0, brute)) {
        fail(res, "DP minimum differs from partition enumeration",
             json{{"points", set.points()}, {"s", s}, {"delta", delta}, {"theta", theta}, {"dp", dp}, {"brute", brute}});
      }
    }
  });

  suite.run("covering", "theta-one-degeneration", [&](CheckResult& res) {
    Rng rng(opt.seed + 7);
    for (int t = 0; t < 100; ++t) {
      const PointSet set = random_dyadic_set(rng, 60);
      const double s = rng.uniform(0.0, 1.0);
      const double delta = rng.dyadic(1, 900);
      const auto dp = restricted_cover_min_cost(set, s, delta, 1.0);
      const double expect = static_cast<double>(covering_number(set, delta).count) * std::pow(delta, s);
      if (std::fabs(dp.cost - expect) > 1e-12 * expect) {
        fail(res, "theta = 1 cost differs from N_delta * delta^s",
             json{{"points", set.points()}, {"s", s}, {"delta", delta}, {"dp", dp.cost}, {"expected", expect}});
      }
    }
  });

  suite.run("covering", "dp-below-two-scale-construction", [&](CheckResult& res) {
    for (double r : {1e-3, 3e-4}) {
      const PointSet set = generate(SetSpec::reciprocal(1.0), r);
      for (double s : {0.3, 1.0 / 3.0, 0.4}) {
        const double dp = restricted_cover_min_cost(set, s, std::sqrt(r), 0.5).cost;
        const double construction = two_scale_cover_cost(s, r, 0.5).cost;
        if (dp > construction * (1.0 + 1e-12)) {
          fail(res, "DP optimum exceeds an admissible cover", json{{"r", r}, {"s", s}, {"dp", dp}, {"construction", construction}});
        }
      }
    }
  });

  suite.run("covering", "localized-bound", [&](CheckResult& res) {
    Rng rng(opt.seed + 8);
    const PointSet set = generate(SetSpec::reciprocal(1.0), 1e-4);
    for (int t = 0; t < 200; ++t) {
      const double center = set[rng.below(set.size())];
      const double R = rng.uniform(1e-4, 0.5);
      const double r = R * rng.uniform(1e-3, 1.0);
      const auto c = localized_covering_number(set, center, R, r);
      if (c.count > snapped_ceil(2.0 * R / r) + 1) {
        fail(res, "localized count above 2R/r + 1", json{{"center", center}, {"R", R}, {"r", r}, {"count", c.count}});
      }
    }
  });
}

void twoscale_checks(Suite& suite) {
  auto costs = [](double s) {
    std::vector<double> out;
    for (int k = 1; k <= 6; ++k) out.push_back(two_scale_cover_cost(s, std::pow(10.0, -2 * k), 0.5).cost);
    return out;
  };
  suite.run("twoscale", "supercritical-decreasing", [&](CheckResult& res) {
    const auto c = costs(0.4);
    for (std::size_t i = 2; i < c.size(); ++i) {
      if (!(c[i] < c[i - 1])) fail(res, "cost did not decrease at s = 0.4", json{{"costs", c}});
    }
  });
  suite.run("twoscale", "critical-band", [&](CheckResult& res) {
    const auto c = costs(1.0 / 3.0);
    const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
    if (*hi > 4.0 * *lo) fail(res, "cost left a factor-4 band at s = 1/3", json{{"costs", c}});
  });
  suite.run("twoscale", "subcritical-increasing", [&](CheckResult& res) {
    const auto c = costs(0.3);
    for (std::size_t i = 2; i < c.size(); ++i) {
      if (!(c[i] > c[i - 1])) fail(res, "cost did not increase at s = 0.30", json{{"costs", c}});
    }
  });
}

void massdist_checks(Suite& suite) {
  const std::vector<double> thetas{0.3, 0.5, 0.7};
  const std::vector<double> scales{1e-3, 1e-4, 1e-5};
  suite.run("massdist", "total-mass", [&](CheckResult& res) {
    for (double t : thetas) {
      for (double r : scales) {
        const auto mu = build_mass_distribution(r, t);
        const double total = mu.total_mass();
        const double unit = std::pow(r, mu.s);
        if (total < 1.0 - 1e-12 || total >= 1.0 + unit) {
          fail(res, "total mass outside [1, 1 + r^s)", json{{"theta", t}, {"r", r}, {"total", total}});
        }
      }
    }
  });
  suite.run("massdist", "atom-gaps", [&](CheckResult& res) {
    for (double t : thetas) {
      for (double r : scales) {
        const auto mu = build_mass_distribution(r, t);
        const double bound = 1.0 / (static_cast<double>(mu.M) * static_cast<double>(mu.M));
        for (std::size_t i = 1; i < mu.atoms.size(); ++i) {
          if (mu.atoms[i].coordinate - mu.atoms[i - 1].coordinate < bound) {
            fail(res, "atom gap below 1/M^2", json{{"theta", t}, {"r", r}, {"atom", i}});
          }
        }
      }
    }
  });
  suite.run("massdist", "ball-mass-constant", [&](CheckResult& res) {
    for (double t : thetas) {
      for (double r : scales) {
        const double c = max_normalized_ball_mass(build_mass_distribution(r, t), t);
        if (!(c <= 8.0)) fail(res, "normalized ball mass above 8", json{{"theta", t}, {"r", r}, {"C", c}});
      }
    }
  });
  suite.run("massdist", "ball-mass-order-independent", [&](CheckResult& res) {
    auto mu = build_mass_distribution(1e-4, 0.5);
    const double forward = max_normalized_ball_mass(mu, 0.5);
    // Reflect the atoms; the supremum over windows must be unchanged.
    MassDistribution mirrored = mu;
    for (auto& a : mirrored.atoms) a.coordinate = -a.coordinate;
    std::reverse(mirrored.atoms.begin(), mirrored.atoms.end());
    const double backward = max_normalized_ball_mass(mirrored, 0.5);
    if (forward != backward) fail(res, "window enumeration order changed the supremum", json{{"forward", forward}, {"backward", backward}});
  });
  suite.run("massdist", "dp-cover-certificate", [&](CheckResult& res) {
    for (double t : thetas) {
      const double r = 1e-3;
      const auto mu = build_mass_distribution(r, t);
      const PointSet set = generate(SetSpec::reciprocal(1.0), r);
      const auto dp = restricted_cover_min_cost(set, mu.s, std::pow(r, t), t);
      const auto verdict = mass_lower_bound_check(mu, dp.cover, mu.s);
      if (!verdict.holds) fail(res, "DP cover cost below 1/C", json{{"theta", t}, {"cost", verdict.cost}, {"C", verdict.constant}});
    }
  });
  suite.run("massdist", "missing-atom-rejected", [&](CheckResult& res) {
    const auto mu = build_mass_distribution(1e-3, 0.5);
    std::vector<CoverInterval> cover;
    for (std::size_t i = 1; i < mu.atoms.size(); ++i) cover.push_back(CoverInterval{mu.atoms[i].coordinate, mu.r});
    try {
      mass_lower_bound_check(mu, cover, mu.s);
      fail(res, "a cover missing an atom was accepted", json{{"atoms", mu.atoms.size()}});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::certificate_violation) throw;
    }
  });
  suite.run("massdist", "non-collapse-below-critical", [&](CheckResult& res) {
    const double theta = 0.5;
    const double s = theta / (1.0 + theta) - 0.05;
    for (double delta : {0.1, 0.0562, 0.0316}) {
      const double rho = delta * delta;
      const auto mu = build_mass_distribution(rho, theta);
      const PointSet set = generate(SetSpec::reciprocal(1.0), rho);
      const auto dp = restricted_cover_min_cost(set, s, delta, theta);
      const auto verdict = mass_lower_bound_check(mu, dp.cover, s);
      if (!verdict.holds) {
        fail(res, "DP cost fell below the certified bound", json{{"delta", delta}, {"cost", dp.cost}, {"bound", verdict.implied_bound}});
      }
    }
  });
  suite.run("massdist", "hausdorff-certificate", [&](CheckResult& res) {
    for (double s : {0.1, 0.5, 1.0}) {
      for (double eps : {1e-1, 1e-3}) {
        const auto cert = hausdorff_cover_certificate(s, eps);
        CompensatedSum series;
        for (int k = 1; k <= 2000; ++k) series.add(std::pow(std::ldexp(cert.delta, -k), s));
        const double rel = std::fabs(series.value() - cert.cost) / cert.cost;
        bool inside = true;
        for (std::size_t k = 0; k < cert.cover.size(); ++k) {
          const auto& b = cert.cover[k];
          const double x = 1.0 / static_cast<double>(k + 1);
          inside = inside && b.position <= x && x <= b.position + b.diameter;
        }
        if (!(cert.cost < eps) || rel > 1e-12 || !inside) {
          fail(res, "Hausdorff certificate failed", json{{"s", s}, {"epsilon", eps}, {"cost", cert.cost}, {"relative_error", rel}});
        }
      }
    }
  });
}

void estimator_checks(Suite& suite) {
  const auto& opt = suite.options;
  EstimatorOptions eo;
  eo.workers = opt.workers;
  suite.run("estimators", "box-reciprocal", [&](CheckResult& res) {
    const auto est = estimate_box_dimension(SetSpec::reciprocal(1.0), ScaleGrid::geometric(1e-2, 1e-7, kDefaultRatio), eo);
    if (std::fabs(est.value - 0.5) > 0.02) fail(res, "box estimate off", json{{"estimate", est.value}});
  });
  suite.run("estimators", "order-chain", [&](CheckResult& res) {
    const std::vector<double> thetas{0.25, 0.5, 0.75};
    const ScaleGrid deltas = ScaleGrid::geometric(1e-2, 1e-5, kDefaultRatio);
    for (const SetSpec& spec : {SetSpec::reciprocal(1.0), SetSpec::unit_interval()}) {
      const double box = estimate_box_dimension(spec, ScaleGrid::geometric(1e-2, 1e-6, kDefaultRatio), eo).value;
      const auto spectrum = estimate_assouad_spectrum(spec, thetas, std::nullopt, eo);
      const auto inter = estimate_intermediate_dimension(spec, thetas, deltas, eo);
      const double assouad = estimate_assouad_dimension(spec, std::nullopt, eo).value;
      for (std::size_t i = 0; i < thetas.size(); ++i) {
        const double a = inter.estimates[i].value;
        const double b = spectrum.estimates[i].value;
        if (a > box + 0.05 || box > b + 0.05 || b > assouad + 0.05) {
          fail(res, "order chain broken", json{{"set", spec.describe()}, {"theta", thetas[i]}, {"intermediate", a},
                                               {"box", box}, {"spectrum", b}, {"assouad", assouad}});
        }
      }
    }
  });
  suite.run("estimators", "slope-scale-invariance", [&](CheckResult& res) {
    Rng rng(opt.seed + 9);
    std::vector<double> pts;
    for (int i = 0; i < 400; ++i) pts.push_back(rng.dyadic(0, 1 << 10) / 1024.0);
    const PointSet set = PointSet::from_unsorted(pts);
    const double lambda = 0.125;
    const ScaleGrid grid = ScaleGrid::geometric(0.25, 0.25 / 1024.0, 0.5);
    const auto a = estimate_box_dimension(SetSpec::explicit_points(set.points()), grid, eo);
    const auto b = estimate_box_dimension(SetSpec::explicit_points(set.scaled(lambda).points()), grid.scaled(lambda), eo);
    if (a.fit->slope != b.fit->slope) fail(res, "slope changed under scaling", json{{"slope", a.fit->slope}, {"scaled", b.fit->slope}});
  });
}

void oracle_checks(Suite& suite) {
  const SetSpec x = SetSpec::reciprocal(1.0);
  suite.run("oracles", "endpoint-consistency", [&](CheckResult& res) {
    const double box = closed_form(x, DimensionKind::box).value;
    if (intermediate_formula(x, 1.0) != box) fail(res, "intermediate at theta = 1 differs from box", json{});
    if (spectrum_formula(x, 0.0) != box) fail(res, "spectrum at theta = 0 differs from box", json{});
    const double left = (1.0 / 2.0) / (1.0 - 0.5);
    if (left != 1.0 || spectrum_formula(x, 0.5) != 1.0) fail(res, "spectrum branches disagree at 1/2", json{});
  });
  suite.run("oracles", "transition-flag", [&](CheckResult& res) {
    const auto curve = oracle_curve(x, DimensionKind::assouad_spectrum, arithmetic_range(0.1, 0.9, 0.1));
    for (std::size_t i = 0; i < curve.theta_grid.size(); ++i) {
      if (curve.transition[i] != (curve.theta_grid[i] == 0.5)) fail(res, "transition flagged at the wrong theta", json{{"theta", curve.theta_grid[i]}});
    }
  });
  suite.run("oracles", "intermediate-concave", [&](CheckResult& res) {
    const auto curve = oracle_curve(x, DimensionKind::intermediate, arithmetic_range(0.1, 0.9, 0.1));
    for (std::size_t i = 1; i + 1 < curve.values.size(); ++i) {
      const double d2 = curve.values[i + 1].value - 2.0 * curve.values[i].value + curve.values[i - 1].value;
      if (!(d2 < 0.0)) fail(res, "second difference not negative", json{{"theta", curve.theta_grid[i]}, {"d2", d2}});
    }
  });
  suite.run("oracles", "order-chain", [&](CheckResult& res) {
    for (const SetSpec& spec : {x, SetSpec::reciprocal(2.0), SetSpec::cantor(2, 1.0 / 3.0), SetSpec::unit_interval()}) {
      const double box = closed_form(spec, DimensionKind::box).value;
      const double haus = closed_form(spec, DimensionKind::hausdorff).value;
      const double assouad = closed_form(spec, DimensionKind::assouad).value;
      for (double t : arithmetic_range(0.05, 0.95, 0.05)) {
        const double a = closed_form(spec, DimensionKind::intermediate, t).value;
        const double b = closed_form(spec, DimensionKind::assouad_spectrum, t).value;
        if (!(haus <= a && a <= box && box <= b && b <= assouad)) {
          fail(res, "oracle order chain broken", json{{"set", spec.describe()}, {"theta", t}});
        }
      }
    }
  });
}

}  // namespace

const std::vector<std::string>& verify_groups() {
  static const std::vector<std::string> groups{"covering", "twoscale", "massdist", "estimators", "oracles"};
  return groups;
}

std::vector<CheckResult> run_verify_suite(const VerifyOptions& options) {
  if (!options.only.empty() &&
      std::find(verify_groups().begin(), verify_groups().end(), options.only) == verify_groups().end()) {
    raise(ErrorKind::parse, "unknown verify group '" + options.only + "'");
  }
  Suite suite{options, {}};
  covering_checks(suite);
  twoscale_checks(suite);
  massdist_checks(suite);
  estimator_checks(suite);
  oracle_checks(suite);
  return suite.results;
}

}  // namespace fracdim
