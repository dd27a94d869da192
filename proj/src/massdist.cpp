#include "fracdim/massdist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fracdim/error.hpp"
#include "fracdim/numeric.hpp"

namespace fracdim {

double MassDistribution::total_mass() const {
  CompensatedSum acc;
  for (const auto& a : atoms) acc.add(a.mass);
  return acc.value();
}

MassDistribution build_mass_distribution(double r, double theta, std::uint64_t atom_budget) {
  if (!(r > 0.0 && r < 1.0)) raise(ErrorKind::domain, "mass distribution needs 0 < r < 1");
  if (!(theta > 0.0 && theta < 1.0)) raise(ErrorKind::domain, "mass distribution needs 0 < theta < 1");
  MassDistribution mu;
  mu.r = r;
  mu.theta = theta;
  mu.s = theta / (1.0 + theta);
  mu.M = snapped_ceil(std::pow(r, -mu.s));
  if (mu.M > atom_budget) {
    raise(ErrorKind::resource, "mass distribution needs " + std::to_string(mu.M) +
                                   " atoms, above the atom budget of " + std::to_string(atom_budget));
  }
  const double mass = std::pow(r, mu.s);
  mu.atoms.reserve(mu.M);
  for (std::uint64_t k = mu.M; k >= 1; --k) {
    mu.atoms.push_back(Atom{1.0 / static_cast<double>(k), mass});
  }
  return mu;
}

namespace {

BallMassWitness ball_mass_sup(const MassDistribution& mu, double theta, double s) {
  if (mu.atoms.empty()) raise(ErrorKind::domain, "mass distribution has no atoms");
  const double max_diameter = std::pow(mu.r, theta);
  const std::size_t n = mu.atoms.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + mu.atoms[i].mass;
  BallMassWitness best;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double span = mu.atoms[j].coordinate - mu.atoms[i].coordinate;
      if (span > max_diameter) break;
      const double d = std::max(span, mu.r);
      const double ratio = (prefix[j + 1] - prefix[i]) / std::pow(d, s);
      if (ratio > best.ratio) best = BallMassWitness{ratio, i, j, d};
    }
  }
  return best;
}

}  // namespace

BallMassWitness max_normalized_ball_mass_witness(const MassDistribution& mu, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) raise(ErrorKind::domain, "theta must lie in (0,1)");
  return ball_mass_sup(mu, theta, mu.s);
}

double max_normalized_ball_mass(const MassDistribution& mu, double theta) {
  return max_normalized_ball_mass_witness(mu, theta).ratio;
}

LowerBoundVerdict mass_lower_bound_check(const MassDistribution& mu,
                                         const std::vector<CoverInterval>& cover, double s) {
  if (!(s >= 0.0)) raise(ErrorKind::domain, "exponent s must be >= 0");
  const double lo = mu.r * (1.0 - 1e-12);
  const double hi = std::pow(mu.r, mu.theta) * (1.0 + 1e-12);
  char buf[200];
  for (std::size_t k = 0; k < cover.size(); ++k) {
    const double d = cover[k].diameter;
    if (!(d >= lo && d <= hi)) {
      std::snprintf(buf, sizeof buf, "cover interval %zu at %.12g has diameter %.12g outside [%.12g, %.12g]",
                    k, cover[k].position, d, mu.r, std::pow(mu.r, mu.theta));
      raise(ErrorKind::certificate_violation, buf);
    }
  }
  std::vector<CoverInterval> sorted(cover);
  std::sort(sorted.begin(), sorted.end(),
            [](const CoverInterval& a, const CoverInterval& b) { return a.position < b.position; });
  std::vector<double> reach(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const double end = sorted[k].position + sorted[k].diameter;
    reach[k] = k == 0 ? end : std::max(reach[k - 1], end);
  }
  for (std::size_t a = 0; a < mu.atoms.size(); ++a) {
    const double x = mu.atoms[a].coordinate;
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), x,
                                     [](double v, const CoverInterval& b) { return v < b.position; });
    const std::size_t idx = static_cast<std::size_t>(it - sorted.begin());
    if (idx == 0 || reach[idx - 1] < x) {
      std::snprintf(buf, sizeof buf, "atom %zu at %.12g is not covered", a, x);
      raise(ErrorKind::certificate_violation, buf);
    }
  }
  LowerBoundVerdict v;
  CompensatedSum acc;
  for (const auto& b : cover) acc.add(std::pow(b.diameter, s));
  v.cost = acc.value();
  v.constant = ball_mass_sup(mu, mu.theta, s).ratio;
  v.implied_bound = 1.0 / v.constant;
  v.holds = v.cost >= v.implied_bound;
  return v;
}

CoverCertificate hausdorff_cover_certificate(double s, double epsilon, std::size_t n_points) {
  if (!(s > 0.0) || !std::isfinite(s)) raise(ErrorKind::domain, "Hausdorff certificate needs s > 0");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) raise(ErrorKind::domain, "budget epsilon must be positive");
  if (n_points < 1) raise(ErrorKind::domain, "certificate needs at least one point");
  CoverCertificate cert;
  cert.s = s;
  cert.epsilon = epsilon;
  const double denom = std::expm1(s * std::log(2.0));  // 2^s - 1
  // Spend half the budget: delta^s / (2^s - 1) = epsilon / 2.
  cert.delta = std::pow(0.5 * epsilon * denom, 1.0 / s);
  cert.cost = std::pow(cert.delta, s) / denom;
  for (std::size_t k = 1; k <= n_points; ++k) {
    const double center = 1.0 / static_cast<double>(k);
    const double diameter = std::ldexp(cert.delta, -static_cast<int>(k));
    cert.centers.push_back(center);
    cert.cover.push_back(CoverInterval{center - 0.5 * diameter, diameter});
  }
  if (!(cert.cost < epsilon)) raise(ErrorKind::certificate_violation, "certificate cost is not below epsilon");
  return cert;
}

}  // namespace fracdim
