#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracdim/covering.hpp"

namespace fracdim {

struct Atom {
  double coordinate = 0.0;
  double mass = 0.0;
};

struct MassDistribution {
  std::vector<Atom> atoms;  // increasing coordinates
  double r = 0.0;
  double theta = 0.0;
  double s = 0.0;
  std::uint64_t M = 0;

  double total_mass() const;
};

inline constexpr std::uint64_t kDefaultAtomBudget = 50'000'000;

MassDistribution build_mass_distribution(double r, double theta,
                                         std::uint64_t atom_budget = kDefaultAtomBudget);

struct BallMassWitness {
  double ratio = 0.0;
  std::size_t first_atom = 0;
  std::size_t last_atom = 0;
  double diameter = 0.0;
};

// sup of mu(B)/|B|^s over intervals with |B| in [r, r^theta].
BallMassWitness max_normalized_ball_mass_witness(const MassDistribution& mu, double theta);
double max_normalized_ball_mass(const MassDistribution& mu, double theta);

struct LowerBoundVerdict {
  double cost = 0.0;      // sum |B_k|^s
  double constant = 0.0;  // measured C
  double implied_bound = 0.0;
  bool holds = false;
};

LowerBoundVerdict mass_lower_bound_check(const MassDistribution& mu,
                                         const std::vector<CoverInterval>& cover, double s);

struct CoverCertificate {
  double s = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::vector<CoverInterval> cover;  // B(1/k, 2^{-k-1} delta) as [left, diameter]
  std::vector<double> centers;
  double cost = 0.0;
};

inline constexpr std::size_t kDefaultCertificatePoints = 64;

CoverCertificate hausdorff_cover_certificate(double s, double epsilon,
                                             std::size_t n_points = kDefaultCertificatePoints);

}  // namespace fracdim
