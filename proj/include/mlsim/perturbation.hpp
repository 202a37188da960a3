/// @file perturbation.hpp
/// @brief Seeded smooth solenoidal perturbations of soliton states.
#pragma once

#include <cstdint>

#include "mlsim/field.hpp"
#include "mlsim/reduced.hpp"
#include "mlsim/soliton.hpp"

namespace mlsim::analysis {

struct Perturbation {
  VectorField dA;
  VectorField dPi;
  double amplitude = 0.0;
  std::uint64_t seed = 0;
  // Velocity kicks, used by the stability experiment only.
  Vec2 dqdot;
  double dphidot = 0.0;
};

constexpr double kDefaultSigmaP = 0.5;

// White noise -> envelope exp(-|k|^2 sigma_p^2) -> solenoidal projection, with
// sqrt(|dA|_H1^2 + |dPi|_L2^2) = amplitude. No velocity kicks.
Perturbation make_field_perturbation(GridPtr grid, double amplitude, std::uint64_t seed,
                                     double sigma_p = kDefaultSigmaP);

// Field part plus velocity kicks, scaled so |dA|_H1 + |dPi|_L2 + |dqdot| + |dphidot| = delta.
Perturbation make_kicked_perturbation(GridPtr grid, double delta, std::uint64_t seed,
                                      double sigma_p = kDefaultSigmaP);

// Soliton fields plus the perturbation, with P and M chosen so that the particle
// velocities of the new state are (v + dqdot, omega + dphidot).
dynamics::ReducedState perturbed_state(const soliton::SolitonRecord& s, const Perturbation& p,
                                       const ChargeDensity& rho);

}  // namespace mlsim::analysis
