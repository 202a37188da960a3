/// @file conservation.hpp
/// @brief Trajectory sampling and conserved-quantity drift.
#pragma once

#include <vector>

#include "mlsim/lab.hpp"
#include "mlsim/reduced.hpp"

namespace mlsim::analysis {

// One row of the trajectory CSV.
struct TrajectorySample {
  double t = 0.0;
  Vec2 q, qdot;
  double phi = 0.0, phidot = 0.0;
  double H_reduced = 0.0;
  double E_lab = 0.0;
  Vec2 P;
  double M = 0.0;
  double divA_max = 0.0, divPi_max = 0.0;
};

TrajectorySample sample(const dynamics::ReducedState& s, const ChargeDensity& rho,
                        const ParticleKind& kind);
TrajectorySample sample(const dynamics::LabState& s, const ChargeDensity& rho,
                        const ParticleKind& kind);

// max_t |Q(t) - Q(0)| / max(|Q(0)|, 1e-6), with the Euclidean norm for P.
struct DriftReport {
  double H = 0.0;
  double E = 0.0;
  double P = 0.0;
  double M = 0.0;
  double div_max = 0.0;  // largest relative divergence seen
};

DriftReport conservation_monitor(const std::vector<TrajectorySample>& traj);

}  // namespace mlsim::analysis
