/// @file stability.hpp
/// @brief Distance between reduced states and the orbital-stability experiment.
#pragma once

#include <cstdint>
#include <vector>

#include "mlsim/charge_density.hpp"
#include "mlsim/reduced.hpp"
#include "mlsim/soliton.hpp"

namespace mlsim::analysis {

// |A1 - A2|_H1 + |Pi1 - Pi2|_L2 + |qdot1 - qdot2| + |phidot1 - phidot2|, with
// the velocities taken from each state's own P, M.
double distance(const dynamics::ReducedState& a, const dynamics::ReducedState& b,
                const ChargeDensity& rho, const ParticleKind& kind);

struct StabilityOptions {
  double T = 10.0;
  double dt = 0.0;  // 0 selects 0.1 dx
  dynamics::Scheme scheme = dynamics::Scheme::rk4;
  int stride = 1;   // samples kept in the time series
};

struct StabilityReport {
  soliton::SolitonParams params;
  double delta = 0.0;
  std::uint64_t seed = 0;
  double initial_distance = 0.0;
  std::vector<double> t;
  std::vector<double> d_orig;     // d(F(t), S_{v,omega})
  std::vector<double> d_matched;  // d(F(t), S_{v*,omega*})
  double sup_orig = 0.0;          // over every step, not just the samples
  double sup_matched = 0.0;
  soliton::SolitonParams matched;
  double matched_constant = 0.0;  // sup_matched / delta
};

StabilityReport stability_experiment(const soliton::SolitonParams& params, double delta,
                                     std::uint64_t seed, const ChargeDensity& rho,
                                     const ParticleKind& kind, const StabilityOptions& opt);

}  // namespace mlsim::analysis
