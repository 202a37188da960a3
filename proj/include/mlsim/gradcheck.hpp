/// @file gradcheck.hpp
/// @brief Checks that reduced_rhs is the Hamiltonian vector field of H, and the
/// convexity of the relativistic kinetic energy.
#pragma once

#include <cstdint>
#include <vector>

#include "mlsim/reduced.hpp"

namespace mlsim::analysis {

struct GradientCheck {
  double analytic = 0.0;  // <dA/dt, dPi> - <dPi/dt, dA>
  double fd = 0.0;        // central difference of H at the selected step
  double h = 0.0;
  double rel_error = 0.0;
};

// The step is chosen where consecutive central differences over h = 10^-1 ... 10^-7
// agree best, without looking at the analytic value.
GradientCheck gradient_check(const dynamics::ReducedState& base, const VectorField& dA,
                             const VectorField& dPi, const ChargeDensity& rho,
                             const ParticleKind& kind);

struct ConvexityCheck {
  int samples = 0;
  int violations = 0;
  double min_value = 0.0;  // smallest term / |dp|^2
};

// Samples (p, dp) pairs with log-uniform scales in [1e-2, 1e2] and evaluates the
// relativistic convexity term; a violation is a value below -1e-14 |dp|^2 / m.
ConvexityCheck convexity_check(double m, int samples, std::uint64_t seed);

}  // namespace mlsim::analysis
