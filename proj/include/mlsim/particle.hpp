/// @file particle.hpp
/// @brief Nonrelativistic and relativistic particle kinematics.
#pragma once

#include <array>
#include <string>

#include "mlsim/vec2.hpp"

namespace mlsim {

struct ParticleKind {
  enum class Tag { nonrelativistic, relativistic };

  Tag tag = Tag::nonrelativistic;
  double m = 1.0;
  double I = 1.0;

  static ParticleKind nonrelativistic(double m, double I) { return {Tag::nonrelativistic, m, I}; }
  static ParticleKind relativistic(double m, double I) { return {Tag::relativistic, m, I}; }

  bool is_relativistic() const { return tag == Tag::relativistic; }
  std::string name() const;

  // Velocity from kinetic momentum p: p/m or p/sqrt(m^2 + p^2).
  Vec2 velocity(Vec2 p) const;
  // p^2/2m or sqrt(m^2 + p^2).
  double kinetic_energy(Vec2 p) const;
  // E(p + dp) - E(p) without cancellation.
  double kinetic_energy_increment(Vec2 p, Vec2 dp) const;
  // Inverse of velocity(); requires |v| < 1 for the relativistic kind.
  Vec2 kinetic_momentum(Vec2 v) const;
  // d kinetic_momentum / dv, row j = component j.
  std::array<std::array<double, 2>, 2> kinetic_momentum_jacobian(Vec2 v) const;
};

// sqrt(m^2 + |p + dp|^2) - sqrt(m^2 + |p|^2) - v.dp with v = p/sqrt(m^2 + p^2),
// evaluated without cancellation. Nonnegative by convexity.
double relativistic_convexity_term(double m, Vec2 p, Vec2 dp);

}  // namespace mlsim
