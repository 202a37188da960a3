#include "mlsim/particle.hpp"

#include <cmath>

#include "mlsim/errors.hpp"

namespace mlsim {

std::string ParticleKind::name() const {
  return is_relativistic() ? "relativistic" : "nonrelativistic";
}

Vec2 ParticleKind::velocity(Vec2 p) const {
  if (!is_relativistic()) return p / m;
  return p / std::sqrt(m * m + norm2(p));
}

double ParticleKind::kinetic_energy(Vec2 p) const {
  if (!is_relativistic()) return 0.5 * norm2(p) / m;
  return std::sqrt(m * m + norm2(p));
}

double ParticleKind::kinetic_energy_increment(Vec2 p, Vec2 dp) const {
  const double num = 2.0 * dot(p, dp) + norm2(dp);
  if (!is_relativistic()) return 0.5 * num / m;
  const double a = std::sqrt(m * m + norm2(p + dp));
  const double b = std::sqrt(m * m + norm2(p));
  return num / (a + b);
}

Vec2 ParticleKind::kinetic_momentum(Vec2 v) const {
  if (!is_relativistic()) return m * v;
  const double v2 = norm2(v);
  if (!(v2 < 1.0)) throw DomainError("relativistic velocity must satisfy |v| < 1");
  return m / std::sqrt(1.0 - v2) * v;
}

std::array<std::array<double, 2>, 2> ParticleKind::kinetic_momentum_jacobian(Vec2 v) const {
  if (!is_relativistic()) return {{{m, 0.0}, {0.0, m}}};
  const double v2 = norm2(v);
  if (!(v2 < 1.0)) throw DomainError("relativistic velocity must satisfy |v| < 1");
  const double g = 1.0 / std::sqrt(1.0 - v2);
  const double g3 = g * g * g;
  return {{{m * g + m * g3 * v.x * v.x, m * g3 * v.x * v.y},
           {m * g3 * v.y * v.x, m * g + m * g3 * v.y * v.y}}};
}

double relativistic_convexity_term(double m, Vec2 p, Vec2 dp) {
  const double a = std::sqrt(m * m + norm2(p + dp));
  const double b = std::sqrt(m * m + norm2(p));
  const double pd = dot(p, dp);
  const double num = 2.0 * pd + norm2(dp);
  // (a - b) - pd/b = [num b - pd (a + b)] / ((a + b) b), and num b - pd(a + b)
  // = |dp|^2 b + pd (b - a) = |dp|^2 b - pd num / (a + b).
  return (norm2(dp) * b - pd * num / (a + b)) / ((a + b) * b);
}

}  // namespace mlsim
