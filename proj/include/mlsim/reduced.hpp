/// @file reduced.hpp
/// @brief The comoving (reduced) Hamiltonian system with parameters P and M.
///
/// With p = P + <Pi, grad_* A> - <A, rho> and m_ang = M + <A, J y rho>:
///   H    = (|Pi|^2 + |grad A|^2)/2 + E_kin(p) + m_ang^2/(2I)
///   qdot = velocity(p),  phidot = m_ang / I
///   dA   = Pi + (qdot.grad) A
///   dPi  = Laplacian A + (qdot.grad) Pi + P[qdot rho - phidot J y rho]
#pragma once

#include "mlsim/charge_density.hpp"
#include "mlsim/field.hpp"
#include "mlsim/particle.hpp"
#include "mlsim/soliton.hpp"
#include "mlsim/vec2.hpp"

namespace mlsim::dynamics {

struct ReducedState {
  VectorField A;
  VectorField Pi;
  Vec2 P;
  double M = 0.0;
  Vec2 q;
  double phi = 0.0;
  double t = 0.0;
};

ReducedState make_reduced_state(const soliton::SolitonRecord& s);

struct Velocities {
  Vec2 qdot;
  double phidot = 0.0;
  Vec2 p_kin;          // P + <Pi, grad_* A> - <A, rho>
  double m_ang = 0.0;  // M + <A, J y rho>
};

Velocities particle_velocities(const ReducedState& s, const ChargeDensity& rho,
                               const ParticleKind& kind);

double reduced_hamiltonian(const ReducedState& s, const ChargeDensity& rho,
                           const ParticleKind& kind);

// H(A + dA, Pi + dPi) - H(A, Pi) at fixed P, M, expanded so that small
// increments do not suffer cancellation.
double hamiltonian_increment(const ReducedState& base, const VectorField& dA,
                             const VectorField& dPi, const ChargeDensity& rho,
                             const ParticleKind& kind);

struct ReducedRhs {
  VectorField dA;
  VectorField dPi;
  Vec2 dq;
  double dphi = 0.0;
};

ReducedRhs reduced_rhs(const ReducedState& s, const ChargeDensity& rho, const ParticleKind& kind);

enum class Scheme { rk4, split };

Scheme parse_scheme(const std::string& name);
std::string scheme_name(Scheme s);

constexpr double kCfl = 0.5;
// Throws ConfigError when dt > kCfl * dx or dt <= 0.
void check_cfl(double dt, const Grid& g);

// Classical RK4, or Strang splitting: exact wave rotation for a full step
// between two half steps of the particle coupling.
ReducedState step_reduced(const ReducedState& s, double dt, const ChargeDensity& rho,
                          const ParticleKind& kind, Scheme scheme);

// (A, Pi, P, M) -> (-A, Pi, -P, -M); the flow of the image runs backwards in time.
ReducedState time_reverse(const ReducedState& s);

double h1dot_inner(const VectorField& a, const VectorField& b);

}  // namespace mlsim::dynamics
