/// @file lab.hpp
/// @brief Lab-frame system in the Maxwell potentials, and the comoving map.
///
/// State (A, Pi = dA/dt, q, p, phi, M) with canonical momentum p = m_kin + <A, rho_q>
/// and canonical angular momentum M = I phidot - <A, J(x - q) rho_q>, where
/// rho_q = rho(. - q). The evolution implements the potential-form field,
/// Newton and torque equations; p and M are advanced by their time derivatives.
#pragma once

#include "mlsim/charge_density.hpp"
#include "mlsim/field.hpp"
#include "mlsim/particle.hpp"
#include "mlsim/reduced.hpp"
#include "mlsim/vec2.hpp"

namespace mlsim::dynamics {

struct LabState {
  VectorField A;
  VectorField Pi;
  Vec2 q;
  Vec2 p;
  double phi = 0.0;
  double M = 0.0;
  double t = 0.0;
};

struct LabVelocities {
  Vec2 qdot;
  double phidot = 0.0;
  Vec2 p_kin;
};

LabVelocities lab_velocities(const LabState& s, const ChargeDensity& rho, const ParticleKind& kind);

struct LabRhs {
  VectorField dA;
  VectorField dPi;
  Vec2 dq;
  Vec2 dp;
  double dphi = 0.0;
  double dM = 0.0;
};

LabRhs lab_rhs(const LabState& s, const ChargeDensity& rho, const ParticleKind& kind);

// Classical RK4.
LabState step_lab(const LabState& s, double dt, const ChargeDensity& rho, const ParticleKind& kind);

struct LabInvariants {
  double energy = 0.0;
  Vec2 P;
  double M = 0.0;
};

LabInvariants lab_invariants(const LabState& s, const ChargeDensity& rho, const ParticleKind& kind);

// Fields recentred at q; P = p - <Pi, grad_* A>.
ReducedState comoving_transform(const LabState& s);
// Inverse of comoving_transform.
LabState to_lab(const ReducedState& s);

struct EBFields {
  VectorField E;
  ScalarField B;
};

// B = div(J A), E = -Pi - grad Phi0(. - q).
EBFields reconstruct_EB(const LabState& s, const ChargeDensity& rho);

}  // namespace mlsim::dynamics
