/// @file soliton.hpp
/// @brief Closed-form solitons, their momenta, and inversion of the momentum map.
#pragma once

#include <vector>

#include "mlsim/charge_density.hpp"
#include "mlsim/field.hpp"
#include "mlsim/particle.hpp"
#include "mlsim/vec2.hpp"

namespace mlsim::soliton {

struct SolitonParams {
  Vec2 v;
  double omega = 0.0;
};

struct SolitonRecord {
  SolitonParams params;
  VectorField A;
  VectorField Pi;
  Vec2 P;
  double M = 0.0;
  ParticleKind kind;
};

// A^(k) = (P_k v rho^ - omega J-rotated gradient term) / (k^2 - (v.k)^2) with the
// closed-form gradient of rho^, and Pi = -(v.grad) A. Throws DomainError for |v| >= 1.
SolitonRecord build_soliton(const SolitonParams& params, const ChargeDensity& rho,
                            const ParticleKind& kind);

struct Momenta {
  Vec2 P;
  double M = 0.0;
};

// P = m_kin(v) - <Pi, grad_* A> + <A, rho>,  M = I omega - <A, J y rho>.
Momenta soliton_momenta(const VectorField& A, const VectorField& Pi, const SolitonParams& params,
                        const ChargeDensity& rho, const ParticleKind& kind);

struct NewtonOptions {
  int max_iterations = 50;
  double tol = 1e-9;            // on |F| / (1 + |P| + |M|)
  double speed_limit = 1.0 - 1e-6;
};

struct NewtonResult {
  SolitonParams params;
  int iterations = 0;
  std::vector<double> residuals;
};

// Newton iteration on the grid momentum map with the lattice Jacobian. Throws
// ConvergenceError carrying the residual trace when it does not converge.
NewtonResult solve_soliton_params(Vec2 P, double M, const ChargeDensity& rho,
                                  const ParticleKind& kind, const NewtonOptions& opt = {});

}  // namespace mlsim::soliton
