/// @file spectral.hpp
/// @brief Spectral operators on periodic fields.
#pragma once

#include "mlsim/charge_density.hpp"
#include "mlsim/field.hpp"
#include "mlsim/vec2.hpp"

namespace mlsim::spectral {

VectorField project_solenoidal(const VectorField& a);

// max_k |k . a^(k)| relative to max_k |a^(k)| (0 for the zero field).
double divergence_ratio(const VectorField& a);

ScalarField coulomb_potential(const ChargeDensity& rho);
// Rejects densities whose zero mode exceeds 1e-12 of the peak.
ScalarField coulomb_potential(const ScalarField& rho);

struct Norms {
  double l2 = 0.0;
  double h1dot = 0.0;
};
Norms norms(const ScalarField& f);
Norms norms(const VectorField& f);

double inner(const ScalarField& a, const ScalarField& b);
double inner(const VectorField& a, const VectorField& b);
double l2_norm(const VectorField& a);
double h1dot_norm(const VectorField& a);

ScalarField shift_density(const ChargeDensity& rho, Vec2 q);

// Per-axis phase table e^{-i k_n s} with the Nyquist entry set to 1.
CArray axis_phase(const Grid& g, double s);
// Returns f(. - s), an exact band-limited translation.
VectorField translate(const VectorField& f, Vec2 s);
ScalarField translate(const ScalarField& f, Vec2 s);

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& a);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& a);
// (u . grad) a
VectorField advect(const VectorField& a, Vec2 u);
// B = div(J a) = d1 a2 - d2 a1
ScalarField curl(const VectorField& a);

}  // namespace mlsim::spectral
