// Shared desk-scale fixtures for the unit tests.
#pragma once

#include <doctest.h>

#include <cmath>
#include <random>

#include "mlsim/charge_density.hpp"
#include "mlsim/field.hpp"
#include "mlsim/grid.hpp"
#include "mlsim/particle.hpp"
#include "mlsim/spectral.hpp"

namespace desk {

inline mlsim::GridPtr grid() {
  static const auto g = mlsim::make_grid(32.0, 128);
  return g;
}

inline const mlsim::ChargeDensity& rho() {
  static const auto r = mlsim::make_charge_density("laplacian-gaussian", 1.0, 1.0, grid());
  return r;
}

inline const mlsim::ParticleKind nr = mlsim::ParticleKind::nonrelativistic(1.0, 1.0);
inline const mlsim::ParticleKind rel = mlsim::ParticleKind::relativistic(1.0, 1.0);

// Smooth random real field, band limited well inside the grid.
inline mlsim::RArray smooth_random(const mlsim::GridPtr& g, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  mlsim::RArray f(g->size());
  for (auto& x : f) x = nd(gen);
  auto h = g->forward(f);
  for (std::size_t i = 0; i < h.size(); ++i) h[i] *= std::exp(-0.5 * std::pow(g->kabs()[i], 2));
  return g->inverse(h);
}

inline mlsim::VectorField random_vector(const mlsim::GridPtr& g, unsigned seed) {
  return mlsim::VectorField::from_real(g, smooth_random(g, seed), smooth_random(g, seed + 1));
}

inline double max_abs(const mlsim::RArray& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace desk
