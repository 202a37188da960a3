/// @file quadrature.hpp
/// @brief Adaptive polar quadrature and lattice sums for Fourier integrals.
///
/// Fourier integrals carry the measure dk/(2pi)^2. On the periodic grid the same
/// integral is the lattice sum L^{-2} sum_k over active modes.
#pragma once

#include <functional>

#include "mlsim/charge_density.hpp"

namespace mlsim::analysis {

struct QuadratureOptions {
  double rel_tol = 1e-13;
  unsigned max_depth = 18;
};

// Integrals of |rho^|^2/kappa and |d rho^/d kappa|^2/kappa over (0, kappa_cut).
// Integrands of degree -2 in k reduce to these times an angular integral.
struct RadialMoments {
  double rr = 0.0;
  double gg = 0.0;
};
RadialMoments radial_moments(const RadialProfile& p, const QuadratureOptions& opt = {});

// Adaptive Gauss-Kronrod over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

}  // namespace mlsim::analysis
