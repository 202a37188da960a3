/// @file lower_bound.hpp
/// @brief Lower bound of the reduced Hamiltonian around a soliton.
///
/// For a soliton S with momenta (P, M) and a solenoidal increment (a, pi):
///   dH = H(S + (a, pi)) - H(S)
///      = (|pi|^2 + |grad a|^2)/2 + <pi, (v.grad) a> + K(dp) + dm^2/(2I)
/// with dp, dm the increments of p and m_ang and K(dp) = dp^2/(2m), or the
/// relativistic convexity term. Hence dH >= (1 - |v|)/2 (|a|_H1^2 + |pi|^2).
#pragma once

#include "mlsim/charge_density.hpp"
#include "mlsim/perturbation.hpp"
#include "mlsim/soliton.hpp"

namespace mlsim::analysis {

struct LowerBoundResult {
  double deltaH = 0.0;
  double bound = 0.0;
  double field_quadratic = 0.0;  // (|pi|^2 + |grad a|^2)/2 + <pi, (v.grad) a>
  double remainder = 0.0;        // K(dp) + dm^2/(2I), computed from dp, dm directly
  double identity_error = 0.0;   // |deltaH - field_quadratic - remainder| / |deltaH|
  bool pass = false;
};

// tol_scale multiplies the 1e-10 slack in the pass criterion.
LowerBoundResult lower_bound_check(const soliton::SolitonRecord& s, const Perturbation& p,
                                   const ChargeDensity& rho, double tol_scale = 1.0);

}  // namespace mlsim::analysis
