/// @file jacobian.hpp
/// @brief Soliton momentum map (v, omega) -> (P, M) and its Jacobian.
///
/// With D = k^2 - (v.k)^2, r = |rho^|^2 and g = |grad rho^|^2 the field parts are
///   P_j = int (v.k) k_j (|Pv|^2 r + omega^2 g)/D^2 + (Pv)_j r/D,
///   M   = omega int g/D,
/// where Pv is the solenoidal projection of the constant vector v at wavevector k.
/// The kinetic parts m_kin(v) and I omega are added on top.
#pragma once

#include <Eigen/Dense>

#include "mlsim/charge_density.hpp"
#include "mlsim/particle.hpp"
#include "mlsim/quadrature.hpp"
#include "mlsim/vec2.hpp"

namespace mlsim::analysis {

// Values and derivatives; jac rows (P1, P2, M), columns (v1, v2, omega).
struct MapPoint {
  Vec2 P;
  double M = 0.0;
  Eigen::Matrix3d jac = Eigen::Matrix3d::Zero();
};

// Field contribution of a single wavevector k != 0 (no measure, no kinetic part).
MapPoint field_integrand(Vec2 k, double r, double g, Vec2 v, double omega);

enum class Backend {
  polar,    // adaptive quadrature of the continuum integrals
  lattice,  // sum over the active modes of the periodic grid
};

MapPoint momentum_map(Vec2 v, double omega, const ChargeDensity& rho, const ParticleKind& kind,
                      Backend backend, const QuadratureOptions& opt = {});

// v = 0 field-mass corrections: mu_f = int k2^2 r / k^4 and iota_f = int g / k^2.
struct FieldMasses {
  double mu = 0.0;
  double iota = 0.0;
};
FieldMasses field_masses(const ChargeDensity& rho, Backend backend);

struct JacobianTable {
  double v = 0.0;  // speed along x1
  double omega = 0.0;
  Eigen::Matrix3d d = Eigen::Matrix3d::Zero();
  double det = 0.0;       // full 3x3 determinant
  double det_axis = 0.0;  // dP2/dv2 * (dP1/dv1 dM/dw - dM/dv1 dP1/dw)
  bool positive = false;
  double structural_zero_max = 0.0;  // max |dP2/dw|, |dP1/dv2|, |dP2/dv1|, |dM/dv2|
};

JacobianTable jacobian_entries(double v, double omega, const ChargeDensity& rho,
                               const ParticleKind& kind, Backend backend = Backend::polar);

// Central differences of the momentum map. The polar backend differentiates the
// continuum map, the lattice backend the grid values of soliton_momenta.
Eigen::Matrix3d momentum_map_fd(Vec2 v, double omega, const ChargeDensity& rho,
                                const ParticleKind& kind, Backend backend, double h);

// max over entries of |a - fd| / max(|a|, 1e-8 max|a|).
double jacobian_vs_finite_difference(Vec2 v, double omega, const ChargeDensity& rho,
                                     const ParticleKind& kind, double h,
                                     Backend backend = Backend::polar);

// Terms of the determinant identity at v = (|v|, 0), continuum integrals:
// I0 = int g/D, I2 = int k1^2 g/D^2, I4 = int k1^4 g/D^3.
struct AxisIntegrals {
  double I0 = 0.0, I2 = 0.0, I4 = 0.0;
};
AxisIntegrals axis_integrals(double v, const ChargeDensity& rho);

}  // namespace mlsim::analysis
