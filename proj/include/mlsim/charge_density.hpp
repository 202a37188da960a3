/// @file charge_density.hpp
/// @brief Radial neutral charge profiles rho = Laplacian(g) with closed-form transforms.
#pragma once

#include <memory>
#include <string>

#include "mlsim/field.hpp"

namespace mlsim {

// Radial profile with rho^(kappa) = -kappa^2 g^(kappa), so rho^(0) = 0 and the
// gradient of rho^ vanishes at the origin.
class RadialProfile {
 public:
  virtual ~RadialProfile() = default;
  virtual std::string shape() const = 0;
  virtual double g_hat(double kappa) const = 0;
  virtual double g_hat_prime(double kappa) const = 0;
  virtual double rho(double r) const = 0;
  // Radius beyond which |rho^| stays below 1e-16 of its maximum.
  virtual double kappa_cut() const = 0;

  double rho_hat(double kappa) const { return -kappa * kappa * g_hat(kappa); }
  double rho_hat_prime(double kappa) const {
    return -2.0 * kappa * g_hat(kappa) - kappa * kappa * g_hat_prime(kappa);
  }
};

std::shared_ptr<const RadialProfile> make_profile(const std::string& shape, double sigma,
                                                  double amplitude);

struct ChargeDensity {
  GridPtr grid;
  std::shared_ptr<const RadialProfile> profile;
  std::string shape;
  double sigma = 0.0;
  double amplitude = 0.0;

  RArray rho;       // real-space samples
  CArray rho_hat;   // closed form on active modes, zero elsewhere
  CArray y_hat[2];  // transform of y_j rho(y), from real-space products
  CArray s_hat[2];  // transform of J y rho(y), projected

  const Grid& g() const { return *grid; }
};

// Shapes: "laplacian-gaussian" (default) and "polynomial-bump".
// Throws ConfigError when sigma < 4 dx or sigma > L/8.
ChargeDensity make_charge_density(const std::string& shape, double sigma, double amplitude,
                                  GridPtr grid);

}  // namespace mlsim
