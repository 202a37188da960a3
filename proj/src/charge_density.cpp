#include "mlsim/charge_density.hpp"

#include <cmath>
#include <numbers>

#include "mlsim/errors.hpp"
#include "mlsim/kernels.hpp"

namespace mlsim {

namespace {

constexpr double kPi = std::numbers::pi;

class GaussianProfile final : public RadialProfile {
 public:
  GaussianProfile(double sigma, double a) : s_(sigma), a_(a) {}
  std::string shape() const override { return "laplacian-gaussian"; }
  double g_hat(double k) const override {
    return a_ * 2.0 * kPi * s_ * s_ * std::exp(-0.5 * s_ * s_ * k * k);
  }
  double g_hat_prime(double k) const override { return -s_ * s_ * k * g_hat(k); }
  double rho(double r) const override {
    const double s2 = s_ * s_;
    return a_ * std::exp(-0.5 * r * r / s2) * (r * r / (s2 * s2) - 2.0 / s2);
  }
  double kappa_cut() const override {
    // |rho^| ~ k^2 exp(-s^2 k^2 / 2) peaks at k = sqrt(2)/s; go far enough past
    // it that the ratio to the peak is below 1e-16.
    double k = std::sqrt(2.0) / s_;
    const double peak = std::abs(rho_hat(k));
    if (peak == 0.0) return k;
    while (std::abs(rho_hat(k)) > 1e-16 * peak) k += 0.25 / s_;
    return k;
  }

 private:
  double s_, a_;
};

// g = a (1 - r^2/R^2)_+^n with R = 4 sigma, n = 8.
class BumpProfile final : public RadialProfile {
 public:
  BumpProfile(double sigma, double a) : R_(4.0 * sigma), a_(a) {
    double fact = 1.0;
    for (int i = 2; i <= n_; ++i) fact *= i;
    c_ = a_ * kPi * fact * R_ * R_ * std::pow(2.0, n_ + 1);
  }
  std::string shape() const override { return "polynomial-bump"; }
  double g_hat(double k) const override { return c_ * scaled_j(n_ + 1, k * R_); }
  double g_hat_prime(double k) const override { return -c_ * R_ * scaled_j(n_ + 2, k * R_) * k * R_; }
  double rho(double r) const override {
    const double u = 1.0 - r * r / (R_ * R_);
    if (u <= 0.0) return 0.0;
    const double n = n_;
    return 4.0 * a_ * n * (n - 1.0) * r * r * std::pow(u, n - 2.0) / std::pow(R_, 4) -
           4.0 * a_ * n * std::pow(u, n - 1.0) / (R_ * R_);
  }
  double kappa_cut() const override {
    // Algebraic decay |rho^| <= C k^{2 - n - 3/2}; use the envelope bound.
    double peak = 0.0;
    for (double k = 0.0; k < 20.0 / R_; k += 0.01 / R_) peak = std::max(peak, std::abs(rho_hat(k)));
    if (peak == 0.0) return 1.0;
    const double env = std::abs(c_) * std::sqrt(2.0 / kPi) * std::pow(R_, -(n_ + 1.5));
    const double p = n_ + 1.5 - 2.0;
    return std::pow(env / (1e-16 * peak), 1.0 / p);
  }

 private:
  // s^{-nu} J_nu(s), by its power series for small s.
  static double scaled_j(int nu, double s) {
    if (s < 4.0) {
      double term = 1.0;
      for (int i = 1; i <= nu; ++i) term /= 2.0 * i;
      double sum = term;
      const double q = 0.25 * s * s;
      for (int m = 1; m < 60; ++m) {
        term *= -q / (m * (m + nu));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      }
      return sum;
    }
    return std::cyl_bessel_j(static_cast<double>(nu), s) / std::pow(s, nu);
  }

  static constexpr int n_ = 8;
  double R_, a_, c_;
};

}  // namespace

std::shared_ptr<const RadialProfile> make_profile(const std::string& shape, double sigma,
                                                  double amplitude) {
  if (shape == "laplacian-gaussian") return std::make_shared<GaussianProfile>(sigma, amplitude);
  if (shape == "polynomial-bump") return std::make_shared<BumpProfile>(sigma, amplitude);
  throw ConfigError("rho.shape: unknown shape '" + shape + "'");
}

ChargeDensity make_charge_density(const std::string& shape, double sigma, double amplitude,
                                  GridPtr grid) {
  const Grid& g = *grid;
  if (!std::isfinite(sigma) || sigma < 4.0 * g.dx())
    throw ConfigError("rho.sigma: must be >= 4*dx = " + std::to_string(4.0 * g.dx()));
  if (sigma > g.L() / 8.0)
    throw ConfigError("rho.sigma: must be <= L/8 = " + std::to_string(g.L() / 8.0));
  if (!std::isfinite(amplitude)) throw ConfigError("rho.amplitude: must be finite");

  ChargeDensity d;
  d.grid = grid;
  d.profile = make_profile(shape, sigma, amplitude);
  d.shape = shape;
  d.sigma = sigma;
  d.amplitude = amplitude;

  const int N = g.N();
  const std::size_t sz = g.size();
  const auto& x = g.x_axis();
  d.rho.resize(sz);
  RArray y1rho(sz), y2rho(sz);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const std::size_t id = static_cast<std::size_t>(i) * N + j;
      const double r = std::hypot(x[i], x[j]);
      d.rho[id] = d.profile->rho(r);
      y1rho[id] = x[i] * d.rho[id];
      y2rho[id] = x[j] * d.rho[id];
    }

  d.rho_hat.assign(sz, cplx{});
  for (std::size_t id = 0; id < sz; ++id)
    if (g.active()[id]) d.rho_hat[id] = d.profile->rho_hat(g.kabs()[id]);

  d.y_hat[0] = g.forward(y1rho);
  d.y_hat[1] = g.forward(y2rho);
  for (int c = 0; c < 2; ++c)
    for (std::size_t id = 0; id < sz; ++id)
      if (!g.active()[id]) d.y_hat[c][id] = 0.0;
  d.s_hat[0] = d.y_hat[1];
  d.s_hat[1] = d.y_hat[0];
  for (auto& z : d.s_hat[1]) z = -z;
  kernels::omp::project(kernels::modes_of(g), d.s_hat[0].data(), d.s_hat[1].data());
  return d;
}

}  // namespace mlsim
