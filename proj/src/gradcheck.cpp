#include "mlsim/gradcheck.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "mlsim/spectral.hpp"

namespace mlsim::analysis {

GradientCheck gradient_check(const dynamics::ReducedState& base, const VectorField& dA,
                             const VectorField& dPi, const ChargeDensity& rho,
                             const ParticleKind& kind) {
  const auto r = dynamics::reduced_rhs(base, rho, kind);
  GradientCheck out;
  out.analytic = spectral::inner(r.dA, dPi) - spectral::inner(r.dPi, dA);

  std::vector<double> hs, fds;
  for (int e = 1; e <= 7; ++e) {
    const double h = std::pow(10.0, -e);
    const double up = dynamics::hamiltonian_increment(base, h * dA, h * dPi, rho, kind);
    const double dn = dynamics::hamiltonian_increment(base, -h * dA, -h * dPi, rho, kind);
    hs.push_back(h);
    fds.push_back((up - dn) / (2.0 * h));
  }
  double best = std::numeric_limits<double>::infinity();
  std::size_t pick = 1;
  for (std::size_t i = 1; i < fds.size(); ++i) {
    const double d = std::abs(fds[i] - fds[i - 1]);
    if (d < best) {
      best = d;
      pick = i;
    }
  }
  out.h = hs[pick];
  out.fd = fds[pick];
  const double denom = std::max(std::abs(out.analytic), std::numeric_limits<double>::min());
  out.rel_error = std::abs(out.fd - out.analytic) / denom;
  return out;
}

ConvexityCheck convexity_check(double m, int samples, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> ue(-2.0, 2.0);
  ConvexityCheck c;
  c.samples = samples;
  c.min_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double sp = std::pow(10.0, ue(gen)), sd = std::pow(10.0, ue(gen));
    const Vec2 p = {sp * nd(gen), sp * nd(gen)};
    const Vec2 dp = {sd * nd(gen), sd * nd(gen)};
    const double val = relativistic_convexity_term(m, p, dp);
    const double d2 = norm2(dp);
    if (val < -1e-14 * d2 / m) ++c.violations;
    if (d2 > 0.0) c.min_value = std::min(c.min_value, val / d2);
  }
  return c;
}

}  // namespace mlsim::analysis
