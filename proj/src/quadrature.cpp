#include "mlsim/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace mlsim::analysis {

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  return GK::integrate(f, a, b, opt.max_depth, opt.rel_tol);
}

RadialMoments radial_moments(const RadialProfile& p, const QuadratureOptions& opt) {
  const double kc = p.kappa_cut();
  RadialMoments m;
  // Split at the peak region so the adaptive rule sees the bulk early.
  const double mid = std::min(kc, 0.25 * kc);
  auto fr = [&](double k) { return k > 0.0 ? std::pow(p.rho_hat(k), 2) / k : 0.0; };
  auto fg = [&](double k) { return k > 0.0 ? std::pow(p.rho_hat_prime(k), 2) / k : 0.0; };
  m.rr = integrate(fr, 0.0, mid, opt) + integrate(fr, mid, kc, opt);
  m.gg = integrate(fg, 0.0, mid, opt) + integrate(fg, mid, kc, opt);
  return m;
}

}  // namespace mlsim::analysis
