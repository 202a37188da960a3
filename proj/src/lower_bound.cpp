#include "mlsim/lower_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlsim/kernels.hpp"
#include "mlsim/reduced.hpp"
#include "mlsim/spectral.hpp"

namespace mlsim::analysis {

LowerBoundResult lower_bound_check(const soliton::SolitonRecord& s, const Perturbation& p,
                                   const ChargeDensity& rho, double tol_scale) {
  const Grid& g = *rho.grid;
  const ParticleKind& kind = s.kind;
  const dynamics::ReducedState base = dynamics::make_reduced_state(s);
  LowerBoundResult r;
  r.deltaH = dynamics::hamiltonian_increment(base, p.dA, p.dPi, rho, kind);

  const double a2 = std::pow(spectral::h1dot_norm(p.dA), 2);
  const double pi2 = spectral::inner(p.dPi, p.dPi);
  const Vec2 v = s.params.v;
  r.bound = 0.5 * (1.0 - norm(v)) * (a2 + pi2);

  const auto modes = kernels::modes_of(g);
  const double w = g.weight();
  auto mom = [&](const VectorField& A, const VectorField& Pi) {
    return kernels::omp::field_moments(modes, A[0].data(), A[1].data(), Pi[0].data(), Pi[1].data(),
                                       rho.rho_hat.data(), rho.s_hat[0].data(),
                                       rho.s_hat[1].data());
  };
  const auto m_self = mom(p.dA, p.dPi);
  const auto m_a = mom(p.dA, s.Pi);
  const auto m_pi = mom(s.A, p.dPi);
  r.field_quadratic =
      0.5 * (a2 + pi2) + w * (v.x * m_self.pi_grad_a[0] + v.y * m_self.pi_grad_a[1]);

  const Vec2 dp = {w * (m_a.pi_grad_a[0] + m_pi.pi_grad_a[0] + m_self.pi_grad_a[0] - m_self.a_rho[0]),
                   w * (m_a.pi_grad_a[1] + m_pi.pi_grad_a[1] + m_self.pi_grad_a[1] - m_self.a_rho[1])};
  const double dm = w * m_self.a_s;
  const double kin = kind.is_relativistic()
                         ? relativistic_convexity_term(kind.m, kind.kinetic_momentum(v), dp)
                         : 0.5 * norm2(dp) / kind.m;
  r.remainder = kin + 0.5 * dm * dm / kind.I;

  // Relative to deltaH itself: the remainder alone can be ~1e-10 of deltaH
  // when the perturbation barely couples to rho.
  const double denom = std::max(std::abs(r.deltaH), std::numeric_limits<double>::min());
  r.identity_error = std::abs(r.deltaH - r.field_quadratic - r.remainder) / denom;

  const double H = dynamics::reduced_hamiltonian(base, rho, kind);
  r.pass = r.deltaH >= r.bound - 1e-10 * tol_scale * std::max(1.0, std::abs(H));
  return r;
}

}  // namespace mlsim::analysis
