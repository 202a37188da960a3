#include "mlsim/reduced.hpp"

#include <cmath>

#include "mlsim/errors.hpp"
#include "mlsim/kernels.hpp"
#include "mlsim/spectral.hpp"

namespace mlsim::dynamics {

namespace K = kernels::omp;

namespace {

kernels::FieldMoments moments(const VectorField& A, const VectorField& Pi, const CArray& rho,
                              const CArray& s1, const CArray& s2) {
  const Grid& g = *A.grid;
  auto m = K::field_moments(kernels::modes_of(g), A[0].data(), A[1].data(), Pi[0].data(),
                            Pi[1].data(), rho.data(), s1.data(), s2.data());
  const double w = g.weight();
  for (int j = 0; j < 2; ++j) {
    m.pi_grad_a[j] *= w;
    m.a_rho[j] *= w;
  }
  m.a_s *= w;
  return m;
}

Velocities velocities_from(const kernels::FieldMoments& m, Vec2 P, double M,
                           const ParticleKind& kind) {
  Velocities v;
  v.p_kin = {P.x + m.pi_grad_a[0] - m.a_rho[0], P.y + m.pi_grad_a[1] - m.a_rho[1]};
  v.m_ang = M + m.a_s;
  v.qdot = kind.velocity(v.p_kin);
  v.phidot = v.m_ang / kind.I;
  return v;
}

}  // namespace

ReducedState make_reduced_state(const soliton::SolitonRecord& s) {
  ReducedState r;
  r.A = s.A;
  r.Pi = s.Pi;
  r.P = s.P;
  r.M = s.M;
  return r;
}

Velocities particle_velocities(const ReducedState& s, const ChargeDensity& rho,
                               const ParticleKind& kind) {
  return velocities_from(moments(s.A, s.Pi, rho.rho_hat, rho.s_hat[0], rho.s_hat[1]), s.P, s.M,
                         kind);
}

double h1dot_inner(const VectorField& a, const VectorField& b) {
  const Grid& g = *a.grid;
  double s = 0.0;
  for (int c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < g.size(); ++i)
      s += g.ksq()[i] * (a[c][i].real() * b[c][i].real() + a[c][i].imag() * b[c][i].imag());
  return g.weight() * s;
}

double reduced_hamiltonian(const ReducedState& s, const ChargeDensity& rho,
                           const ParticleKind& kind) {
  const Velocities v = particle_velocities(s, rho, kind);
  const double pi2 = spectral::inner(s.Pi, s.Pi);
  const double ga2 = std::pow(spectral::h1dot_norm(s.A), 2);
  return 0.5 * (pi2 + ga2) + kind.kinetic_energy(v.p_kin) + 0.5 * v.m_ang * v.m_ang / kind.I;
}

double hamiltonian_increment(const ReducedState& base, const VectorField& dA,
                             const VectorField& dPi, const ChargeDensity& rho,
                             const ParticleKind& kind) {
  const Velocities v = particle_velocities(base, rho, kind);
  const auto m1 = moments(dA, base.Pi, rho.rho_hat, rho.s_hat[0], rho.s_hat[1]);
  const auto m2 = moments(base.A, dPi, rho.rho_hat, rho.s_hat[0], rho.s_hat[1]);
  const auto m3 = moments(dA, dPi, rho.rho_hat, rho.s_hat[0], rho.s_hat[1]);
  const Vec2 dp = {m1.pi_grad_a[0] + m2.pi_grad_a[0] + m3.pi_grad_a[0] - m1.a_rho[0],
                   m1.pi_grad_a[1] + m2.pi_grad_a[1] + m3.pi_grad_a[1] - m1.a_rho[1]};
  const double dm = m1.a_s;
  const double field = spectral::inner(base.Pi, dPi) + h1dot_inner(base.A, dA) +
                       0.5 * (spectral::inner(dPi, dPi) + h1dot_inner(dA, dA));
  return field + kind.kinetic_energy_increment(v.p_kin, dp) +
         (v.m_ang * dm + 0.5 * dm * dm) / kind.I;
}

ReducedRhs reduced_rhs(const ReducedState& s, const ChargeDensity& rho, const ParticleKind& kind) {
  const Grid& g = *rho.grid;
  const Velocities v = particle_velocities(s, rho, kind);
  ReducedRhs r;
  r.dA = VectorField(rho.grid);
  r.dPi = VectorField(rho.grid);
  K::field_rhs(kernels::modes_of(g), v.qdot, v.qdot, v.phidot, s.A[0].data(), s.A[1].data(),
               s.Pi[0].data(), s.Pi[1].data(), rho.rho_hat.data(), rho.s_hat[0].data(),
               rho.s_hat[1].data(), r.dA[0].data(), r.dA[1].data(), r.dPi[0].data(),
               r.dPi[1].data());
  r.dq = v.qdot;
  r.dphi = v.phidot;
  return r;
}

Scheme parse_scheme(const std::string& name) {
  if (name == "rk4") return Scheme::rk4;
  if (name == "split") return Scheme::split;
  throw ConfigError("integrator.scheme: expected 'rk4' or 'split', got '" + name + "'");
}

std::string scheme_name(Scheme s) { return s == Scheme::rk4 ? "rk4" : "split"; }

void check_cfl(double dt, const Grid& g) {
  if (!(dt > 0.0)) throw ConfigError("integrator.dt: must be positive");
  if (dt > kCfl * g.dx() * (1.0 + 1e-12))
    throw ConfigError("integrator.dt: exceeds CFL bound 0.5*dx = " + std::to_string(kCfl * g.dx()));
}

namespace {

ReducedState rk4(const ReducedState& s, double dt, const ChargeDensity& rho,
                 const ParticleKind& kind) {
  auto shifted = [&](const ReducedRhs& k, double h) {
    ReducedState t = s;
    t.A.axpy(h, k.dA);
    t.Pi.axpy(h, k.dPi);
    return t;
  };
  const ReducedRhs k1 = reduced_rhs(s, rho, kind);
  const ReducedRhs k2 = reduced_rhs(shifted(k1, 0.5 * dt), rho, kind);
  const ReducedRhs k3 = reduced_rhs(shifted(k2, 0.5 * dt), rho, kind);
  const ReducedRhs k4 = reduced_rhs(shifted(k3, dt), rho, kind);
  ReducedState out = s;
  const double a = dt / 6.0, b = dt / 3.0;
  out.A.axpy(a, k1.dA);
  out.A.axpy(b, k2.dA);
  out.A.axpy(b, k3.dA);
  out.A.axpy(a, k4.dA);
  out.Pi.axpy(a, k1.dPi);
  out.Pi.axpy(b, k2.dPi);
  out.Pi.axpy(b, k3.dPi);
  out.Pi.axpy(a, k4.dPi);
  out.q += a * (k1.dq + k4.dq) + b * (k2.dq + k3.dq);
  out.phi += a * (k1.dphi + k4.dphi) + b * (k2.dphi + k3.dphi);
  out.t = s.t + dt;
  out.A.solenoidal = out.Pi.solenoidal = true;
  return out;
}

// Coupling part over time tau: dA = (u.grad)A, dPi = (u.grad)Pi + P[u rho - phidot S].
// Written as A = A0(. + X), Pi = Pitilde(. + X) with X' = u, which turns the
// advection into an integrating factor; RK4 on (X, Pitilde, phi).
void coupling_substep(ReducedState& s, double tau, const ChargeDensity& rho,
                      const ParticleKind& kind) {
  const Grid& g = *rho.grid;
  const auto modes = kernels::modes_of(g);
  const std::size_t n = g.size();
  const int N = g.N();

  struct Deriv {
    Vec2 dX;
    double dphi;
    CArray dpi[2];
  };
  CArray rx(n), sx1(n), sx2(n), zero(n);
  auto deriv = [&](Vec2 X, const VectorField& pit) {
    const CArray e1 = spectral::axis_phase(g, X.x), e2 = spectral::axis_phase(g, X.y);
    K::phase_multiply(N, e1.data(), e2.data(), rho.rho_hat.data(), rx.data());
    K::phase_multiply(N, e1.data(), e2.data(), rho.s_hat[0].data(), sx1.data());
    K::phase_multiply(N, e1.data(), e2.data(), rho.s_hat[1].data(), sx2.data());
    const Velocities v = velocities_from(moments(s.A, pit, rx, sx1, sx2), s.P, s.M, kind);
    Deriv d{v.qdot, v.phidot, {CArray(n), CArray(n)}};
    CArray da1(n), da2(n);
    K::field_rhs(modes, {0.0, 0.0}, v.qdot, v.phidot, zero.data(), zero.data(), zero.data(),
                 zero.data(), rx.data(), sx1.data(), sx2.data(), da1.data(), da2.data(),
                 d.dpi[0].data(), d.dpi[1].data());
    return d;
  };
  auto stage = [&](const VectorField& base, const Deriv& d, double h) {
    VectorField out = base;
    for (int c = 0; c < 2; ++c) K::axpy(n, h, d.dpi[c].data(), out[c].data());
    return out;
  };

  const VectorField& pi0 = s.Pi;
  const Deriv k1 = deriv({0.0, 0.0}, pi0);
  const Deriv k2 = deriv(0.5 * tau * k1.dX, stage(pi0, k1, 0.5 * tau));
  const Deriv k3 = deriv(0.5 * tau * k2.dX, stage(pi0, k2, 0.5 * tau));
  const Deriv k4 = deriv(tau * k3.dX, stage(pi0, k3, tau));
  const double a = tau / 6.0, b = tau / 3.0;
  const Vec2 X = a * (k1.dX + k4.dX) + b * (k2.dX + k3.dX);
  VectorField pit = pi0;
  for (int c = 0; c < 2; ++c) {
    K::axpy(n, a, k1.dpi[c].data(), pit[c].data());
    K::axpy(n, b, k2.dpi[c].data(), pit[c].data());
    K::axpy(n, b, k3.dpi[c].data(), pit[c].data());
    K::axpy(n, a, k4.dpi[c].data(), pit[c].data());
  }
  s.phi += a * (k1.dphi + k4.dphi) + b * (k2.dphi + k3.dphi);
  s.q += X;
  s.A = spectral::translate(s.A, -X);
  s.Pi = spectral::translate(pit, -X);
  s.A.solenoidal = s.Pi.solenoidal = true;
}

ReducedState split(const ReducedState& s0, double dt, const ChargeDensity& rho,
                   const ParticleKind& kind) {
  ReducedState s = s0;
  const auto modes = kernels::modes_of(*rho.grid);
  coupling_substep(s, 0.5 * dt, rho, kind);
  for (int c = 0; c < 2; ++c) K::wave_propagate(modes, dt, s.A[c].data(), s.Pi[c].data());
  coupling_substep(s, 0.5 * dt, rho, kind);
  s.t = s0.t + dt;
  return s;
}

}  // namespace

ReducedState step_reduced(const ReducedState& s, double dt, const ChargeDensity& rho,
                          const ParticleKind& kind, Scheme scheme) {
  return scheme == Scheme::rk4 ? rk4(s, dt, rho, kind) : split(s, dt, rho, kind);
}

ReducedState time_reverse(const ReducedState& s) {
  ReducedState r = s;
  r.A *= -1.0;
  r.P = -s.P;
  r.M = -s.M;
  return r;
}

}  // namespace mlsim::dynamics
