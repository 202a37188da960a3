#include "mlsim/lab.hpp"

#include <cmath>

#include "mlsim/kernels.hpp"
#include "mlsim/spectral.hpp"

namespace mlsim::dynamics {

namespace K = kernels::omp;

namespace {

struct Shifted {
  CArray rho, y[2], s[2];
};

Shifted shifted_density(const ChargeDensity& rho, Vec2 q) {
  const Grid& g = *rho.grid;
  const std::size_t n = g.size();
  const CArray e1 = spectral::axis_phase(g, q.x), e2 = spectral::axis_phase(g, q.y);
  Shifted out{CArray(n), {CArray(n), CArray(n)}, {CArray(n), CArray(n)}};
  K::phase_multiply(g.N(), e1.data(), e2.data(), rho.rho_hat.data(), out.rho.data());
  for (int c = 0; c < 2; ++c) {
    K::phase_multiply(g.N(), e1.data(), e2.data(), rho.y_hat[c].data(), out.y[c].data());
    K::phase_multiply(g.N(), e1.data(), e2.data(), rho.s_hat[c].data(), out.s[c].data());
  }
  return out;
}

kernels::FieldMoments field_moments(const LabState& s, const Shifted& sh) {
  const Grid& g = *s.A.grid;
  auto m = K::field_moments(kernels::modes_of(g), s.A[0].data(), s.A[1].data(), s.Pi[0].data(),
                            s.Pi[1].data(), sh.rho.data(), sh.s[0].data(), sh.s[1].data());
  const double w = g.weight();
  for (int j = 0; j < 2; ++j) {
    m.pi_grad_a[j] *= w;
    m.a_rho[j] *= w;
  }
  m.a_s *= w;
  return m;
}

LabVelocities velocities_from(const LabState& s, const kernels::FieldMoments& m,
                              const ParticleKind& kind) {
  LabVelocities v;
  v.p_kin = {s.p.x - m.a_rho[0], s.p.y - m.a_rho[1]};
  v.qdot = kind.velocity(v.p_kin);
  v.phidot = (s.M + m.a_s) / kind.I;
  return v;
}

}  // namespace

LabVelocities lab_velocities(const LabState& s, const ChargeDensity& rho, const ParticleKind& kind) {
  return velocities_from(s, field_moments(s, shifted_density(rho, s.q)), kind);
}

LabRhs lab_rhs(const LabState& s, const ChargeDensity& rho, const ParticleKind& kind) {
  const Grid& g = *rho.grid;
  const auto modes = kernels::modes_of(g);
  const Shifted sh = shifted_density(rho, s.q);
  const LabVelocities v = velocities_from(s, field_moments(s, sh), kind);

  LabRhs r;
  r.dA = VectorField(rho.grid);
  r.dPi = VectorField(rho.grid);
  K::field_rhs(modes, {0.0, 0.0}, v.qdot, v.phidot, s.A[0].data(), s.A[1].data(), s.Pi[0].data(),
               s.Pi[1].data(), sh.rho.data(), sh.s[0].data(), sh.s[1].data(), r.dA[0].data(),
               r.dA[1].data(), r.dPi[0].data(), r.dPi[1].data());

  auto lm = K::lab_moments(modes, s.A[0].data(), s.A[1].data(), sh.rho.data(), sh.y[0].data(),
                           sh.y[1].data(), sh.s[0].data(), sh.s[1].data());
  const double w = g.weight();
  const Vec2 Jq = J(v.qdot);
  // d/dt (m_kin + <A, rho_q>) = <[J qdot + phidot (x - q)] B, rho_q> + <(qdot.grad) A, rho_q>
  for (int j = 0; j < 2; ++j) {
    r.dp[j] = w * (Jq[j] * lm.b_rho + v.phidot * lm.b_y[j] + v.qdot.x * lm.da_rho[0][j] +
                   v.qdot.y * lm.da_rho[1][j]);
  }
  // d/dt (I phidot - <A, S_q>) = -<qdot.(x - q) B, rho_q> - <(qdot.grad) A, S_q>
  r.dM = -w * (v.qdot.x * lm.b_y[0] + v.qdot.y * lm.b_y[1] + v.qdot.x * lm.da_s[0] +
               v.qdot.y * lm.da_s[1]);
  r.dq = v.qdot;
  r.dphi = v.phidot;
  return r;
}

LabState step_lab(const LabState& s, double dt, const ChargeDensity& rho, const ParticleKind& kind) {
  auto shifted = [&](const LabRhs& k, double h) {
    LabState t = s;
    t.A.axpy(h, k.dA);
    t.Pi.axpy(h, k.dPi);
    t.q += h * k.dq;
    t.p += h * k.dp;
    t.phi += h * k.dphi;
    t.M += h * k.dM;
    return t;
  };
  const LabRhs k1 = lab_rhs(s, rho, kind);
  const LabRhs k2 = lab_rhs(shifted(k1, 0.5 * dt), rho, kind);
  const LabRhs k3 = lab_rhs(shifted(k2, 0.5 * dt), rho, kind);
  const LabRhs k4 = lab_rhs(shifted(k3, dt), rho, kind);
  LabState out = s;
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
  out.p += a * (k1.dp + k4.dp) + b * (k2.dp + k3.dp);
  out.phi += a * (k1.dphi + k4.dphi) + b * (k2.dphi + k3.dphi);
  out.M += a * (k1.dM + k4.dM) + b * (k2.dM + k3.dM);
  out.t = s.t + dt;
  out.A.solenoidal = out.Pi.solenoidal = true;
  return out;
}

LabInvariants lab_invariants(const LabState& s, const ChargeDensity& rho, const ParticleKind& kind) {
  const auto m = field_moments(s, shifted_density(rho, s.q));
  const LabVelocities v = velocities_from(s, m, kind);
  LabInvariants inv;
  inv.energy = 0.5 * (spectral::inner(s.Pi, s.Pi) + std::pow(spectral::h1dot_norm(s.A), 2)) +
               kind.kinetic_energy(v.p_kin) + 0.5 * kind.I * v.phidot * v.phidot;
  inv.P = {s.p.x - m.pi_grad_a[0], s.p.y - m.pi_grad_a[1]};
  inv.M = s.M;
  return inv;
}

namespace {
Vec2 pi_grad_a(const VectorField& A, const VectorField& Pi) {
  const Grid& g = *A.grid;
  const CArray zero(g.size());
  const auto m = K::field_moments(kernels::modes_of(g), A[0].data(), A[1].data(), Pi[0].data(),
                                  Pi[1].data(), zero.data(), zero.data(), zero.data());
  return {g.weight() * m.pi_grad_a[0], g.weight() * m.pi_grad_a[1]};
}
}  // namespace

ReducedState comoving_transform(const LabState& s) {
  ReducedState r;
  r.A = spectral::translate(s.A, -s.q);
  r.Pi = spectral::translate(s.Pi, -s.q);
  r.P = s.p - pi_grad_a(s.A, s.Pi);
  r.M = s.M;
  r.q = s.q;
  r.phi = s.phi;
  r.t = s.t;
  return r;
}

LabState to_lab(const ReducedState& s) {
  LabState l;
  l.A = spectral::translate(s.A, s.q);
  l.Pi = spectral::translate(s.Pi, s.q);
  l.p = s.P + pi_grad_a(l.A, l.Pi);
  l.M = s.M;
  l.q = s.q;
  l.phi = s.phi;
  l.t = s.t;
  return l;
}

EBFields reconstruct_EB(const LabState& s, const ChargeDensity& rho) {
  EBFields f;
  f.B = spectral::curl(s.A);
  const ScalarField phi = spectral::translate(spectral::coulomb_potential(rho), s.q);
  f.E = spectral::gradient(phi);
  f.E *= -1.0;
  f.E -= s.Pi;
  f.E.solenoidal = false;
  return f;
}

}  // namespace mlsim::dynamics
