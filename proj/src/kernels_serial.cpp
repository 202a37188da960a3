// Reference kernels: straightforward flat loops, no threading.
#include <cmath>

#include "mlsim/kernels.hpp"

namespace mlsim::kernels {

Modes modes_of(const Grid& g) {
  return Modes{g.N(), g.k1().data(), g.k2().data(), g.ksq().data(), g.active().data()};
}

namespace serial {

namespace {
constexpr cplx I{0.0, 1.0};
}

double inner(std::size_t n, const cplx* a, const cplx* b) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  return s;
}

double weighted_norm2(std::size_t n, const double* w, const cplx* a) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * std::norm(a[i]);
  return s;
}

void axpy(std::size_t n, double alpha, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void project(const Modes& m, cplx* a1, cplx* a2) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m.active[i]) {
      a1[i] = a2[i] = 0.0;
      continue;
    }
    const cplx d = (m.k1[i] * a1[i] + m.k2[i] * a2[i]) / m.ksq[i];
    a1[i] -= m.k1[i] * d;
    a2[i] -= m.k2[i] * d;
  }
}

FieldMoments field_moments(const Modes& m, const cplx* a1, const cplx* a2, const cplx* pi1,
                           const cplx* pi2, const cplx* rho, const cplx* s1, const cplx* s2) {
  FieldMoments r{};
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double c = (pi1[i] * std::conj(a1[i]) + pi2[i] * std::conj(a2[i])).imag();
    r.pi_grad_a[0] += m.k1[i] * c;
    r.pi_grad_a[1] += m.k2[i] * c;
    r.a_rho[0] += (a1[i] * std::conj(rho[i])).real();
    r.a_rho[1] += (a2[i] * std::conj(rho[i])).real();
    r.a_s += (a1[i] * std::conj(s1[i]) + a2[i] * std::conj(s2[i])).real();
  }
  return r;
}

LabMoments lab_moments(const Modes& m, const cplx* a1, const cplx* a2, const cplx* rho,
                       const cplx* y1, const cplx* y2, const cplx* s1, const cplx* s2) {
  LabMoments r{};
  for (std::size_t i = 0; i < m.size(); ++i) {
    const cplx b = I * (m.k1[i] * a2[i] - m.k2[i] * a1[i]);
    r.b_rho += (b * std::conj(rho[i])).real();
    r.b_y[0] += (b * std::conj(y1[i])).real();
    r.b_y[1] += (b * std::conj(y2[i])).real();
    const double kl[2] = {m.k1[i], m.k2[i]};
    const cplx* a[2] = {a1, a2};
    for (int l = 0; l < 2; ++l) {
      for (int j = 0; j < 2; ++j) r.da_rho[l][j] += (I * kl[l] * a[j][i] * std::conj(rho[i])).real();
      r.da_s[l] += (I * kl[l] * (a1[i] * std::conj(s1[i]) + a2[i] * std::conj(s2[i]))).real();
    }
  }
  return r;
}

void field_rhs(const Modes& m, Vec2 advect, Vec2 qdot, double phidot, const cplx* a1,
               const cplx* a2, const cplx* pi1, const cplx* pi2, const cplx* rho,
               const cplx* s1, const cplx* s2, cplx* da1, cplx* da2, cplx* dpi1, cplx* dpi2) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m.active[i]) {
      da1[i] = da2[i] = dpi1[i] = dpi2[i] = 0.0;
      continue;
    }
    const cplx iu = I * (advect.x * m.k1[i] + advect.y * m.k2[i]);
    cplx j1 = qdot.x * rho[i] - phidot * s1[i];
    cplx j2 = qdot.y * rho[i] - phidot * s2[i];
    const cplx d = (m.k1[i] * j1 + m.k2[i] * j2) / m.ksq[i];
    j1 -= m.k1[i] * d;
    j2 -= m.k2[i] * d;
    const cplx A1 = a1[i], A2 = a2[i], P1 = pi1[i], P2 = pi2[i];
    da1[i] = P1 + iu * A1;
    da2[i] = P2 + iu * A2;
    dpi1[i] = -m.ksq[i] * A1 + iu * P1 + j1;
    dpi2[i] = -m.ksq[i] * A2 + iu * P2 + j2;
  }
}

void wave_propagate(const Modes& m, double tau, cplx* a, cplx* pi) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m.active[i]) {
      a[i] = pi[i] = 0.0;
      continue;
    }
    const double w = std::sqrt(m.ksq[i]);
    const double c = std::cos(w * tau), s = std::sin(w * tau);
    const cplx A = a[i], P = pi[i];
    a[i] = c * A + (s / w) * P;
    pi[i] = -w * s * A + c * P;
  }
}

void phase_multiply(int N, const cplx* e1, const cplx* e2, const cplx* in, cplx* out) {
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const std::size_t id = static_cast<std::size_t>(i) * N + j;
      out[id] = e1[i] * e2[j] * in[id];
    }
}

}  // namespace serial
}  // namespace mlsim::kernels
