// OpenMP kernels. Reductions go through per-row partials summed in row order.
#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "mlsim/kernels.hpp"

namespace mlsim::kernels {

void configure_threads(int n) {
  if (n <= 0) {
    if (const char* env = std::getenv("MLSIM_THREADS")) n = std::atoi(env);
  }
  if (n > 0) omp_set_num_threads(std::min(n, omp_get_num_procs() * 4));
}

int thread_count() { return omp_get_max_threads(); }

namespace omp {

namespace {
constexpr cplx I{0.0, 1.0};

// Rows of a flat array of length n for reduction purposes.
constexpr std::size_t kChunk = 1024;

template <int K, class F>
std::array<double, K> chunked_sum(std::size_t n, F&& body) {
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<std::array<double, K>> partial(nchunks);
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < nchunks; ++c) {
    std::array<double, K> acc{};
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) body(i, acc);
    partial[c] = acc;
  }
  std::array<double, K> total{};
  for (const auto& p : partial)
    for (int k = 0; k < K; ++k) total[k] += p[k];
  return total;
}
}  // namespace

double inner(std::size_t n, const cplx* a, const cplx* b) {
  return chunked_sum<1>(n, [&](std::size_t i, auto& acc) {
    acc[0] += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  })[0];
}

double weighted_norm2(std::size_t n, const double* w, const cplx* a) {
  return chunked_sum<1>(n, [&](std::size_t i, auto& acc) { acc[0] += w[i] * std::norm(a[i]); })[0];
}

void axpy(std::size_t n, double alpha, const cplx* x, cplx* y) {
  const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < nn; ++i) y[i] += alpha * x[i];
}

void project(const Modes& m, cplx* a1, cplx* a2) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(m.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
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
  const auto t = chunked_sum<5>(m.size(), [&](std::size_t i, auto& acc) {
    const double c = (pi1[i] * std::conj(a1[i]) + pi2[i] * std::conj(a2[i])).imag();
    acc[0] += m.k1[i] * c;
    acc[1] += m.k2[i] * c;
    acc[2] += (a1[i] * std::conj(rho[i])).real();
    acc[3] += (a2[i] * std::conj(rho[i])).real();
    acc[4] += (a1[i] * std::conj(s1[i]) + a2[i] * std::conj(s2[i])).real();
  });
  return FieldMoments{{t[0], t[1]}, {t[2], t[3]}, t[4]};
}

LabMoments lab_moments(const Modes& m, const cplx* a1, const cplx* a2, const cplx* rho,
                       const cplx* y1, const cplx* y2, const cplx* s1, const cplx* s2) {
  const auto t = chunked_sum<9>(m.size(), [&](std::size_t i, auto& acc) {
    const cplx b = I * (m.k1[i] * a2[i] - m.k2[i] * a1[i]);
    acc[0] += (b * std::conj(rho[i])).real();
    acc[1] += (b * std::conj(y1[i])).real();
    acc[2] += (b * std::conj(y2[i])).real();
    const cplx ar1 = I * a1[i] * std::conj(rho[i]);
    const cplx ar2 = I * a2[i] * std::conj(rho[i]);
    const cplx as = I * (a1[i] * std::conj(s1[i]) + a2[i] * std::conj(s2[i]));
    acc[3] += m.k1[i] * ar1.real();
    acc[4] += m.k1[i] * ar2.real();
    acc[5] += m.k2[i] * ar1.real();
    acc[6] += m.k2[i] * ar2.real();
    acc[7] += m.k1[i] * as.real();
    acc[8] += m.k2[i] * as.real();
  });
  LabMoments r{};
  r.b_rho = t[0];
  r.b_y[0] = t[1];
  r.b_y[1] = t[2];
  r.da_rho[0][0] = t[3];
  r.da_rho[0][1] = t[4];
  r.da_rho[1][0] = t[5];
  r.da_rho[1][1] = t[6];
  r.da_s[0] = t[7];
  r.da_s[1] = t[8];
  return r;
}

void field_rhs(const Modes& m, Vec2 advect, Vec2 qdot, double phidot, const cplx* a1,
               const cplx* a2, const cplx* pi1, const cplx* pi2, const cplx* rho,
               const cplx* s1, const cplx* s2, cplx* da1, cplx* da2, cplx* dpi1, cplx* dpi2) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(m.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
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
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(m.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
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
#pragma omp parallel for schedule(static)
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const std::size_t id = static_cast<std::size_t>(i) * N + j;
      out[id] = e1[i] * e2[j] * in[id];
    }
}

}  // namespace omp
}  // namespace mlsim::kernels
