#include "mlsim/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "mlsim/errors.hpp"
#include "mlsim/kernels.hpp"

namespace mlsim::spectral {

namespace {
constexpr cplx I{0.0, 1.0};
namespace K = kernels::omp;
}  // namespace

VectorField project_solenoidal(const VectorField& a) {
  VectorField out = a;
  K::project(kernels::modes_of(*a.grid), out[0].data(), out[1].data());
  out.solenoidal = true;
  return out;
}

double divergence_ratio(const VectorField& a) {
  const Grid& g = *a.grid;
  double dmax = 0.0, amax = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    dmax = std::max(dmax, std::abs(g.k1()[i] * a[0][i] + g.k2()[i] * a[1][i]));
    amax = std::max({amax, std::abs(a[0][i]), std::abs(a[1][i])});
  }
  return amax > 0.0 ? dmax / amax : 0.0;
}

ScalarField coulomb_potential(const ChargeDensity& rho) {
  if (rho.profile->rho_hat(0.0) != 0.0) throw DomainError("charge density is not neutral");
  const Grid& g = *rho.grid;
  ScalarField phi(rho.grid);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.active()[i]) phi.hat[i] = rho.rho_hat[i] / g.ksq()[i];
  return phi;
}

ScalarField coulomb_potential(const ScalarField& rho) {
  const Grid& g = *rho.grid;
  double peak = 0.0;
  for (const auto& z : rho.hat) peak = std::max(peak, std::abs(z));
  if (std::abs(rho.hat[0]) > 1e-12 * peak) throw DomainError("charge density is not neutral");
  ScalarField phi(rho.grid);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.active()[i]) phi.hat[i] = rho.hat[i] / g.ksq()[i];
  return phi;
}

Norms norms(const ScalarField& f) {
  const Grid& g = *f.grid;
  const double w = g.weight();
  return {std::sqrt(w * K::inner(g.size(), f.hat.data(), f.hat.data())),
          std::sqrt(w * K::weighted_norm2(g.size(), g.ksq().data(), f.hat.data()))};
}

Norms norms(const VectorField& f) {
  return {l2_norm(f), h1dot_norm(f)};
}

double inner(const ScalarField& a, const ScalarField& b) {
  const Grid& g = *a.grid;
  return g.weight() * K::inner(g.size(), a.hat.data(), b.hat.data());
}

double inner(const VectorField& a, const VectorField& b) {
  const Grid& g = *a.grid;
  return g.weight() * (K::inner(g.size(), a[0].data(), b[0].data()) +
                       K::inner(g.size(), a[1].data(), b[1].data()));
}

double l2_norm(const VectorField& a) { return std::sqrt(inner(a, a)); }

double h1dot_norm(const VectorField& a) {
  const Grid& g = *a.grid;
  return std::sqrt(g.weight() * (K::weighted_norm2(g.size(), g.ksq().data(), a[0].data()) +
                                 K::weighted_norm2(g.size(), g.ksq().data(), a[1].data())));
}

CArray axis_phase(const Grid& g, double s) {
  CArray e(g.N());
  for (int n = 0; n < g.N(); ++n) e[n] = std::polar(1.0, -g.kd_axis()[n] * s);
  return e;
}

ScalarField shift_density(const ChargeDensity& rho, Vec2 q) {
  const Grid& g = *rho.grid;
  ScalarField out(rho.grid);
  const CArray e1 = axis_phase(g, q.x), e2 = axis_phase(g, q.y);
  K::phase_multiply(g.N(), e1.data(), e2.data(), rho.rho_hat.data(), out.hat.data());
  return out;
}

VectorField translate(const VectorField& f, Vec2 s) {
  const Grid& g = *f.grid;
  VectorField out = f;
  const CArray e1 = axis_phase(g, s.x), e2 = axis_phase(g, s.y);
  for (int c = 0; c < 2; ++c) K::phase_multiply(g.N(), e1.data(), e2.data(), f[c].data(), out[c].data());
  return out;
}

ScalarField translate(const ScalarField& f, Vec2 s) {
  const Grid& g = *f.grid;
  ScalarField out = f;
  const CArray e1 = axis_phase(g, s.x), e2 = axis_phase(g, s.y);
  K::phase_multiply(g.N(), e1.data(), e2.data(), f.hat.data(), out.hat.data());
  return out;
}

VectorField gradient(const ScalarField& f) {
  const Grid& g = *f.grid;
  VectorField out(f.grid);
  for (std::size_t i = 0; i < g.size(); ++i) {
    out[0][i] = I * g.k1()[i] * f.hat[i];
    out[1][i] = I * g.k2()[i] * f.hat[i];
  }
  out.solenoidal = false;
  return out;
}

ScalarField divergence(const VectorField& a) {
  const Grid& g = *a.grid;
  ScalarField out(a.grid);
  for (std::size_t i = 0; i < g.size(); ++i) out.hat[i] = I * (g.k1()[i] * a[0][i] + g.k2()[i] * a[1][i]);
  return out;
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = *f.grid;
  ScalarField out = f;
  for (std::size_t i = 0; i < g.size(); ++i) out.hat[i] *= -g.ksq()[i];
  return out;
}

VectorField laplacian(const VectorField& a) {
  const Grid& g = *a.grid;
  VectorField out = a;
  for (int c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < g.size(); ++i) out[c][i] *= -g.ksq()[i];
  return out;
}

VectorField advect(const VectorField& a, Vec2 u) {
  const Grid& g = *a.grid;
  VectorField out = a;
  for (int c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < g.size(); ++i) out[c][i] *= I * (u.x * g.k1()[i] + u.y * g.k2()[i]);
  return out;
}

ScalarField curl(const VectorField& a) {
  const Grid& g = *a.grid;
  ScalarField out(a.grid);
  for (std::size_t i = 0; i < g.size(); ++i) out.hat[i] = I * (g.k1()[i] * a[1][i] - g.k2()[i] * a[0][i]);
  return out;
}

}  // namespace mlsim::spectral
