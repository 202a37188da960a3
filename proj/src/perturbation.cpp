#include "mlsim/perturbation.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "mlsim/errors.hpp"
#include "mlsim/spectral.hpp"

namespace mlsim::analysis {

namespace {

VectorField smooth_noise(const GridPtr& grid, std::mt19937_64& gen, double sigma_p) {
  const Grid& g = *grid;
  std::normal_distribution<double> nd(0.0, 1.0);
  RArray a1(g.size()), a2(g.size());
  for (auto& x : a1) x = nd(gen);
  for (auto& x : a2) x = nd(gen);
  VectorField f = VectorField::from_real(grid, a1, a2);
  for (int c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < g.size(); ++i)
      f[c][i] *= std::exp(-g.kabs()[i] * g.kabs()[i] * sigma_p * sigma_p);
  return spectral::project_solenoidal(f);
}

std::mt19937_64 seeded(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    0x6d6c7369u};
  return std::mt19937_64(seq);
}

}  // namespace

Perturbation make_field_perturbation(GridPtr grid, double amplitude, std::uint64_t seed,
                                     double sigma_p) {
  auto gen = seeded(seed);
  Perturbation p;
  p.seed = seed;
  p.amplitude = amplitude;
  p.dA = smooth_noise(grid, gen, sigma_p);
  p.dPi = smooth_noise(grid, gen, sigma_p);
  std::uniform_real_distribution<double> ud(0.0, 0.5 * std::numbers::pi);
  const double th = ud(gen);
  p.dA *= amplitude * std::cos(th) / spectral::h1dot_norm(p.dA);
  p.dPi *= amplitude * std::sin(th) / spectral::l2_norm(p.dPi);
  return p;
}

Perturbation make_kicked_perturbation(GridPtr grid, double delta, std::uint64_t seed,
                                      double sigma_p) {
  auto gen = seeded(seed);
  Perturbation p;
  p.seed = seed;
  p.amplitude = delta;
  p.dA = smooth_noise(grid, gen, sigma_p);
  p.dPi = smooth_noise(grid, gen, sigma_p);
  std::normal_distribution<double> nd(0.0, 1.0);
  const double ca = std::abs(nd(gen)), cp = std::abs(nd(gen));
  const Vec2 kq = {nd(gen), nd(gen)};
  const double kw = nd(gen);
  const double total = ca + cp + norm(kq) + std::abs(kw);
  const double s = delta / total;
  p.dA *= s * ca / spectral::h1dot_norm(p.dA);
  p.dPi *= s * cp / spectral::l2_norm(p.dPi);
  p.dqdot = s * kq;
  p.dphidot = s * kw;
  return p;
}

dynamics::ReducedState perturbed_state(const soliton::SolitonRecord& s, const Perturbation& p,
                                       const ChargeDensity& rho) {
  dynamics::ReducedState st = dynamics::make_reduced_state(s);
  st.A += p.dA;
  st.Pi += p.dPi;
  const Vec2 target_v = s.params.v + p.dqdot;
  if (!(norm(target_v) < 1.0)) throw DomainError("perturbed velocity leaves |v| < 1");
  // Choose P, M so that the particle velocities equal the targets.
  st.P = {0.0, 0.0};
  st.M = 0.0;
  const auto v0 = dynamics::particle_velocities(st, rho, s.kind);
  st.P = s.kind.kinetic_momentum(target_v) - v0.p_kin;
  st.M = s.kind.I * (s.params.omega + p.dphidot) - v0.m_ang;
  return st;
}

}  // namespace mlsim::analysis
