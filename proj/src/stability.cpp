#include "mlsim/stability.hpp"

#include <algorithm>
#include <cmath>

#include "mlsim/errors.hpp"
#include "mlsim/perturbation.hpp"
#include "mlsim/spectral.hpp"

namespace mlsim::analysis {

double distance(const dynamics::ReducedState& a, const dynamics::ReducedState& b,
                const ChargeDensity& rho, const ParticleKind& kind) {
  if (a.A.grid->N() != b.A.grid->N() || a.A.grid->L() != b.A.grid->L())
    throw DomainError("distance: states live on different grids");
  const auto va = dynamics::particle_velocities(a, rho, kind);
  const auto vb = dynamics::particle_velocities(b, rho, kind);
  return spectral::h1dot_norm(a.A - b.A) + spectral::l2_norm(a.Pi - b.Pi) + norm(va.qdot - vb.qdot) +
         std::abs(va.phidot - vb.phidot);
}

StabilityReport stability_experiment(const soliton::SolitonParams& params, double delta,
                                     std::uint64_t seed, const ChargeDensity& rho,
                                     const ParticleKind& kind, const StabilityOptions& opt) {
  const Grid& g = *rho.grid;
  if (!(delta >= 0.0)) throw ConfigError("stability: delta must be >= 0");
  if (opt.T > 0.5 * g.L() * (1.0 + 1e-12))
    throw ConfigError("integrator.T: must be <= L/2 = " + std::to_string(0.5 * g.L()));
  const double dt = opt.dt > 0.0 ? opt.dt : 0.1 * g.dx();
  dynamics::check_cfl(dt, g);

  StabilityReport rep;
  rep.params = params;
  rep.delta = delta;
  rep.seed = seed;

  const auto sol = soliton::build_soliton(params, rho, kind);
  const auto S = dynamics::make_reduced_state(sol);
  dynamics::ReducedState F = S;
  if (delta > 0.0) F = perturbed_state(sol, make_kicked_perturbation(rho.grid, delta, seed), rho);
  rep.initial_distance = distance(F, S, rho, kind);

  const auto nr = soliton::solve_soliton_params(F.P, F.M, rho, kind);
  rep.matched = nr.params;
  const auto Sm = dynamics::make_reduced_state(soliton::build_soliton(nr.params, rho, kind));

  const int nsteps = static_cast<int>(std::llround(opt.T / dt));
  const int stride = std::max(1, opt.stride);
  for (int n = 0; n <= nsteps; ++n) {
    const double d0 = distance(F, S, rho, kind);
    const double d1 = distance(F, Sm, rho, kind);
    if (!std::isfinite(d0) || !std::isfinite(d1))
      throw std::runtime_error("stability: non-finite distance at step " + std::to_string(n));
    rep.sup_orig = std::max(rep.sup_orig, d0);
    rep.sup_matched = std::max(rep.sup_matched, d1);
    if (n % stride == 0 || n == nsteps) {
      rep.t.push_back(F.t);
      rep.d_orig.push_back(d0);
      rep.d_matched.push_back(d1);
    }
    if (n < nsteps) F = dynamics::step_reduced(F, dt, rho, kind, opt.scheme);
  }
  rep.matched_constant = delta > 0.0 ? rep.sup_matched / delta : 0.0;
  return rep;
}

}  // namespace mlsim::analysis
