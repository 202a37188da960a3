#include "mlsim/conservation.hpp"

#include <algorithm>
#include <cmath>

#include "mlsim/spectral.hpp"

namespace mlsim::analysis {

TrajectorySample sample(const dynamics::ReducedState& s, const ChargeDensity& rho,
                        const ParticleKind& kind) {
  const auto v = dynamics::particle_velocities(s, rho, kind);
  const auto lab = dynamics::to_lab(s);
  const auto inv = dynamics::lab_invariants(lab, rho, kind);
  TrajectorySample r;
  r.t = s.t;
  r.q = s.q;
  r.qdot = v.qdot;
  r.phi = s.phi;
  r.phidot = v.phidot;
  r.H_reduced = dynamics::reduced_hamiltonian(s, rho, kind);
  r.E_lab = inv.energy;
  r.P = s.P;
  r.M = s.M;
  r.divA_max = spectral::divergence_ratio(s.A);
  r.divPi_max = spectral::divergence_ratio(s.Pi);
  return r;
}

TrajectorySample sample(const dynamics::LabState& s, const ChargeDensity& rho,
                        const ParticleKind& kind) {
  const auto v = dynamics::lab_velocities(s, rho, kind);
  const auto inv = dynamics::lab_invariants(s, rho, kind);
  TrajectorySample r;
  r.t = s.t;
  r.q = s.q;
  r.qdot = v.qdot;
  r.phi = s.phi;
  r.phidot = v.phidot;
  r.H_reduced = dynamics::reduced_hamiltonian(dynamics::comoving_transform(s), rho, kind);
  r.E_lab = inv.energy;
  r.P = inv.P;
  r.M = inv.M;
  r.divA_max = spectral::divergence_ratio(s.A);
  r.divPi_max = spectral::divergence_ratio(s.Pi);
  return r;
}

DriftReport conservation_monitor(const std::vector<TrajectorySample>& traj) {
  DriftReport d;
  if (traj.empty()) return d;
  const auto& f = traj.front();
  auto rel = [](double dq, double q0) { return dq / std::max(std::abs(q0), 1e-6); };
  for (const auto& s : traj) {
    d.H = std::max(d.H, rel(std::abs(s.H_reduced - f.H_reduced), f.H_reduced));
    d.E = std::max(d.E, rel(std::abs(s.E_lab - f.E_lab), f.E_lab));
    d.P = std::max(d.P, rel(norm(s.P - f.P), norm(f.P)));
    d.M = std::max(d.M, rel(std::abs(s.M - f.M), f.M));
    d.div_max = std::max({d.div_max, s.divA_max, s.divPi_max});
  }
  return d;
}

}  // namespace mlsim::analysis
