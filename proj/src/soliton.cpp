#include "mlsim/soliton.hpp"

#include <cmath>
#include <sstream>

#include "mlsim/errors.hpp"
#include "mlsim/jacobian.hpp"
#include "mlsim/kernels.hpp"

namespace mlsim::soliton {

namespace {
constexpr cplx I{0.0, 1.0};
}

SolitonRecord build_soliton(const SolitonParams& params, const ChargeDensity& rho,
                            const ParticleKind& kind) {
  const Vec2 v = params.v;
  const double w = params.omega;
  if (!(norm2(v) < 1.0)) throw DomainError("soliton velocity outside |v| < 1");
  if (!std::isfinite(w)) throw DomainError("soliton angular velocity must be finite");

  const Grid& g = *rho.grid;
  SolitonRecord rec;
  rec.params = params;
  rec.kind = kind;
  rec.A = VectorField(rho.grid);
  rec.Pi = VectorField(rho.grid);
  for (std::size_t id = 0; id < g.size(); ++id) {
    if (!g.active()[id]) continue;
    const double k1 = g.k1()[id], k2 = g.k2()[id], ksq = g.ksq()[id];
    const double vk = v.x * k1 + v.y * k2;
    const double D = ksq - vk * vk;
    const cplx r = rho.rho_hat[id];
    const double rp = rho.profile->rho_hat_prime(g.kabs()[id]) / g.kabs()[id];
    // S^ = i J grad rho^ = i (k2, -k1) rho^'(|k|)/|k|
    const cplx s1 = I * k2 * rp, s2 = -I * k1 * rp;
    const cplx a1 = ((v.x - k1 * vk / ksq) * r - w * s1) / D;
    const cplx a2 = ((v.y - k2 * vk / ksq) * r - w * s2) / D;
    rec.A[0][id] = a1;
    rec.A[1][id] = a2;
    rec.Pi[0][id] = -I * vk * a1;
    rec.Pi[1][id] = -I * vk * a2;
  }
  const Momenta mm = soliton_momenta(rec.A, rec.Pi, params, rho, kind);
  rec.P = mm.P;
  rec.M = mm.M;
  return rec;
}

Momenta soliton_momenta(const VectorField& A, const VectorField& Pi, const SolitonParams& params,
                        const ChargeDensity& rho, const ParticleKind& kind) {
  const Grid& g = *rho.grid;
  const auto fm = kernels::omp::field_moments(kernels::modes_of(g), A[0].data(), A[1].data(),
                                              Pi[0].data(), Pi[1].data(), rho.rho_hat.data(),
                                              rho.s_hat[0].data(), rho.s_hat[1].data());
  const double w = g.weight();
  const Vec2 p = kind.kinetic_momentum(params.v);
  Momenta out;
  out.P = {p.x - w * fm.pi_grad_a[0] + w * fm.a_rho[0], p.y - w * fm.pi_grad_a[1] + w * fm.a_rho[1]};
  out.M = kind.I * params.omega - w * fm.a_s;
  return out;
}

NewtonResult solve_soliton_params(Vec2 P, double M, const ChargeDensity& rho,
                                  const ParticleKind& kind, const NewtonOptions& opt) {
  using analysis::Backend;
  if (!std::isfinite(P.x) || !std::isfinite(P.y) || !std::isfinite(M))
    throw DomainError("target momenta must be finite");

  const auto fm = analysis::field_masses(rho, Backend::lattice);
  NewtonResult res;
  Vec2 v = P / (kind.m + fm.mu);
  double w = M / (kind.I + fm.iota);
  if (norm(v) > 0.9) v = 0.9 / norm(v) * v;

  const double scale = 1.0 + norm(P) + std::abs(M);
  for (int it = 0; it <= opt.max_iterations; ++it) {
    const auto mp = analysis::momentum_map(v, w, rho, kind, Backend::lattice);
    const Eigen::Vector3d F(mp.P.x - P.x, mp.P.y - P.y, mp.M - M);
    const double r = F.norm();
    res.residuals.push_back(r);
    if (r <= opt.tol * scale) {
      res.params = {v, w};
      res.iterations = it;
      return res;
    }
    if (it == opt.max_iterations) break;
    const Eigen::Vector3d step = mp.jac.partialPivLu().solve(-F);
    double lam = 1.0;
    Vec2 vn = {v.x + step(0), v.y + step(1)};
    while (norm(vn) > opt.speed_limit && lam > 1e-12) {
      lam *= 0.5;
      vn = {v.x + lam * step(0), v.y + lam * step(1)};
    }
    v = vn;
    w += lam * step(2);
  }
  std::ostringstream os;
  os << "solve_soliton_params: no convergence in " << opt.max_iterations
     << " iterations, final residual " << res.residuals.back();
  throw ConvergenceError(os.str(), res.residuals);
}

}  // namespace mlsim::soliton
