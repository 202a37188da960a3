#include "mlsim/jacobian.hpp"

#include <cmath>
#include <numbers>

#include "mlsim/errors.hpp"
#include "mlsim/soliton.hpp"

namespace mlsim::analysis {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_speed(Vec2 v) {
  if (!(norm2(v) < 1.0) || !std::isfinite(v.x) || !std::isfinite(v.y))
    throw DomainError("soliton velocity must satisfy |v| < 1");
}

void add_kinetic(MapPoint& mp, Vec2 v, double omega, const ParticleKind& kind) {
  const Vec2 p = kind.kinetic_momentum(v);
  const auto dp = kind.kinetic_momentum_jacobian(v);
  mp.P += p;
  mp.M += kind.I * omega;
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) mp.jac(j, l) += dp[j][l];
  mp.jac(2, 2) += kind.I;
}

void accumulate(MapPoint& acc, const MapPoint& t, double w) {
  acc.P += w * t.P;
  acc.M += w * t.M;
  acc.jac += w * t.jac;
}

}  // namespace

MapPoint field_integrand(Vec2 k, double r, double g, Vec2 v, double omega) {
  const double ksq = norm2(k);
  const double vk = dot(v, k);
  const double D = ksq - vk * vk;
  const double D2 = D * D, D3 = D2 * D;
  const double w2 = omega * omega;
  const double pv2 = norm2(v) - vk * vk / ksq;
  const double T = pv2 * r + w2 * g;

  MapPoint out;
  for (int j = 0; j < 2; ++j) {
    const double pvj = v[j] - k[j] * vk / ksq;
    out.P[j] = vk * k[j] * T / D2 + pvj * r / D;
    for (int l = 0; l < 2; ++l) {
      const double kjl = k[j] * k[l];
      const double dpv2 = 2.0 * v[l] - 2.0 * vk * k[l] / ksq;
      out.jac(j, l) = kjl * T / D2 + vk * k[j] * r * dpv2 / D2 + 4.0 * vk * vk * kjl * T / D3 +
                      ((j == l ? 1.0 : 0.0) - kjl / ksq) * r / D + 2.0 * pvj * vk * k[l] * r / D2;
    }
    out.jac(j, 2) = 2.0 * omega * vk * k[j] * g / D2;
  }
  out.M = omega * g / D;
  for (int l = 0; l < 2; ++l) out.jac(2, l) = 2.0 * omega * vk * k[l] * g / D2;
  out.jac(2, 2) = g / D;
  return out;
}

MapPoint momentum_map(Vec2 v, double omega, const ChargeDensity& rho, const ParticleKind& kind,
                      Backend backend, const QuadratureOptions& opt) {
  check_speed(v);
  MapPoint mp;
  if (backend == Backend::lattice) {
    const Grid& gr = *rho.grid;
    const int N = gr.N();
    // Rows are summed separately and then in order, like the kernels.
    std::vector<MapPoint> rows(N);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < N; ++i) {
      MapPoint acc;
      for (int j = 0; j < N; ++j) {
        const std::size_t id = static_cast<std::size_t>(i) * N + j;
        if (!gr.active()[id]) continue;
        const double kap = gr.kabs()[id];
        const double r = std::norm(rho.rho_hat[id]);
        const double g = std::pow(rho.profile->rho_hat_prime(kap), 2);
        accumulate(acc, field_integrand({gr.k1()[id], gr.k2()[id]}, r, g, v, omega), 1.0);
      }
      rows[i] = acc;
    }
    for (const auto& row : rows) accumulate(mp, row, gr.weight());
  } else {
    // Every term is homogeneous of degree -2 in k, so the integral factors into
    // a radial moment times an angular integral evaluated on the unit circle.
    const RadialMoments rm = radial_moments(*rho.profile, opt);
    const double w = 1.0 / (kTwoPi * kTwoPi);
    auto angular = [&](int which, double r, double g) {
      return integrate(
          [&](double th) {
            const MapPoint t = field_integrand({std::cos(th), std::sin(th)}, r, g, v, omega);
            if (which < 2) return t.P[which];
            if (which == 2) return t.M;
            const int e = which - 3;
            return t.jac(e / 3, e % 3);
          },
          0.0, kTwoPi, opt);
    };
    for (int which = 0; which < 12; ++which) {
      const double val = w * (rm.rr * angular(which, 1.0, 0.0) + rm.gg * angular(which, 0.0, 1.0));
      if (which < 2)
        mp.P[which] = val;
      else if (which == 2)
        mp.M = val;
      else
        mp.jac((which - 3) / 3, (which - 3) % 3) = val;
    }
  }
  add_kinetic(mp, v, omega, kind);
  return mp;
}

FieldMasses field_masses(const ChargeDensity& rho, Backend backend) {
  FieldMasses fm;
  if (backend == Backend::lattice) {
    const Grid& gr = *rho.grid;
    for (std::size_t id = 0; id < gr.size(); ++id) {
      if (!gr.active()[id]) continue;
      const double k2 = gr.ksq()[id];
      fm.mu += gr.k2()[id] * gr.k2()[id] * std::norm(rho.rho_hat[id]) / (k2 * k2);
      fm.iota += std::pow(rho.profile->rho_hat_prime(gr.kabs()[id]), 2) / k2;
    }
    fm.mu *= gr.weight();
    fm.iota *= gr.weight();
  } else {
    // Angular factors: int sin^2 = pi, int 1 = 2 pi.
    const RadialMoments rm = radial_moments(*rho.profile);
    fm.mu = rm.rr * std::numbers::pi / (kTwoPi * kTwoPi);
    fm.iota = rm.gg * kTwoPi / (kTwoPi * kTwoPi);
  }
  return fm;
}

JacobianTable jacobian_entries(double v, double omega, const ChargeDensity& rho,
                               const ParticleKind& kind, Backend backend) {
  if (!(v >= 0.0 && v < 1.0)) throw DomainError("jacobian_entries: need 0 <= v < 1");
  const MapPoint mp = momentum_map({v, 0.0}, omega, rho, kind, backend);
  JacobianTable t;
  t.v = v;
  t.omega = omega;
  t.d = mp.jac;
  t.det = mp.jac.determinant();
  const auto& d = mp.jac;
  t.det_axis = d(1, 1) * (d(0, 0) * d(2, 2) - d(2, 0) * d(0, 2));
  t.positive = t.det > 0.0;
  t.structural_zero_max =
      std::max({std::abs(d(1, 2)), std::abs(d(0, 1)), std::abs(d(1, 0)), std::abs(d(2, 1))});
  return t;
}

Eigen::Matrix3d momentum_map_fd(Vec2 v, double omega, const ChargeDensity& rho,
                                const ParticleKind& kind, Backend backend, double h) {
  auto eval = [&](Vec2 vv, double ww) -> Eigen::Vector3d {
    if (backend == Backend::polar) {
      const MapPoint mp = momentum_map(vv, ww, rho, kind, Backend::polar);
      return {mp.P.x, mp.P.y, mp.M};
    }
    const auto rec = soliton::build_soliton({vv, ww}, rho, kind);
    return {rec.P.x, rec.P.y, rec.M};
  };
  Eigen::Matrix3d fd;
  for (int c = 0; c < 3; ++c) {
    Vec2 vp = v, vm = v;
    double wp = omega, wm = omega;
    if (c < 2) {
      vp[c] += h;
      vm[c] -= h;
    } else {
      wp += h;
      wm -= h;
    }
    fd.col(c) = (eval(vp, wp) - eval(vm, wm)) / (2.0 * h);
  }
  return fd;
}

double jacobian_vs_finite_difference(Vec2 v, double omega, const ChargeDensity& rho,
                                     const ParticleKind& kind, double h, Backend backend) {
  const Eigen::Matrix3d a = momentum_map(v, omega, rho, kind, backend).jac;
  const Eigen::Matrix3d fd = momentum_map_fd(v, omega, rho, kind, backend, h);
  const double floor = 1e-8 * a.cwiseAbs().maxCoeff();
  double err = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      err = std::max(err, std::abs(a(i, j) - fd(i, j)) / std::max(std::abs(a(i, j)), floor));
  return err;
}

AxisIntegrals axis_integrals(double v, const ChargeDensity& rho) {
  const RadialMoments rm = radial_moments(*rho.profile);
  const double w = rm.gg / (kTwoPi * kTwoPi);
  auto ang = [&](int p, int pw) {
    return integrate(
        [&](double th) {
          const double c = std::cos(th);
          return std::pow(c, p) / std::pow(1.0 - v * v * c * c, pw);
        },
        0.0, kTwoPi);
  };
  return {w * ang(0, 1), w * ang(2, 2), w * ang(4, 3)};
}

}  // namespace mlsim::analysis
