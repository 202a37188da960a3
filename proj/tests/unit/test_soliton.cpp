#include "desk.hpp"
#include "mlsim/errors.hpp"
#include "mlsim/jacobian.hpp"
#include "mlsim/reduced.hpp"
#include "mlsim/soliton.hpp"

using namespace mlsim;
using namespace mlsim::soliton;
using analysis::Backend;

namespace {

// Continuum values from tests/oracles/momentum_map_oracle.py (scipy quad).
struct OraclePoint {
  double v, omega, P1, M;
};
constexpr OraclePoint kOracle[] = {
    {0.0, 1.0, 0.0, 7.283185307179585},
    {0.3, 0.0, 0.7939925912872732, 0.0},
    {0.5, 2.0, 11.08049629136627, 16.51039491387374},
    {0.9, 0.0, 4.143288528655506, 0.0},
    {0.9, 5.0, 857.6402697537887, 77.07307841456679},
};

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("trivial soliton") {
  const auto s = build_soliton({{0.0, 0.0}, 0.0}, desk::rho(), desk::nr);
  CHECK(spectral::l2_norm(s.A) == 0.0);
  CHECK(spectral::l2_norm(s.Pi) == 0.0);
  CHECK(norm(s.P) == 0.0);
  CHECK(s.M == 0.0);
}

TEST_CASE("spinning soliton at rest") {
  const auto s = build_soliton({{0.0, 0.0}, 1.0}, desk::rho(), desk::nr);
  CHECK(spectral::l2_norm(s.Pi) == 0.0);
  CHECK(norm(s.P) <= 1e-14);
  // M = omega (I + iota_f), the grid value of iota_f from the lattice backend
  const auto fm = analysis::field_masses(desk::rho(), Backend::lattice);
  CHECK(s.M == doctest::Approx(1.0 + fm.iota).epsilon(1e-12));
  CHECK(s.A.solenoidal);
}

TEST_CASE("moving soliton solves the static field equation") {
  const auto& r = desk::rho();
  const Vec2 v{0.5, 0.0};
  const auto s = build_soliton({v, 0.0}, r, desk::nr);
  // Delta A - (v.grad)^2 A + P[v rho] = 0
  auto res = spectral::laplacian(s.A) - spectral::advect(spectral::advect(s.A, v), v);
  VectorField src(r.grid);
  for (int c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < r.rho_hat.size(); ++i) src[c][i] = v[c] * r.rho_hat[i];
  res += spectral::project_solenoidal(src);
  const double rn = spectral::norms(ScalarField::from_real(r.grid, r.rho)).l2;
  CHECK(spectral::l2_norm(res) <= 1e-8 * rn);
}

TEST_CASE("soliton velocities and stationarity") {
  for (const auto& kind : {desk::nr, desk::rel}) {
    const SolitonParams p{{0.3, -0.2}, 2.0};
    const auto s = build_soliton(p, desk::rho(), kind);
    const auto st = dynamics::make_reduced_state(s);
    const auto vel = dynamics::particle_velocities(st, desk::rho(), kind);
    CHECK(norm(vel.qdot - p.v) <= 1e-8);
    CHECK(std::abs(vel.phidot - p.omega) <= 1e-8);
    const auto r = dynamics::reduced_rhs(st, desk::rho(), kind);
    CHECK(spectral::h1dot_norm(r.dA) + spectral::l2_norm(r.dPi) <=
          1e-8 * (1.0 + spectral::h1dot_norm(s.A) + spectral::l2_norm(s.Pi)));
  }
}

TEST_CASE("polar momentum map reproduces the independent oracle") {
  const auto fm = analysis::field_masses(desk::rho(), Backend::polar);
  CHECK(fm.mu == doctest::Approx(M_PI / 2).epsilon(1e-12));
  CHECK(fm.iota == doctest::Approx(2 * M_PI).epsilon(1e-12));
  for (const auto& o : kOracle) {
    const auto mp = analysis::momentum_map({o.v, 0.0}, o.omega, desk::rho(), desk::nr, Backend::polar);
    CHECK(rel(mp.P.x, o.P1) <= 1e-10);
    CHECK(std::abs(mp.P.y) <= 1e-12);
    CHECK(rel(mp.M, o.M) <= 1e-10);
  }
}

TEST_CASE("lattice momentum map equals the grid soliton momenta") {
  for (const Vec2 v : {Vec2{0.0, 0.0}, Vec2{0.3, 0.0}, Vec2{0.2, 0.4}, Vec2{0.9, 0.0}})
    for (double w : {0.0, 1.0, 5.0}) {
      const auto s = build_soliton({v, w}, desk::rho(), desk::nr);
      const auto mp = analysis::momentum_map(v, w, desk::rho(), desk::nr, Backend::lattice);
      const double scale = 1.0 + norm(s.P) + std::abs(s.M);
      CHECK(norm(mp.P - s.P) <= 1e-12 * scale);
      CHECK(std::abs(mp.M - s.M) <= 1e-12 * scale);
    }
}

TEST_CASE("grid momentum map converges to the continuum as L^-2") {
  // The periodic box drops the k < 2 pi / L part of the Fourier integrals;
  // doubling L at fixed dx should shrink the discrepancy about fourfold.
  const Vec2 v{0.3, 0.0};
  const double w = 1.0;
  double err[2];
  int idx = 0;
  for (double L : {16.0, 32.0}) {
    const auto g = make_grid(L, static_cast<int>(4 * L));
    const auto r = make_charge_density("laplacian-gaussian", 1.0, 1.0, g);
    const auto lat = analysis::momentum_map(v, w, r, desk::nr, Backend::lattice);
    const auto pol = analysis::momentum_map(v, w, r, desk::nr, Backend::polar);
    err[idx++] = norm(lat.P - pol.P) + std::abs(lat.M - pol.M);
  }
  const double ratio = err[0] / err[1];
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("newton inversion") {
  const auto& r = desk::rho();
  const auto zero = solve_soliton_params({0.0, 0.0}, 0.0, r, desk::nr);
  CHECK(norm(zero.params.v) <= 1e-12);
  CHECK(std::abs(zero.params.omega) <= 1e-12);

  for (const auto& kind : {desk::nr, desk::rel}) {
    const SolitonParams p{{0.3, 0.0}, 2.0};
    const auto s = build_soliton(p, r, kind);
    const auto back = solve_soliton_params(s.P, s.M, r, kind);
    CHECK(norm(back.params.v - p.v) <= 1e-8);
    CHECK(std::abs(back.params.omega - p.omega) <= 1e-8);
  }

  const auto nospin = solve_soliton_params({1.5, -0.5}, 0.0, r, desk::nr);
  CHECK(std::abs(nospin.params.omega) <= 1e-12);

  const auto fast = build_soliton({{0.0, 0.85}, 4.0}, r, desk::rel);
  const auto inv = solve_soliton_params(fast.P, fast.M, r, desk::rel);
  CHECK(norm(inv.params.v - Vec2{0.0, 0.85}) <= 1e-8);
}

TEST_CASE("invalid soliton parameters") {
  CHECK_THROWS_AS(build_soliton({{1.0, 0.0}, 0.0}, desk::rho(), desk::nr), DomainError);
  CHECK_THROWS_AS(build_soliton({{0.8, 0.8}, 0.0}, desk::rho(), desk::nr), DomainError);
  CHECK_THROWS_AS(solve_soliton_params({NAN, 0.0}, 0.0, desk::rho(), desk::nr), DomainError);
}

TEST_CASE("jacobian entries") {
  const auto& r = desk::rho();
  for (double w : {0.0, 1.0, 5.0}) {
    const auto t = analysis::jacobian_entries(0.0, w, r, desk::nr);
    CHECK(std::abs(t.d(2, 0)) <= 1e-12);  // dM/dv1
    CHECK(std::abs(t.d(0, 2)) <= 1e-12);  // dP1/domega
    CHECK(t.d(0, 0) > 0.0);
    CHECK(t.d(1, 1) > 0.0);
    CHECK(t.d(2, 2) > 0.0);
    CHECK(t.det == doctest::Approx(t.d(0, 0) * t.d(1, 1) * t.d(2, 2)).epsilon(1e-12));
  }
  const auto t0 = analysis::jacobian_entries(0.0, 0.0, r, desk::nr);
  CHECK(t0.d(0, 0) == doctest::Approx(1.0 + M_PI / 2).epsilon(1e-12));
  CHECK(t0.d(1, 1) == doctest::Approx(1.0 + M_PI / 2).epsilon(1e-12));
  // lattice analytic against finite differences of the constructed soliton momenta
  const auto tl = analysis::jacobian_entries(0.0, 0.0, r, desk::nr, Backend::lattice);
  const auto fd = analysis::momentum_map_fd({0.0, 0.0}, 0.0, r, desk::nr, Backend::lattice, 1e-4);
  CHECK(std::abs(fd(0, 0) - tl.d(0, 0)) <= 1e-6 * tl.d(0, 0));

  for (int i = 0; i <= 9; ++i)
    for (double w : {0.0, 1.0, 5.0}) CHECK(analysis::jacobian_entries(0.1 * i, w, r, desk::nr).det > 0.0);

  CHECK(analysis::jacobian_vs_finite_difference({0.0, 0.0}, 0.0, r, desk::nr, 1e-4) <= 1e-5);
  CHECK(analysis::jacobian_vs_finite_difference({0.5, 0.0}, 2.0, r, desk::nr, 1e-4) <= 1e-4);
}

TEST_CASE("finite-difference error is second order in h") {
  // Measured on the entries that are not structurally zero; those only carry
  // quadrature noise divided by h.
  const auto& r = desk::rho();
  const Eigen::Matrix3d a = analysis::momentum_map({0.5, 0.0}, 2.0, r, desk::nr, Backend::polar).jac;
  auto err = [&](double h) {
    const Eigen::Matrix3d f = analysis::momentum_map_fd({0.5, 0.0}, 2.0, r, desk::nr, Backend::polar, h);
    double e = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (std::abs(a(i, j)) > 1e-6 * a.cwiseAbs().maxCoeff())
          e = std::max(e, std::abs(f(i, j) - a(i, j)) / std::abs(a(i, j)));
    return e;
  };
  const double e2 = err(1e-2), e3 = err(1e-3), e4 = err(1e-4);
  CHECK(e2 / e3 == doctest::Approx(100.0).epsilon(0.05));
  CHECK(e3 / e4 == doctest::Approx(100.0).epsilon(0.05));
}

TEST_CASE("axis integrals satisfy Cauchy-Schwarz") {
  for (double v : {0.0, 0.3, 0.6, 0.9}) {
    const auto a = analysis::axis_integrals(v, desk::rho());
    CHECK(a.I2 * a.I2 <= a.I0 * a.I4 * (1.0 + 1e-12));
  }
}
