#include "desk.hpp"
#include "mlsim/conservation.hpp"
#include "mlsim/errors.hpp"
#include "mlsim/lab.hpp"
#include "mlsim/perturbation.hpp"
#include "mlsim/reduced.hpp"
#include "mlsim/soliton.hpp"
#include "mlsim/stability.hpp"

using namespace mlsim;
using namespace mlsim::dynamics;

namespace {

ReducedState empty_state(Vec2 P, double M) {
  ReducedState s;
  s.A = VectorField(desk::grid());
  s.Pi = VectorField(desk::grid());
  s.P = P;
  s.M = M;
  return s;
}

ReducedState kicked(const soliton::SolitonParams& p, double delta, std::uint64_t seed,
                    const ParticleKind& kind = desk::nr) {
  const auto sol = soliton::build_soliton(p, desk::rho(), kind);
  return analysis::perturbed_state(sol, analysis::make_kicked_perturbation(desk::grid(), delta, seed),
                                   desk::rho());
}

double field_distance(const ReducedState& a, const ReducedState& b) {
  return spectral::h1dot_norm(a.A - b.A) + spectral::l2_norm(a.Pi - b.Pi);
}

const double kDt = 0.1 * desk::grid()->dx();

}  // namespace

TEST_CASE("reduced hamiltonian without fields") {
  const auto s = empty_state({0.6, -0.8}, 2.0);
  CHECK(reduced_hamiltonian(s, desk::rho(), desk::nr) == doctest::Approx(0.5 + 2.0).epsilon(1e-15));
  CHECK(reduced_hamiltonian(s, desk::rho(), desk::rel) ==
        doctest::Approx(std::sqrt(2.0) + 2.0).epsilon(1e-15));
}

TEST_CASE("free particle velocities") {
  const auto s = empty_state({0.6, -0.8}, 2.0);
  const auto v = particle_velocities(s, desk::rho(), desk::nr);
  CHECK(v.qdot.x == doctest::Approx(0.6));
  CHECK(v.phidot == doctest::Approx(2.0));
  const auto big = empty_state({30.0, 40.0}, 0.0);
  const auto vr = particle_velocities(big, desk::rho(), desk::rel);
  CHECK(norm(vr.qdot) < 1.0);
  CHECK(vr.qdot.x == doctest::Approx(30.0 / std::sqrt(1.0 + 2500.0)).epsilon(1e-15));
}

TEST_CASE("reduced rhs source terms") {
  const auto z = reduced_rhs(empty_state({0.0, 0.0}, 0.0), desk::rho(), desk::nr);
  CHECK(spectral::l2_norm(z.dA) == 0.0);
  CHECK(spectral::l2_norm(z.dPi) == 0.0);

  const auto r = reduced_rhs(empty_state({0.2, 0.0}, 0.0), desk::rho(), desk::nr);
  CHECK(spectral::l2_norm(r.dA) == 0.0);
  VectorField src(desk::grid());
  src[0] = desk::rho().rho_hat;
  for (auto& x : src[0]) x *= 0.2;
  src = spectral::project_solenoidal(src);
  CHECK(spectral::l2_norm(r.dPi - src) <= 1e-14 * spectral::l2_norm(src));
}

TEST_CASE("cfl and scheme parsing") {
  CHECK_THROWS_AS(check_cfl(0.3, *desk::grid()), ConfigError);
  CHECK_NOTHROW(check_cfl(0.1, *desk::grid()));
  CHECK(parse_scheme("split") == Scheme::split);
  CHECK(scheme_name(Scheme::rk4) == "rk4");
  CHECK_THROWS_AS(parse_scheme("euler"), ConfigError);
}

TEST_CASE("free particle drifts at constant speed before fields build up") {
  auto s = empty_state({0.2, 0.1}, 0.0);
  const double dt = 0.001;
  for (int n = 0; n < 10; ++n) s = step_reduced(s, dt, desk::rho(), desk::nr, Scheme::rk4);
  // the self field grows like t^2, so the particle lags by O(t^3)
  CHECK(norm(s.q - Vec2{0.002, 0.001}) <= 1e-6);
}

TEST_CASE("time reversal") {
  for (const auto scheme : {Scheme::rk4, Scheme::split}) {
    const auto s0 = kicked({{0.3, 0.1}, 1.0}, 0.05, 4);
    auto s = step_reduced(s0, kDt, desk::rho(), desk::nr, scheme);
    s = time_reverse(step_reduced(time_reverse(s), kDt, desk::rho(), desk::nr, scheme));
    CHECK(field_distance(s, s0) <= 1e-8);
    CHECK(norm(s.q) <= 1e-8);
  }
}

TEST_CASE("soliton stays put") {
  const auto S = make_reduced_state(soliton::build_soliton({{0.5, 0.0}, 1.0}, desk::rho(), desk::nr));
  auto F = S;
  for (int n = 0; n < 100; ++n) F = step_reduced(F, kDt, desk::rho(), desk::nr, Scheme::rk4);
  CHECK(analysis::distance(F, S, desk::rho(), desk::nr) <= 1e-8);
  CHECK(F.q.x == doctest::Approx(0.5 * F.t).epsilon(1e-10));

  // Strang splitting only keeps the soliton to O(dt^2)
  auto drift = [&](double dt) {
    auto G = S;
    const int n = static_cast<int>(std::llround(1.0 / dt));
    for (int i = 0; i < n; ++i) G = step_reduced(G, dt, desk::rho(), desk::nr, Scheme::split);
    return analysis::distance(G, S, desk::rho(), desk::nr);
  };
  const double ratio = drift(2 * kDt) / drift(kDt);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("rk4 drift is fourth order") {
  auto run = [](double dt) {
    auto s = kicked({{0.3, 0.0}, 1.0}, 0.1, 8);
    const double H0 = reduced_hamiltonian(s, desk::rho(), desk::nr);
    const int n = static_cast<int>(std::llround(2.0 / dt));
    for (int i = 0; i < n; ++i) s = step_reduced(s, dt, desk::rho(), desk::nr, Scheme::rk4);
    return std::abs(reduced_hamiltonian(s, desk::rho(), desk::nr) - H0);
  };
  const double coarse = run(0.2), fine = run(0.1);
  CHECK(coarse / fine > 10.0);
  CHECK(coarse / fine < 40.0);
}

TEST_CASE("split step is exact for the free field") {
  const auto g = desk::grid();
  const auto zero_rho = make_charge_density("laplacian-gaussian", 1.0, 0.0, g);
  ReducedState s = empty_state({0.0, 0.0}, 0.0);
  s.A = spectral::project_solenoidal(desk::random_vector(g, 31));
  s.Pi = spectral::project_solenoidal(desk::random_vector(g, 33));
  const double H0 = reduced_hamiltonian(s, zero_rho, desk::nr);
  for (int n = 0; n < 200; ++n) s = step_reduced(s, kDt, zero_rho, desk::nr, Scheme::split);
  CHECK(std::abs(reduced_hamiltonian(s, zero_rho, desk::nr) - H0) <= 1e-12 * H0);
}

TEST_CASE("fields stay solenoidal") {
  auto s = kicked({{0.3, 0.0}, 1.0}, 0.1, 12);
  for (int n = 0; n < 20; ++n) s = step_reduced(s, kDt, desk::rho(), desk::nr, Scheme::split);
  CHECK(spectral::divergence_ratio(s.A) <= 1e-10);
  CHECK(spectral::divergence_ratio(s.Pi) <= 1e-10);
}

TEST_CASE("lab state at rest has no dynamics") {
  LabState l;
  l.A = VectorField(desk::grid());
  l.Pi = VectorField(desk::grid());
  const auto r = lab_rhs(l, desk::rho(), desk::nr);
  CHECK(norm(r.dq) == 0.0);
  CHECK(norm(r.dp) == 0.0);
  CHECK(r.dphi == 0.0);
  CHECK(r.dM == 0.0);
  CHECK(spectral::l2_norm(r.dA) == 0.0);
  CHECK(spectral::l2_norm(r.dPi) == 0.0);
}

TEST_CASE("lab soliton travels rigidly") {
  const auto sol = soliton::build_soliton({{0.4, 0.2}, 1.0}, desk::rho(), desk::nr);
  auto l = to_lab(make_reduced_state(sol));
  const int n = static_cast<int>(std::llround(1.0 / kDt));
  for (int i = 0; i < n; ++i) l = step_lab(l, kDt, desk::rho(), desk::nr);
  const auto exact = spectral::translate(sol.A, l.t * sol.params.v);
  CHECK(spectral::h1dot_norm(l.A - exact) <= 1e-5);
}

TEST_CASE("lab invariants are conserved along the flow") {
  auto l = to_lab(kicked({{0.3, 0.0}, 1.0}, 0.05, 14));
  const auto I0 = lab_invariants(l, desk::rho(), desk::nr);
  double dP = 0.0, dM = 0.0;
  for (int i = 0; i < 40; ++i) {
    l = step_lab(l, kDt, desk::rho(), desk::nr);
    const auto I = lab_invariants(l, desk::rho(), desk::nr);
    dP = std::max(dP, norm(I.P - I0.P));
    dM = std::max(dM, std::abs(I.M - I0.M));
  }
  CHECK(dP <= 1e-8);
  CHECK(dM <= 1e-8);
}

TEST_CASE("comoving transform") {
  const auto s0 = kicked({{0.3, 0.0}, 1.0}, 0.05, 16);
  auto l = to_lab(s0);
  const auto back = comoving_transform(l);
  CHECK(field_distance(back, s0) <= 1e-12);
  CHECK(norm(back.P - s0.P) <= 1e-12);
  CHECK(std::abs(back.M - s0.M) <= 1e-12);

  l.q = {3.25, -1.5};
  l.A = spectral::translate(l.A, l.q);
  l.Pi = spectral::translate(l.Pi, l.q);
  const auto moved = comoving_transform(l);
  CHECK(field_distance(moved, s0) <= 1e-12);
  CHECK(norm(moved.P - s0.P) <= 1e-12);
  const auto again = to_lab(moved);
  CHECK(spectral::l2_norm(again.A - spectral::translate(s0.A, moved.q)) <= 1e-12);
}

TEST_CASE("gauss law for the reconstructed fields") {
  auto l = to_lab(kicked({{0.3, 0.0}, 1.0}, 0.05, 18));
  l.q = {1.0, 2.0};
  l.A = spectral::translate(l.A, l.q);
  l.Pi = spectral::translate(l.Pi, l.q);
  const auto eb = reconstruct_EB(l, desk::rho());
  const auto div = spectral::divergence(eb.E);
  const auto rq = spectral::shift_density(desk::rho(), l.q);
  double res = 0.0;
  for (std::size_t i = 0; i < div.hat.size(); ++i) res = std::max(res, std::abs(div.hat[i] - rq.hat[i]));
  CHECK(res <= 1e-8);

  LabState rest;
  rest.A = VectorField(desk::grid());
  rest.Pi = VectorField(desk::grid());
  const auto e0 = reconstruct_EB(rest, desk::rho());
  CHECK(spectral::norms(e0.B).l2 == 0.0);
  const auto phi = spectral::coulomb_potential(desk::rho());
  CHECK(spectral::l2_norm(e0.E + spectral::gradient(phi)) <= 1e-14);
}

TEST_CASE("comoving fields of a lab soliton are frozen") {
  const auto sol = soliton::build_soliton({{0.3, 0.0}, 1.0}, desk::rho(), desk::nr);
  auto l = to_lab(make_reduced_state(sol));
  const auto eb0 = reconstruct_EB(l, desk::rho());
  for (int i = 0; i < 40; ++i) l = step_lab(l, kDt, desk::rho(), desk::nr);
  const auto eb = reconstruct_EB(l, desk::rho());
  const auto E = spectral::translate(eb.E, -1.0 * l.q);
  const auto B = spectral::translate(eb.B, -1.0 * l.q);
  CHECK(spectral::l2_norm(E - eb0.E) <= 1e-5);
  ScalarField dB(B.grid);
  for (std::size_t i = 0; i < dB.hat.size(); ++i) dB.hat[i] = B.hat[i] - eb0.B.hat[i];
  CHECK(spectral::norms(dB).l2 <= 1e-5);
}

TEST_CASE("conservation monitor") {
  auto s = make_reduced_state(soliton::build_soliton({{0.3, 0.0}, 1.0}, desk::rho(), desk::nr));
  std::vector<analysis::TrajectorySample> traj;
  for (int i = 0; i < 20; ++i) {
    traj.push_back(analysis::sample(s, desk::rho(), desk::nr));
    s = step_reduced(s, kDt, desk::rho(), desk::nr, Scheme::rk4);
  }
  const auto d = analysis::conservation_monitor(traj);
  CHECK(d.H <= 1e-8);
  CHECK(d.E <= 1e-8);
  CHECK(d.P <= 1e-8);
  CHECK(d.M <= 1e-8);
}
