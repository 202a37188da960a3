#include <map>
#include <tuple>

#include "desk.hpp"
#include "mlsim/errors.hpp"
#include "mlsim/gradcheck.hpp"
#include "mlsim/lower_bound.hpp"
#include "mlsim/perturbation.hpp"
#include "mlsim/reduced.hpp"
#include "mlsim/soliton.hpp"
#include "mlsim/stability.hpp"

using namespace mlsim;
using namespace mlsim::analysis;

namespace {

const soliton::SolitonRecord& sol(double v, double w, const ParticleKind& kind = desk::nr) {
  static std::map<std::tuple<double, double, int>, soliton::SolitonRecord> cache;
  const auto key = std::make_tuple(v, w, int(kind.tag));
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, soliton::build_soliton({{v, 0.0}, w}, desk::rho(), kind)).first;
  return it->second;
}

}  // namespace

TEST_CASE("perturbations are seeded, solenoidal and normalised") {
  const auto a = make_field_perturbation(desk::grid(), 0.25, 42);
  const auto b = make_field_perturbation(desk::grid(), 0.25, 42);
  const auto c = make_field_perturbation(desk::grid(), 0.25, 43);
  CHECK(spectral::l2_norm(a.dA - b.dA) == 0.0);
  CHECK(spectral::l2_norm(a.dA - c.dA) > 0.0);
  CHECK(spectral::divergence_ratio(a.dA) <= 1e-12);
  CHECK(spectral::divergence_ratio(a.dPi) <= 1e-12);
  const double h1 = spectral::h1dot_norm(a.dA), l2 = spectral::l2_norm(a.dPi);
  CHECK(std::hypot(h1, l2) == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("kicked perturbation sits at the requested distance") {
  const auto& s = sol(0.3, 1.0);
  const auto p = make_kicked_perturbation(desk::grid(), 1e-2, 5);
  const auto F = perturbed_state(s, p, desk::rho());
  CHECK(distance(F, dynamics::make_reduced_state(s), desk::rho(), desk::nr) ==
        doctest::Approx(1e-2).epsilon(1e-9));
}

TEST_CASE("distance") {
  const auto S = dynamics::make_reduced_state(sol(0.3, 1.0));
  CHECK(distance(S, S, desk::rho(), desk::nr) == 0.0);

  // scaling Pi by (1 + eps) changes the field part by eps |Pi| and the velocity
  // through <Pi, grad A>
  const double eps = 1e-3;
  auto T = S;
  T.Pi *= 1.0 + eps;
  const auto va = dynamics::particle_velocities(S, desk::rho(), desk::nr);
  const auto vb = dynamics::particle_velocities(T, desk::rho(), desk::nr);
  const double expect = eps * spectral::l2_norm(S.Pi) + norm(va.qdot - vb.qdot);
  CHECK(distance(S, T, desk::rho(), desk::nr) == doctest::Approx(expect).epsilon(1e-12));

  // triangle inequality on random triples
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = perturbed_state(sol(0.3, 1.0), make_kicked_perturbation(desk::grid(), 0.1, 3 * seed), desk::rho());
    const auto b = perturbed_state(sol(0.3, 1.0), make_kicked_perturbation(desk::grid(), 0.1, 3 * seed + 1), desk::rho());
    const auto c = perturbed_state(sol(0.3, 1.0), make_kicked_perturbation(desk::grid(), 0.1, 3 * seed + 2), desk::rho());
    CHECK(distance(a, c, desk::rho(), desk::nr) <=
          distance(a, b, desk::rho(), desk::nr) + distance(b, c, desk::rho(), desk::nr) + 1e-15);
  }
}

TEST_CASE("lower bound at zero perturbation") {
  Perturbation p;
  p.dA = VectorField(desk::grid());
  p.dPi = VectorField(desk::grid());
  const auto r = lower_bound_check(sol(0.5, 2.0), p, desk::rho());
  CHECK(r.deltaH == 0.0);
  CHECK(r.bound == 0.0);
  CHECK(r.pass);
}

TEST_CASE("lower bound at rest is at least half the norm") {
  for (const auto& kind : {desk::nr, desk::rel})
    for (int i = 0; i < 50; ++i) {
      const double amp = std::pow(10.0, -3.0 + 3.0 * i / 49.0);
      const auto p = make_field_perturbation(desk::grid(), amp, 1000 + i);
      const auto r = lower_bound_check(sol(0.0, 1.0, kind), p, desk::rho());
      CHECK(r.pass);
      CHECK(r.deltaH >= 0.5 * amp * amp * (1.0 - 1e-12));
      CHECK(r.identity_error <= 1e-9);
    }
}

TEST_CASE("lower bound for a fast relativistic soliton") {
  for (int i = 0; i < 50; ++i) {
    const auto p = make_field_perturbation(desk::grid(), 0.5, 2000 + i);
    const auto r = lower_bound_check(sol(0.9, 5.0, desk::rel), p, desk::rho());
    CHECK(r.pass);
    CHECK(r.identity_error <= 1e-9);
  }
}

TEST_CASE("relativistic convexity term") {
  const auto c = convexity_check(1.0, 10000, 3);
  CHECK(c.samples == 10000);
  CHECK(c.violations == 0);
  CHECK(c.min_value >= 0.0);
  CHECK(relativistic_convexity_term(1.0, {0.0, 0.0}, {0.0, 0.0}) == 0.0);
  // small dp: the term is the quadratic form of the Hessian, dp^2 / (2 m) at rest
  CHECK(relativistic_convexity_term(1.0, {0.0, 0.0}, {1e-4, 0.0}) ==
        doctest::Approx(0.5e-8).epsilon(1e-6));
}

TEST_CASE("gradient check") {
  for (const auto& kind : {desk::nr, desk::rel}) {
    auto base = dynamics::make_reduced_state(sol(0.3, 1.0, kind));
    const auto bp = make_field_perturbation(desk::grid(), 0.3, 50);
    base.A += bp.dA;
    base.Pi += bp.dPi;
    for (int d = 0; d < 5; ++d) {
      const auto p = make_field_perturbation(desk::grid(), 1.0, 60 + d);
      const auto g = gradient_check(base, p.dA, p.dPi, desk::rho(), kind);
      CHECK(g.rel_error <= 1e-6);
    }
  }
}

TEST_CASE("hamiltonian increment matches direct differences") {
  const auto base = dynamics::make_reduced_state(sol(0.5, 2.0));
  const auto p = make_field_perturbation(desk::grid(), 0.5, 77);
  auto moved = base;
  moved.A += p.dA;
  moved.Pi += p.dPi;
  const double direct = dynamics::reduced_hamiltonian(moved, desk::rho(), desk::nr) -
                        dynamics::reduced_hamiltonian(base, desk::rho(), desk::nr);
  CHECK(dynamics::hamiltonian_increment(base, p.dA, p.dPi, desk::rho(), desk::nr) ==
        doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("stability experiment") {
  StabilityOptions o;
  o.T = 2.0;
  o.stride = 5;
  const auto zero = stability_experiment({{0.0, 0.0}, 1.0}, 0.0, 1, desk::rho(), desk::nr, o);
  CHECK(zero.sup_orig <= 1e-8);
  for (double d : zero.d_orig) CHECK(d <= 1e-8);

  const auto r = stability_experiment({{0.0, 0.0}, 1.0}, 1e-3, 1, desk::rho(), desk::nr, o);
  CHECK(r.initial_distance == doctest::Approx(1e-3).epsilon(1e-9));
  CHECK(r.matched_constant <= 20.0);
  CHECK(std::isfinite(r.sup_orig));
  CHECK(r.t.front() == 0.0);
  CHECK(r.t.back() == doctest::Approx(2.0));

  o.T = 17.0;
  CHECK_THROWS_AS(stability_experiment({{0.0, 0.0}, 1.0}, 1e-3, 1, desk::rho(), desk::nr, o),
                  ConfigError);
}
