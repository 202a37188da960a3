#include "mlsim/runner.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "mlsim/charge_density.hpp"
#include "mlsim/conservation.hpp"
#include "mlsim/errors.hpp"
#include "mlsim/gradcheck.hpp"
#include "mlsim/io.hpp"
#include "mlsim/jacobian.hpp"
#include "mlsim/kernels.hpp"
#include "mlsim/lab.hpp"
#include "mlsim/lower_bound.hpp"
#include "mlsim/perturbation.hpp"
#include "mlsim/soliton.hpp"
#include "mlsim/spectral.hpp"
#include "mlsim/stability.hpp"

#ifndef MLSIM_VERSION
#define MLSIM_VERSION "unknown"
#endif

namespace mlsim::app {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

struct Context {
  const ExperimentConfig& cfg;
  GridPtr grid;
  ChargeDensity rho;
  ParticleKind kind;
  dynamics::Scheme scheme;
  double dt;
  fs::path out;
  bool quiet;

  std::vector<Check> checks;
  json measured = json::object();
  json seeds = json::object();
  std::vector<std::string> outputs;

  void check(const std::string& name, double value, double tol, bool pass) {
    checks.push_back({name, pass, value, tol});
  }
  // value <= tol
  void check_le(const std::string& name, double value, double tol) {
    check(name, value, tol, std::isfinite(value) && value <= tol);
  }
  std::string file(const std::string& name) {
    outputs.push_back(name);
    return (out / name).string();
  }
  void log(const std::string& msg) const {
    if (!quiet) std::cout << msg << "\n";
  }
};

ParticleKind make_kind(const ExperimentConfig& c) {
  return c.kind == "relativistic" ? ParticleKind::relativistic(c.m, c.I)
                                  : ParticleKind::nonrelativistic(c.m, c.I);
}

soliton::SolitonParams resolve_params(Context& ctx) {
  const auto& c = ctx.cfg;
  if (!c.has_momenta) return {c.v, c.omega};
  const auto nr = soliton::solve_soliton_params(c.P, c.M, ctx.rho, ctx.kind);
  ctx.measured["newton_iterations"] = nr.iterations;
  ctx.measured["newton_residual"] = nr.residuals.back();
  ctx.measured["v1"] = nr.params.v.x;
  ctx.measured["v2"] = nr.params.v.y;
  ctx.measured["omega"] = nr.params.omega;
  return nr.params;
}

std::vector<double> atlas_row(const soliton::SolitonRecord& rec, const Context& ctx) {
  const auto mp = analysis::momentum_map(rec.params.v, rec.params.omega, ctx.rho, ctx.kind,
                                         analysis::Backend::lattice);
  return {rec.params.v.x, rec.params.v.y,           rec.params.omega,
          rec.P.x,        rec.P.y,                  rec.M,
          spectral::h1dot_norm(rec.A), spectral::l2_norm(rec.Pi), mp.jac.determinant()};
}

void write_fields(Context& ctx, const std::string& name, const VectorField& A,
                  const VectorField& Pi, double t) {
  write_snapshot(ctx.file(name), *ctx.grid, t, {A.real(0), A.real(1), Pi.real(0), Pi.real(1)});
}

dynamics::ReducedState initial_state(Context& ctx, const soliton::SolitonRecord& rec) {
  const std::uint64_t seed = ctx.cfg.seed;
  ctx.seeds["perturbation"] = seed;
  if (ctx.cfg.delta == 0.0) return dynamics::make_reduced_state(rec);
  const auto p = analysis::make_kicked_perturbation(ctx.grid, ctx.cfg.delta, seed, ctx.cfg.sigma_p);
  return analysis::perturbed_state(rec, p, ctx.rho);
}

void cmd_soliton(Context& ctx) {
  const auto params = resolve_params(ctx);
  const auto rec = soliton::build_soliton(params, ctx.rho, ctx.kind);
  CsvWriter csv(ctx.file("soliton.csv"), kAtlasColumns);
  csv.row(atlas_row(rec, ctx));
  csv.close();
  write_fields(ctx, "soliton_fields.bin", rec.A, rec.Pi, 0.0);

  const auto s = dynamics::make_reduced_state(rec);
  const auto r = dynamics::reduced_rhs(s, ctx.rho, ctx.kind);
  const auto v = dynamics::particle_velocities(s, ctx.rho, ctx.kind);
  const double scale = spectral::h1dot_norm(rec.A) + spectral::l2_norm(rec.Pi) + 1.0;
  const double res = spectral::h1dot_norm(r.dA) + spectral::l2_norm(r.dPi);
  ctx.check_le("stationarity", res / scale, 1e-8);
  ctx.check_le("velocity_consistency",
               norm(v.qdot - params.v) + std::abs(v.phidot - params.omega), 1e-8);
  ctx.check_le("solenoidal",
               std::max(spectral::divergence_ratio(rec.A), spectral::divergence_ratio(rec.Pi)),
               1e-10);
  if (ctx.cfg.has_momenta) {
    const double err = norm(rec.P - ctx.cfg.P) + std::abs(rec.M - ctx.cfg.M);
    ctx.check_le("momenta_round_trip", err / (1.0 + norm(ctx.cfg.P) + std::abs(ctx.cfg.M)), 1e-8);
  }
  ctx.measured["P1"] = rec.P.x;
  ctx.measured["P2"] = rec.P.y;
  ctx.measured["M"] = rec.M;
  ctx.measured["H_reduced"] = dynamics::reduced_hamiltonian(s, ctx.rho, ctx.kind);
}

template <class State, class Step>
void run_trajectory(Context& ctx, State s, Step&& step, const std::string& csv_name,
                    analysis::DriftReport& drift, double& max_speed) {
  const int nsteps = static_cast<int>(std::llround(ctx.cfg.T / ctx.dt));
  std::vector<analysis::TrajectorySample> traj;
  CsvWriter csv(ctx.file(csv_name), kTrajectoryColumns);
  max_speed = 0.0;
  for (int n = 0; n <= nsteps; ++n) {
    const auto smp = analysis::sample(s, ctx.rho, ctx.kind);
    max_speed = std::max(max_speed, norm(smp.qdot));
    if (!std::isfinite(smp.E_lab) || !std::isfinite(smp.H_reduced))
      throw NonFiniteError("trajectory became non-finite at step " + std::to_string(n));
    traj.push_back(smp);
    if (n % ctx.cfg.stride == 0 || n == nsteps) csv.row(trajectory_row(smp));
    if (n < nsteps) s = step(s);
  }
  csv.close();
  drift = analysis::conservation_monitor(traj);
}

void cmd_simulate(Context& ctx) {
  const auto rec = soliton::build_soliton(resolve_params(ctx), ctx.rho, ctx.kind);
  const auto s0 = initial_state(ctx, rec);
  analysis::DriftReport d;
  double vmax;
  dynamics::ReducedState last;
  run_trajectory(
      ctx, s0,
      [&](const dynamics::ReducedState& s) {
        last = dynamics::step_reduced(s, ctx.dt, ctx.rho, ctx.kind, ctx.scheme);
        return last;
      },
      "trajectory.csv", d, vmax);
  if (last.A.grid) write_fields(ctx, "final_fields.bin", last.A, last.Pi, last.t);
  ctx.check_le("H_drift", d.H, 1e-8);
  ctx.check_le("solenoidal", d.div_max, 1e-10);
  if (ctx.kind.is_relativistic()) ctx.check("speed_below_light", vmax, 1.0, vmax < 1.0);
  ctx.measured["H_drift"] = d.H;
  ctx.measured["E_drift"] = d.E;
  ctx.measured["max_speed"] = vmax;
}

void cmd_simulate_lab(Context& ctx) {
  const auto rec = soliton::build_soliton(resolve_params(ctx), ctx.rho, ctx.kind);
  const auto l0 = dynamics::to_lab(initial_state(ctx, rec));
  analysis::DriftReport d;
  double vmax;
  dynamics::LabState last;
  run_trajectory(
      ctx, l0,
      [&](const dynamics::LabState& s) {
        last = dynamics::step_lab(s, ctx.dt, ctx.rho, ctx.kind);
        return last;
      },
      "trajectory_lab.csv", d, vmax);
  if (last.A.grid) write_fields(ctx, "final_fields_lab.bin", last.A, last.Pi, last.t);
  ctx.check_le("E_drift", d.E, 1e-7);
  ctx.check_le("P_drift", d.P, 1e-7);
  ctx.check_le("M_drift", d.M, 1e-7);
  ctx.check_le("solenoidal", d.div_max, 1e-10);
  if (ctx.kind.is_relativistic()) ctx.check("speed_below_light", vmax, 1.0, vmax < 1.0);
  ctx.measured["E_drift"] = d.E;
  ctx.measured["P_drift"] = d.P;
  ctx.measured["M_drift"] = d.M;
  ctx.measured["H_drift"] = d.H;
}

void cmd_stability(Context& ctx) {
  const auto params = resolve_params(ctx);
  analysis::StabilityOptions o;
  o.T = ctx.cfg.T;
  o.dt = ctx.dt;
  o.scheme = ctx.scheme;
  o.stride = ctx.cfg.stride;
  ctx.seeds["perturbation"] = ctx.cfg.seed;
  const auto rep = analysis::stability_experiment(params, ctx.cfg.delta, ctx.cfg.seed, ctx.rho,
                                                  ctx.kind, o);
  CsvWriter csv(ctx.file("stability.csv"), {"t", "d_orig", "d_matched"});
  for (std::size_t i = 0; i < rep.t.size(); ++i) csv.row({rep.t[i], rep.d_orig[i], rep.d_matched[i]});
  csv.close();
  const double delta = ctx.cfg.delta;
  if (delta == 0.0) {
    ctx.check_le("zero_perturbation_distance", rep.sup_orig, 1e-8);
  } else {
    ctx.check_le("initial_distance", std::abs(rep.initial_distance - delta) / delta, 1e-9);
    ctx.check_le("matched_distance_over_delta", rep.matched_constant, 20.0);
  }
  ctx.measured["sup_d_orig"] = rep.sup_orig;
  ctx.measured["sup_d_matched"] = rep.sup_matched;
  ctx.measured["C_matched"] = rep.matched_constant;
  ctx.measured["v_star"] = {rep.matched.v.x, rep.matched.v.y};
  ctx.measured["omega_star"] = rep.matched.omega;
}

void cmd_lowerbound(Context& ctx) {
  const auto rec = soliton::build_soliton(resolve_params(ctx), ctx.rho, ctx.kind);
  std::mt19937_64 gen(ctx.cfg.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ctx.seeds["amplitudes"] = ctx.cfg.seed;
  ctx.seeds["perturbations"] = "seed * 1000003 + sample";
  CsvWriter csv(ctx.file("lowerbound.csv"),
                {"sample", "amplitude", "deltaH", "bound", "field_quadratic", "remainder",
                 "identity_error", "pass"});
  int fails = 0;
  double worst_id = 0.0, min_margin = INFINITY;
  const double lo = std::log(ctx.cfg.amp_min), hi = std::log(ctx.cfg.amp_max);
  for (int i = 0; i < ctx.cfg.samples; ++i) {
    const double amp = std::exp(lo + (hi - lo) * u(gen));
    const std::uint64_t seed = ctx.cfg.seed * 1000003ull + static_cast<std::uint64_t>(i);
    const auto p = analysis::make_field_perturbation(ctx.grid, amp, seed, ctx.cfg.sigma_p);
    const auto r = analysis::lower_bound_check(rec, p, ctx.rho);
    if (!r.pass) ++fails;
    worst_id = std::max(worst_id, r.identity_error);
    min_margin = std::min(min_margin, (r.deltaH - r.bound) / (amp * amp));
    csv.row({double(i), amp, r.deltaH, r.bound, r.field_quadratic, r.remainder, r.identity_error,
             r.pass ? 1.0 : 0.0});
  }
  csv.close();
  ctx.check("lower_bound_all_samples", fails, 0, fails == 0);
  ctx.check_le("identity_relative_error", worst_id, 1e-9);
  ctx.measured["min_margin_over_amp2"] = min_margin;
}

void cmd_jacobian(Context& ctx) {
  CsvWriter csv(ctx.file("jacobian.csv"), kJacobianColumns);
  double min_det = INFINITY, zmax = 0.0, fdmax = 0.0, cs_worst = -INFINITY;
  for (double v : ctx.cfg.sweep_v) {
    const auto ax = analysis::axis_integrals(v, ctx.rho);
    cs_worst = std::max(cs_worst, ax.I2 * ax.I2 / (ax.I0 * ax.I4) - 1.0);
    for (double w : ctx.cfg.sweep_omega) {
      const auto t = analysis::jacobian_entries(v, w, ctx.rho, ctx.kind);
      csv.row(jacobian_row(t));
      min_det = std::min(min_det, t.det);
      zmax = std::max(zmax, t.structural_zero_max);
      fdmax = std::max(fdmax, analysis::jacobian_vs_finite_difference({v, 0.0}, w, ctx.rho, ctx.kind,
                                                                       ctx.cfg.fd_h));
    }
  }
  csv.close();
  ctx.check("determinant_positive", min_det, 0.0, min_det > 0.0);
  ctx.check_le("structural_zeros", zmax, 1e-10);
  ctx.check_le("finite_difference", fdmax, 1e-4);
  ctx.check("cauchy_schwarz", cs_worst, 0.0, cs_worst <= 1e-12);
  ctx.measured["min_det"] = min_det;
}

void cmd_gradcheck(Context& ctx) {
  const auto rec = soliton::build_soliton(resolve_params(ctx), ctx.rho, ctx.kind);
  const std::uint64_t seed = ctx.cfg.seed;
  ctx.seeds["base"] = seed;
  ctx.seeds["directions"] = "seed * 1000003 + 1 + direction";
  ctx.seeds["convexity"] = seed;
  const auto bp = analysis::make_field_perturbation(ctx.grid, 0.3, seed, ctx.cfg.sigma_p);
  auto base = dynamics::make_reduced_state(rec);
  base.A += bp.dA;
  base.Pi += bp.dPi;
  CsvWriter csv(ctx.file("gradcheck.csv"), {"direction", "h", "analytic", "fd", "rel_error"});
  double worst = 0.0;
  for (int d = 0; d < ctx.cfg.directions; ++d) {
    const auto p = analysis::make_field_perturbation(
        ctx.grid, 1.0, seed * 1000003ull + 1 + static_cast<std::uint64_t>(d), ctx.cfg.sigma_p);
    const auto g = analysis::gradient_check(base, p.dA, p.dPi, ctx.rho, ctx.kind);
    worst = std::max(worst, g.rel_error);
    csv.row({double(d), g.h, g.analytic, g.fd, g.rel_error});
  }
  csv.close();
  ctx.check_le("gradient_relative_error", worst, 1e-6);
  const auto cv = analysis::convexity_check(ctx.kind.m, 10000, seed);
  ctx.check("relativistic_convexity", cv.violations, 0, cv.violations == 0);
  ctx.measured["convexity_min_over_dp2"] = cv.min_value;
}

void cmd_atlas(Context& ctx) {
  CsvWriter csv(ctx.file("atlas.csv"), kAtlasColumns);
  double min_det = INFINITY;
  for (double v : ctx.cfg.sweep_v)
    for (double w : ctx.cfg.sweep_omega) {
      const auto rec = soliton::build_soliton({{v, 0.0}, w}, ctx.rho, ctx.kind);
      const auto row = atlas_row(rec, ctx);
      min_det = std::min(min_det, row.back());
      csv.row(row);
    }
  csv.close();
  ctx.check("determinant_positive", min_det, 0.0, min_det > 0.0);
}

json params_json(const ExperimentConfig& c) {
  json p = json::object();
  std::istringstream in(c.canonical());
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    const std::string k = line.substr(0, eq), v = line.substr(eq + 3);
    double x;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec == std::errc() && r.ptr == v.data() + v.size())
      p[k] = x;
    else
      p[k] = v;
  }
  return p;
}

void require_finite(const json& j) {
  if (j.is_number_float() && !std::isfinite(j.get<double>()))
    throw NonFiniteError("non-finite value in report");
  if (j.is_structured())
    for (const auto& x : j) require_finite(x);
}

std::string iso_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s = {"soliton",    "simulate", "simulate-lab", "stability",
                                             "lowerbound", "jacobian", "gradcheck",    "atlas"};
  return s;
}

int run(const std::string& subcommand, ExperimentConfig cfg, const RunOptions& opt) {
  const std::string start = iso_now();
  const auto t0 = std::chrono::steady_clock::now();
  if (opt.seed) cfg.seed = *opt.seed;
  const auto errors = validate(cfg);
  if (!errors.empty()) {
    for (const auto& e : errors) std::cerr << "config error: " << e << "\n";
    return 2;
  }
  kernels::configure_threads();

  try {
    fs::create_directories(opt.out_dir);
    auto grid = make_grid(cfg.L, cfg.N);
    Context ctx{cfg,
                grid,
                make_charge_density(cfg.shape, cfg.sigma, cfg.amplitude, grid),
                make_kind(cfg),
                dynamics::parse_scheme(cfg.scheme),
                cfg.effective_dt(),
                fs::path(opt.out_dir),
                opt.quiet,
                {},
                json::object(),
                json::object(),
                {}};
    ctx.seeds["experiment"] = cfg.seed;

    if (subcommand == "soliton") cmd_soliton(ctx);
    else if (subcommand == "simulate") cmd_simulate(ctx);
    else if (subcommand == "simulate-lab") cmd_simulate_lab(ctx);
    else if (subcommand == "stability") cmd_stability(ctx);
    else if (subcommand == "lowerbound") cmd_lowerbound(ctx);
    else if (subcommand == "jacobian") cmd_jacobian(ctx);
    else if (subcommand == "gradcheck") cmd_gradcheck(ctx);
    else if (subcommand == "atlas") cmd_atlas(ctx);
    else {
      std::cerr << "unknown subcommand '" << subcommand << "'\n";
      return 2;
    }

    bool all = true;
    json checks = json::object();
    for (const auto& c : ctx.checks) {
      checks[c.name] = {{"pass", c.pass}, {"value", c.value}, {"tol", c.tol}};
      all = all && c.pass;
      ctx.log((c.pass ? "PASS " : "FAIL ") + c.name + " value=" + format_number(c.value) +
              " tol=" + format_number(c.tol));
    }
    json report = {{"experiment", subcommand},
                   {"tag", cfg.tag},
                   {"params", params_json(cfg)},
                   {"seeds", ctx.seeds},
                   {"checks", checks},
                   {"measured", ctx.measured},
                   {"pass", all}};
    require_finite(report);
    write_text(ctx.file("report.json"), report.dump(2) + "\n");

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json manifest = {{"config_hash", sha256_hex(cfg.canonical())},
                     {"code_version", MLSIM_VERSION},
                     {"subcommand", subcommand},
                     {"start_time", start},
                     {"end_time", iso_now()},
                     {"runtime_seconds", secs},
                     {"threads", kernels::thread_count()},
                     {"outputs", ctx.outputs}};
    write_text((ctx.out / "manifest.json").string(), manifest.dump(2) + "\n");
    if (!all) {
      for (const auto& c : ctx.checks)
        if (!c.pass) std::cerr << "check failed: " << c.name << "\n";
      return 1;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NonFiniteError& e) {
    std::cerr << "check failed: finite_output: " << e.what() << "\n";
    return 1;
  } catch (const ConvergenceError& e) {
    std::cerr << "check failed: newton_convergence: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mlsim::app
