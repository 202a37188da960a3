/// @file config.hpp
/// @brief Experiment configuration: INI-style "section / key = value" text.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mlsim/vec2.hpp"

namespace mlsim::app {

struct ExperimentConfig {
  // [grid]
  double L = 32.0;
  int N = 128;
  // [rho]
  std::string shape = "laplacian-gaussian";
  double sigma = 1.0;
  double amplitude = 1.0;
  // [particle]
  std::string kind = "nonrelativistic";
  double m = 1.0;
  double I = 1.0;
  // [soliton] or [momenta]
  Vec2 v;
  double omega = 0.0;
  bool has_momenta = false;
  Vec2 P;
  double M = 0.0;
  // [integrator]
  std::string scheme = "rk4";
  std::optional<double> dt;  // default 0.1 dx
  double T = 10.0;
  int stride = 10;
  // [experiment]
  std::string tag = "default";
  std::uint64_t seed = 0;
  // [perturbation]
  double delta = 1e-2;
  int samples = 1000;
  double amp_min = 1e-3;
  double amp_max = 1.0;
  double sigma_p = 0.5;
  int directions = 20;
  // [sweep]
  std::vector<double> sweep_v = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<double> sweep_omega = {0.0, 1.0, 5.0};
  double fd_h = 1e-4;

  double effective_dt() const { return dt ? *dt : 0.1 * L / N; }
  // Sorted "section.key = value" lines of every setting; input to the config hash.
  std::string canonical() const;
};

// Parses the text, rejecting unknown keys and malformed values. All problems are
// collected and reported in one ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Precondition checks that need no heavy computation. Each entry starts with
// the offending field path.
std::vector<std::string> validate(const ExperimentConfig& c);

std::string sha256_hex(const std::string& data);

}  // namespace mlsim::app
