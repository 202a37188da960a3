/// @file runner.hpp
/// @brief Subcommand dispatch for the mlsim tool.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mlsim/config.hpp"

namespace mlsim::app {

struct RunOptions {
  std::string out_dir = ".";
  bool quiet = false;
  std::optional<std::uint64_t> seed;  // overrides experiment.seed
};

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double tol = 0.0;
};

const std::vector<std::string>& subcommands();

// Exit status: 0 when every check passes, 1 when a numerical check fails
// (or a non-finite value would be written), 2 on configuration errors.
int run(const std::string& subcommand, ExperimentConfig config, const RunOptions& opt);

}  // namespace mlsim::app
