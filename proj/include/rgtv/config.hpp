#pragma once

#include <string>

#include "rgtv/pipeline.hpp"

namespace rgtv {

/// Parses `key = value` lines (blank lines and `#` comments allowed) on top of
/// `base`. Recognized keys: sigma, lambda0, mu, lambda_decay, kernel_size,
/// scale_factor, max_outer_iters, convergence_tol, reweight_iters, pd_iters,
/// pd_tol, lambda_nb. Unknown keys and malformed values throw ConfigError.
SolverParams parse_config(const std::string& text, SolverParams base = {});

SolverParams load_config(const std::string& path, SolverParams base = {});

}  // namespace rgtv
