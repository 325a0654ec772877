#pragma once

#include <string>
#include <vector>

#include "weylflow/realization_spec.hpp"

namespace weylflow::cli {

/// Reads a realization spec written in YAML:
///
///   dimension: 2
///   metric: [-1, 1]        # optional, defaults to all +1
///   kmax: 4                # optional
///   pmax: 6                # optional p-degree cap
///   phi:                   # phi[alpha][beta], one expression per entry
///     - ["p_0^2", "0"]
///     - ["0", "p_1"]
///   chi: ["p_0", "0"]      # optional, defaults to all zero
///
/// Throws std::invalid_argument on malformed documents.
RealizationSpec parse_spec_file(const std::string& text);
RealizationSpec load_spec_file(const std::string& path);

std::string to_yaml(const RealizationSpec& spec);

}  // namespace weylflow::cli
