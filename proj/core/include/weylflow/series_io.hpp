#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "weylflow/graded_series.hpp"

namespace weylflow {

/// {"n":int, "kmax":int|null, ["pmax":int,] "terms":[{"k":[..],"p":[..],"re":"a/b","im":"c/d"}, ...]}
/// with terms in canonical order. An unbounded kmax is written as null.
nlohmann::ordered_json to_json(const GradedSeries& s);
/// Inverse of to_json. Throws std::invalid_argument on schema violations.
GradedSeries series_from_json(const nlohmann::ordered_json& j);

/// Human-readable form in canonical order, e.g. "p_0 + k_0*p_0^2 + 3/2*k_0^2*p_0^5".
std::string to_pretty_string(const GradedSeries& s);

}  // namespace weylflow
