#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "weylflow/realization.hpp"
#include "weylflow/realization_spec.hpp"
#include "weylflow/weyl_algebra.hpp"

namespace weylflow {

/// exp(i k x phi + i k chi) |> exp(i q x) = exp(i x J(k,q) + i h(k,q)).
struct PlaneWaveImage {
  std::vector<double> Jq;
  double hq = 0.0;
  int kmax_used = 0;
};

PlaneWaveImage act_on_plane_wave(const Realization& r, std::span<const double> k, std::span<const double> q,
                                 int kmax);
/// Same, reusing already expanded series (for batch evaluation).
PlaneWaveImage evaluate_plane_wave(const FlowResult& fr, std::span<const double> k, std::span<const double> q);

/// One line of batch output: {"k":[..],"q":[..],"J":[..],"h":x,"kmax":m}.
nlohmann::ordered_json to_json(const PlaneWaveImage& image, std::span<const double> k, std::span<const double> q);

/// A realization shipped with the tool, optionally with a known closed form for J.
struct NamedRealization {
  std::string name;
  std::string description;
  RealizationSpec spec;
  Realization realization;
  /// Numeric J(k, p); empty when no closed form is known.
  std::function<std::vector<double>(std::span<const double>, std::span<const double>)> closed_form_J;
  /// Exact Taylor expansion of the closed form to total k-degree kmax.
  std::function<std::vector<GradedSeries>(int)> closed_form_series;
};

/// phi(p) = p^l in one dimension, J(k,p) = p (1 - (l-1) k p^(l-1))^(-1/(l-1)).
/// The Taylor coefficients come from the binomial series in exact arithmetic.
/// Throws std::invalid_argument for l < 2.
NamedRealization power_law_family(unsigned l, int kmax);

/// Every built-in realization, in a fixed order.
const std::vector<NamedRealization>& builtin_realizations();
const NamedRealization* find_builtin(std::string_view name);

struct CompositionReport {
  int kmax = 0;
  std::vector<GradedSeries> J1;
  std::vector<GradedSeries> J2;
  std::vector<GradedSeries> J3;
  std::vector<GradedSeries> generator;
  bool higher_corrections = false;
  bool oracle_equal = false;
  std::optional<WeylElement> discrepancy;
};

/// exp(i x F1) exp(i x F2) = :exp(i x (J3 - p)):, J3 = J1(k, J2(k, p)), plus the
/// graded generator of J3. Both realizations need chi = 0 and the same metric.
CompositionReport composition_demo(const Realization& r1, const Realization& r2, int kmax);

nlohmann::ordered_json to_json(const CompositionReport& report);

}  // namespace weylflow
