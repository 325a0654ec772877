#pragma once

#include <cstddef>
#include <vector>

#include <nlohmann/json.hpp>

#include "weylflow/graded_series.hpp"
#include "weylflow/scalar.hpp"

namespace weylflow {

/// Input of the normal-ordering problem: the exponent
///   i k_beta x^alpha phi_{alpha beta}(p) + i k_alpha chi_alpha(p)
/// in n dimensions with diagonal metric eta = diag(metric).
///
/// phi and chi are real series in p only. The metric only enters the
/// commutator [p_mu, x_nu] = -i eta_{mu nu} used by the oracle.
class Realization {
 public:
  /// Throws std::invalid_argument / DimensionMismatch when an invariant fails.
  Realization(std::size_t n, std::vector<int> metric, std::vector<std::vector<GradedSeries>> phi,
              std::vector<GradedSeries> chi);

  /// Euclidean metric, chi = 0.
  static Realization from_phi(std::vector<std::vector<GradedSeries>> phi);

  std::size_t n() const noexcept { return n_; }
  const std::vector<int>& metric() const noexcept { return metric_; }
  /// phi_{alpha beta}
  const GradedSeries& phi(std::size_t alpha, std::size_t beta) const { return phi_.at(alpha).at(beta); }
  const GradedSeries& chi(std::size_t alpha) const { return chi_.at(alpha); }

  /// sum_alpha k_alpha phi_{mu alpha}(p): the coefficient of d/dp_mu in O.
  const GradedSeries& vector_field(std::size_t mu) const { return field_.at(mu); }
  /// sum_alpha k_alpha chi_alpha(p).
  const GradedSeries& chi_source() const noexcept { return chi_source_; }

  /// No entry carries a p-cap.
  bool is_polynomial() const;
  bool chi_is_zero() const;

  /// phi -> -phi, chi -> -chi: generates the inverse flow.
  Realization negated() const;
  /// phi -> c*phi, chi -> c*chi.
  Realization scaled(const Rational& c) const;
  Realization with_metric(std::vector<int> metric) const;

 private:
  std::size_t n_;
  std::vector<int> metric_;
  std::vector<std::vector<GradedSeries>> phi_;
  std::vector<GradedSeries> chi_;
  std::vector<GradedSeries> field_;
  GradedSeries chi_source_;
};

/// phi_{mu alpha}(p) linear in p, encoded by a constant matrix A through a
/// single deformation parameter: k_alpha phi_{mu alpha}(p) = k_0 A_{mu beta} p_beta.
class LinearRealization {
 public:
  explicit LinearRealization(std::vector<std::vector<Rational>> A);

  std::size_t n() const noexcept { return A_.size(); }
  const std::vector<std::vector<Rational>>& matrix() const noexcept { return A_; }

  /// phi_{mu 0} = A_{mu beta} p_beta, all other columns zero, Euclidean metric.
  Realization to_realization() const;

 private:
  std::vector<std::vector<Rational>> A_;
};

/// Normal-ordering data of exp(i k x phi + i k chi) = :exp(i x^a phi_a(k,p)): exp(i h(k,p)).
struct FlowResult {
  std::vector<GradedSeries> J;
  std::vector<GradedSeries> phi;
  GradedSeries h;
  int kmax = 0;
};

/// {"kmax":int, "J":[series...], "phi":[series...], "h":series}
nlohmann::ordered_json to_json(const FlowResult& fr);
FlowResult flow_result_from_json(const nlohmann::ordered_json& j);

bool operator==(const FlowResult& a, const FlowResult& b);

}  // namespace weylflow
