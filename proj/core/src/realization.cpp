#include "weylflow/realization.hpp"

#include <stdexcept>
#include <string>

#include "weylflow/errors.hpp"
#include "weylflow/series_io.hpp"

namespace weylflow {

namespace {

void check_input_series(const GradedSeries& s, std::size_t n, const std::string& what) {
  if (s.n() != n) throw DimensionMismatch(what + " has dimension " + std::to_string(s.n()));
  if (!s.is_p_only()) throw std::invalid_argument(what + " must not depend on k");
  if (!s.is_real()) throw std::invalid_argument(what + " must have real coefficients");
}

}  // namespace

Realization::Realization(std::size_t n, std::vector<int> metric, std::vector<std::vector<GradedSeries>> phi,
                         std::vector<GradedSeries> chi)
    : n_(n), metric_(std::move(metric)), phi_(std::move(phi)), chi_(std::move(chi)) {
  if (n == 0 || n > kMaxDimension) throw std::invalid_argument("realization dimension out of range");
  if (metric_.size() != n) throw DimensionMismatch("metric must have n entries");
  for (int m : metric_) {
    if (m != 1 && m != -1) throw std::invalid_argument("metric entries must be +1 or -1");
  }
  if (phi_.size() != n) throw DimensionMismatch("phi must be n x n");
  for (std::size_t a = 0; a < n; ++a) {
    if (phi_[a].size() != n) throw DimensionMismatch("phi must be n x n");
    for (std::size_t b = 0; b < n; ++b) {
      check_input_series(phi_[a][b], n, "phi_" + std::to_string(a) + std::to_string(b));
    }
  }
  if (chi_.empty()) chi_.assign(n, GradedSeries(n));
  if (chi_.size() != n) throw DimensionMismatch("chi must have n entries");
  for (std::size_t a = 0; a < n; ++a) check_input_series(chi_[a], n, "chi_" + std::to_string(a));

  chi_source_ = GradedSeries(n);
  for (std::size_t mu = 0; mu < n; ++mu) {
    GradedSeries f(n);
    for (std::size_t alpha = 0; alpha < n; ++alpha) f += GradedSeries::k_var(n, alpha) * phi_[mu][alpha];
    field_.push_back(std::move(f));
    chi_source_ += GradedSeries::k_var(n, mu) * chi_[mu];
  }
}

Realization Realization::from_phi(std::vector<std::vector<GradedSeries>> phi) {
  std::size_t n = phi.size();
  return Realization(n, std::vector<int>(n, 1), std::move(phi), {});
}

bool Realization::is_polynomial() const {
  for (const auto& row : phi_) {
    for (const auto& s : row) {
      if (s.pmax()) return false;
    }
  }
  for (const auto& s : chi_) {
    if (s.pmax()) return false;
  }
  return true;
}

bool Realization::chi_is_zero() const { return chi_source_.is_zero(); }

Realization Realization::negated() const { return scaled(Rational(-1)); }

Realization Realization::scaled(const Rational& c) const {
  auto phi = phi_;
  auto chi = chi_;
  for (auto& row : phi) {
    for (auto& s : row) s *= ExactScalar(c);
  }
  for (auto& s : chi) s *= ExactScalar(c);
  return Realization(n_, metric_, std::move(phi), std::move(chi));
}

Realization Realization::with_metric(std::vector<int> metric) const {
  return Realization(n_, std::move(metric), phi_, chi_);
}

LinearRealization::LinearRealization(std::vector<std::vector<Rational>> A) : A_(std::move(A)) {
  if (A_.empty() || A_.size() > kMaxDimension) throw std::invalid_argument("matrix dimension out of range");
  for (const auto& row : A_) {
    if (row.size() != A_.size()) throw DimensionMismatch("matrix must be square");
  }
}

Realization LinearRealization::to_realization() const {
  std::size_t n = A_.size();
  std::vector<std::vector<GradedSeries>> phi(n, std::vector<GradedSeries>(n, GradedSeries(n)));
  for (std::size_t mu = 0; mu < n; ++mu) {
    for (std::size_t beta = 0; beta < n; ++beta) {
      phi[mu][0] += GradedSeries::p_var(n, beta) * ExactScalar(A_[mu][beta]);
    }
  }
  return Realization::from_phi(std::move(phi));
}

nlohmann::ordered_json to_json(const FlowResult& fr) {
  nlohmann::ordered_json j;
  j["kmax"] = fr.kmax;
  j["J"] = nlohmann::ordered_json::array();
  for (const auto& s : fr.J) j["J"].push_back(to_json(s));
  j["phi"] = nlohmann::ordered_json::array();
  for (const auto& s : fr.phi) j["phi"].push_back(to_json(s));
  j["h"] = to_json(fr.h);
  return j;
}

FlowResult flow_result_from_json(const nlohmann::ordered_json& j) {
  FlowResult fr;
  fr.kmax = j.at("kmax").get<int>();
  for (const auto& s : j.at("J")) fr.J.push_back(series_from_json(s));
  for (const auto& s : j.at("phi")) fr.phi.push_back(series_from_json(s));
  fr.h = series_from_json(j.at("h"));
  return fr;
}

bool operator==(const FlowResult& a, const FlowResult& b) {
  return a.kmax == b.kmax && a.J == b.J && a.phi == b.phi && a.h == b.h;
}

}  // namespace weylflow
