#include "weylflow/applications.hpp"

#include <cmath>
#include <stdexcept>

#include "weylflow/errors.hpp"
#include "weylflow/flows.hpp"
#include "weylflow/oracle.hpp"
#include "weylflow/series_io.hpp"

namespace weylflow {

namespace {

nlohmann::ordered_json series_list(const std::vector<GradedSeries>& v) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& s : v) j.push_back(to_json(s));
  return j;
}

NamedRealization make_named(std::string name, std::string description, RealizationSpec spec) {
  Realization r = build_realization(spec);
  return NamedRealization{std::move(name), std::move(description), std::move(spec), std::move(r), {}, {}};
}

// Taylor coefficient of k^m in cos k (even m) or sin k (odd m).
Rational taylor_trig(unsigned m, bool cosine) {
  if ((m % 2 == 0) != cosine) return 0;
  unsigned half = cosine ? m / 2 : (m - 1) / 2;
  Rational c = 1 / factorial(m);
  return half % 2 == 0 ? c : Rational(-c);
}

NamedRealization linear_scalar() {
  RealizationSpec spec;
  spec.dimension = 1;
  spec.phi = {{"p_0"}};
  spec.kmax = 6;
  auto nr = make_named("linear-scalar", "phi(p) = p: linear realization with A = (1), J = e^k p", spec);
  nr.closed_form_J = [](std::span<const double> k, std::span<const double> p) {
    return std::vector<double>{std::exp(k[0]) * p[0]};
  };
  nr.closed_form_series = [](int kmax) {
    GradedSeries J(1, kmax);
    for (int m = 0; m <= kmax; ++m) {
      J.add_term(MultiIndex{static_cast<unsigned>(m)}, MultiIndex{1}, ExactScalar(1 / factorial(m)));
    }
    return std::vector<GradedSeries>{J};
  };
  return nr;
}

NamedRealization linear_nilpotent() {
  RealizationSpec spec;
  spec.dimension = 2;
  spec.phi = {{"p_1", "0"}, {"0", "0"}};
  spec.kmax = 6;
  auto nr = make_named("linear-nilpotent",
                       "phi_00 = p_1: nilpotent A = [[0,1],[0,0]], the series terminates: J = (p_0 + k_0 p_1, p_1)",
                       spec);
  nr.closed_form_J = [](std::span<const double> k, std::span<const double> p) {
    return std::vector<double>{p[0] + k[0] * p[1], p[1]};
  };
  nr.closed_form_series = [](int kmax) {
    std::vector<GradedSeries> J = identity_flow(2, kmax);
    J[0].add_term(MultiIndex{1, 0}, MultiIndex{0, 1}, ExactScalar(1L));
    return J;
  };
  return nr;
}

NamedRealization linear_rotation() {
  RealizationSpec spec;
  spec.dimension = 2;
  spec.phi = {{"-p_1", "0"}, {"p_0", "0"}};
  spec.kmax = 6;
  auto nr = make_named("linear-rotation",
                       "phi_00 = -p_1, phi_10 = p_0: A = [[0,-1],[1,0]], J is a rotation of p by angle k_0", spec);
  nr.closed_form_J = [](std::span<const double> k, std::span<const double> p) {
    double c = std::cos(k[0]);
    double s = std::sin(k[0]);
    return std::vector<double>{c * p[0] - s * p[1], s * p[0] + c * p[1]};
  };
  nr.closed_form_series = [](int kmax) {
    std::vector<GradedSeries> J(2, GradedSeries(2, kmax));
    for (int m = 0; m <= kmax; ++m) {
      MultiIndex k{static_cast<unsigned>(m), 0};
      Rational c = taylor_trig(static_cast<unsigned>(m), true);
      Rational s = taylor_trig(static_cast<unsigned>(m), false);
      J[0].add_term(k, MultiIndex{1, 0}, ExactScalar(c));
      J[0].add_term(k, MultiIndex{0, 1}, ExactScalar(Rational(-s)));
      J[1].add_term(k, MultiIndex{1, 0}, ExactScalar(s));
      J[1].add_term(k, MultiIndex{0, 1}, ExactScalar(c));
    }
    return J;
  };
  return nr;
}

NamedRealization log_phase() {
  RealizationSpec spec;
  spec.dimension = 1;
  spec.phi = {{"p_0^2"}};
  spec.chi = {"p_0"};
  spec.kmax = 6;
  auto base = power_law_family(2, 6);
  auto nr = make_named("log-phase", "phi(p) = p^2, chi(p) = p: J = p/(1 - k p), h = -log(1 - k p)", spec);
  nr.closed_form_J = base.closed_form_J;
  nr.closed_form_series = base.closed_form_series;
  return nr;
}

NamedRealization lorentzian_mixed() {
  RealizationSpec spec;
  spec.dimension = 2;
  spec.metric = {-1, 1};
  spec.phi = {{"1 + p_0", "p_1"}, {"0", "1/2*p_0*p_1"}};
  spec.chi = {"p_1", "1"};
  spec.kmax = 4;
  return make_named("lorentzian-mixed",
                    "illustrative two-dimensional realization with metric diag(-1, 1) and nonzero chi "
                    "(constructed for testing, not taken from the literature; no closed form)",
                    spec);
}

}  // namespace

PlaneWaveImage evaluate_plane_wave(const FlowResult& fr, std::span<const double> k, std::span<const double> q) {
  const std::size_t n = fr.J.size();
  if (k.size() != n || q.size() != n) throw DimensionMismatch("k and q must have n components");
  PlaneWaveImage image;
  image.kmax_used = fr.kmax;
  for (const auto& J : fr.J) image.Jq.push_back(series_eval(J, k, q).real());
  image.hq = series_eval(fr.h, k, q).real();
  return image;
}

PlaneWaveImage act_on_plane_wave(const Realization& r, std::span<const double> k, std::span<const double> q,
                                 int kmax) {
  if (k.size() != r.n() || q.size() != r.n()) throw DimensionMismatch("k and q must have n components");
  return evaluate_plane_wave(compute_flow(r, kmax), k, q);
}

nlohmann::ordered_json to_json(const PlaneWaveImage& image, std::span<const double> k, std::span<const double> q) {
  nlohmann::ordered_json j;
  j["k"] = std::vector<double>(k.begin(), k.end());
  j["q"] = std::vector<double>(q.begin(), q.end());
  j["J"] = image.Jq;
  j["h"] = image.hq;
  j["kmax"] = image.kmax_used;
  return j;
}

NamedRealization power_law_family(unsigned l, int kmax) {
  if (l < 2) throw std::invalid_argument("power_law_family needs l >= 2");
  RealizationSpec spec;
  spec.dimension = 1;
  spec.phi = {{"p_0^" + std::to_string(l)}};
  spec.kmax = kmax;
  const std::string m_str = std::to_string(l - 1);
  std::string closed = l == 2 ? "J = p/(1 - k p)" : "J = p (1 - " + m_str + " k p^" + m_str + ")^(-1/" + m_str + ")";
  auto nr = make_named("power-law-" + std::to_string(l), "phi(p) = p^" + std::to_string(l) + ": " + closed, spec);
  const double m = static_cast<double>(l - 1);
  nr.closed_form_J = [m](std::span<const double> k, std::span<const double> p) {
    return std::vector<double>{p[0] * std::pow(1.0 - m * k[0] * std::pow(p[0], m), -1.0 / m)};
  };
  nr.closed_form_series = [l](int order) {
    // (1 + z)^a = sum_r C(a, r) z^r with a = -1/(l-1), z = -(l-1) k p^(l-1).
    const Rational a(-1, static_cast<long>(l - 1));
    const Rational z_coeff(-static_cast<long>(l - 1));
    GradedSeries J(1, order);
    Rational binom(1);
    Rational z_power(1);
    for (int r = 0; r <= order; ++r) {
      J.add_term(MultiIndex{static_cast<unsigned>(r)}, MultiIndex{1 + static_cast<unsigned>(r) * (l - 1)},
                 ExactScalar(Rational(binom * z_power)));
      binom = binom * (a - r) / (r + 1);
      z_power *= z_coeff;
    }
    return std::vector<GradedSeries>{J};
  };
  return nr;
}

const std::vector<NamedRealization>& builtin_realizations() {
  static const std::vector<NamedRealization> all = [] {
    std::vector<NamedRealization> v;
    for (unsigned l : {2U, 3U, 4U}) v.push_back(power_law_family(l, 6));
    v.push_back(linear_scalar());
    v.push_back(linear_nilpotent());
    v.push_back(linear_rotation());
    v.push_back(log_phase());
    v.push_back(lorentzian_mixed());
    return v;
  }();
  return all;
}

const NamedRealization* find_builtin(std::string_view name) {
  for (const auto& nr : builtin_realizations()) {
    if (nr.name == name) return &nr;
  }
  return nullptr;
}

CompositionReport composition_demo(const Realization& r1, const Realization& r2, int kmax) {
  if (r1.n() != r2.n() || r1.metric() != r2.metric()) {
    throw DimensionMismatch("composition needs realizations of the same dimension and metric");
  }
  if (!r1.chi_is_zero() || !r2.chi_is_zero()) throw std::invalid_argument("composition requires chi = 0");

  CompositionReport report;
  report.kmax = kmax;
  report.J1 = compute_J(r1, kmax);
  report.J2 = compute_J(r2, kmax);
  report.J3 = compose_flows(report.J1, report.J2);
  report.generator = recover_generator(report.J3);
  report.higher_corrections = has_higher_corrections(report.generator);

  const AlgebraSignature sig = signature_of(r1);
  WeylElement lhs = weyl_mul(weyl_exp(exponent_of(r1), kmax), weyl_exp(exponent_of(r2), kmax));
  FlowResult composed;
  composed.kmax = kmax;
  composed.J = report.J3;
  for (std::size_t mu = 0; mu < r1.n(); ++mu) {
    composed.phi.push_back(report.J3[mu] - GradedSeries::p_var(r1.n(), mu, kmax));
  }
  composed.h = GradedSeries(r1.n(), kmax);
  WeylElement diff = lhs - normal_order_of_flow(composed, sig);
  report.oracle_equal = diff.is_zero();
  if (!report.oracle_equal) report.discrepancy = std::move(diff);
  return report;
}

nlohmann::ordered_json to_json(const CompositionReport& report) {
  nlohmann::ordered_json j;
  j["kmax"] = report.kmax;
  j["J1"] = series_list(report.J1);
  j["J2"] = series_list(report.J2);
  j["J3"] = series_list(report.J3);
  j["generator"] = series_list(report.generator);
  j["higher_corrections"] = report.higher_corrections;
  j["oracle_equal"] = report.oracle_equal;
  if (report.discrepancy) j["discrepancy"] = to_json(*report.discrepancy);
  return j;
}

}  // namespace weylflow
