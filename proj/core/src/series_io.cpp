#include "weylflow/series_io.hpp"

#include <stdexcept>

namespace weylflow {

namespace {

nlohmann::ordered_json index_to_json(const MultiIndex& m) {
  auto e = m.exponents();
  return nlohmann::ordered_json(std::vector<unsigned>(e.begin(), e.end()));
}

MultiIndex index_from_json(const nlohmann::ordered_json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw std::invalid_argument("multi-index must be an array of length n");
  MultiIndex m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_number_unsigned()) throw std::invalid_argument("exponents must be non-negative integers");
    m.set(i, j[i].get<unsigned>());
  }
  return m;
}

std::string monomial_string(const char* name, const MultiIndex& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += std::string(name) + "_" + std::to_string(i);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

}  // namespace

nlohmann::ordered_json to_json(const GradedSeries& s) {
  nlohmann::ordered_json j;
  j["n"] = s.n();
  j["kmax"] = s.kmax() == kUnbounded ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(s.kmax());
  if (s.pmax()) j["pmax"] = *s.pmax();
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [key, c] : s.terms()) {
    terms.push_back({{"k", index_to_json(key.k)},
                     {"p", index_to_json(key.p)},
                     {"re", rational_to_string(c.re())},
                     {"im", rational_to_string(c.im())}});
  }
  j["terms"] = std::move(terms);
  return j;
}

GradedSeries series_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("terms")) {
    throw std::invalid_argument("series JSON needs 'n' and 'terms'");
  }
  auto n = j.at("n").get<std::size_t>();
  int kmax = kUnbounded;
  if (j.contains("kmax") && !j.at("kmax").is_null()) kmax = j.at("kmax").get<int>();
  std::optional<int> pmax;
  if (j.contains("pmax") && !j.at("pmax").is_null()) pmax = j.at("pmax").get<int>();
  GradedSeries s(n, kmax, pmax);
  for (const auto& t : j.at("terms")) {
    MultiIndex k = index_from_json(t.at("k"), n);
    MultiIndex p = index_from_json(t.at("p"), n);
    Rational re = parse_rational(t.at("re").get<std::string>());
    Rational im = t.contains("im") ? parse_rational(t.at("im").get<std::string>()) : Rational(0);
    s.add_term(k, p, ExactScalar(re, im));
  }
  return s;
}

std::string to_pretty_string(const GradedSeries& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [key, c] : s.terms()) {
    std::string mono = monomial_string("k", key.k);
    std::string pm = monomial_string("p", key.p);
    if (!mono.empty() && !pm.empty()) mono += "*";
    mono += pm;

    ExactScalar coeff = c;
    bool negative = c.is_real() && sgn(c.re()) < 0;
    if (negative) coeff = -c;
    std::string cs = coeff.to_string();

    std::string term;
    if (mono.empty()) {
      term = cs;
    } else if (coeff == ExactScalar(1L)) {
      term = mono;
    } else {
      term = cs + "*" + mono;
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

}  // namespace weylflow
