#include "weylflow/weyl_algebra.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "weylflow/errors.hpp"

namespace weylflow {

namespace {

void require_same_signature(const WeylElement& a, const WeylElement& b) {
  if (!(a.signature() == b.signature())) throw DimensionMismatch("Weyl elements have different signatures");
}

// One factor of the reordering sum: coefficient of x^{c-j} p^{b-j} in p^b x^c (single coordinate).
struct Contraction {
  unsigned j;
  ExactScalar coefficient;
};

std::vector<Contraction> contractions(unsigned b, unsigned c, int eta) {
  std::vector<Contraction> out;
  const ExactScalar minus_i_eta(Rational(0), Rational(-eta));
  ExactScalar phase(1L);
  for (unsigned j = 0; j <= std::min(b, c); ++j) {
    out.push_back({j, phase * ExactScalar(binomial(b, j) * binomial(c, j) * factorial(j))});
    phase *= minus_i_eta;
  }
  return out;
}

template <bool kReorder>
WeylElement multiply(const WeylElement& a, const WeylElement& b) {
  require_same_signature(a, b);
  const std::size_t n = a.n();
  const int kmax = std::min(a.kmax(), b.kmax());
  WeylElement r(a.signature(), kmax);

  std::vector<std::vector<Contraction>> per_coord(n);
  std::vector<std::size_t> pos(n);
  for (const auto& [ka, ca] : a.terms()) {
    const long da = ka.k.degree();
    for (const auto& [kb, cb] : b.terms()) {
      if (da + static_cast<long>(kb.k.degree()) > kmax) continue;
      const MultiIndex k = ka.k + kb.k;
      const ExactScalar c = ca * cb;
      bool trivial = !kReorder || ka.p.is_zero() || kb.x.is_zero();
      if (trivial) {
        r.add_term(ka.x + kb.x, ka.p + kb.p, k, c);
        continue;
      }
      for (std::size_t mu = 0; mu < n; ++mu) {
        per_coord[mu] = contractions(ka.p[mu], kb.x[mu], a.signature().eta(mu));
        pos[mu] = 0;
      }
      // Odometer over the contraction counts j_mu.
      while (true) {
        ExactScalar coeff = c;
        MultiIndex x = ka.x;
        MultiIndex p = kb.p;
        for (std::size_t mu = 0; mu < n; ++mu) {
          const auto& term = per_coord[mu][pos[mu]];
          coeff *= term.coefficient;
          x.set(mu, x[mu] + kb.x[mu] - term.j);
          p.set(mu, p[mu] + ka.p[mu] - term.j);
        }
        r.add_term(x, p, k, coeff);
        std::size_t mu = 0;
        while (mu < n && ++pos[mu] == per_coord[mu].size()) pos[mu++] = 0;
        if (mu == n) break;
      }
    }
  }
  return r;
}

}  // namespace

AlgebraSignature::AlgebraSignature(std::size_t n, std::vector<int> metric) : metric_(std::move(metric)) {
  if (n == 0 || n > kMaxDimension) throw std::invalid_argument("signature dimension out of range");
  if (metric_.size() != n) throw DimensionMismatch("metric must have n entries");
  for (int m : metric_) {
    if (m != 1 && m != -1) throw std::invalid_argument("metric entries must be +1 or -1");
  }
}

AlgebraSignature AlgebraSignature::euclidean(std::size_t n) { return AlgebraSignature(n, std::vector<int>(n, 1)); }

WeylElement::WeylElement(AlgebraSignature sig, int kmax) : sig_(std::move(sig)), kmax_(kmax) {
  if (kmax < 0) throw std::invalid_argument("kmax must be non-negative");
}

WeylElement WeylElement::scalar(const AlgebraSignature& sig, const ExactScalar& c, int kmax) {
  WeylElement e(sig, kmax);
  MultiIndex zero(sig.n());
  e.add_term(zero, zero, zero, c);
  return e;
}

WeylElement WeylElement::x(const AlgebraSignature& sig, std::size_t mu, int kmax) {
  WeylElement e(sig, kmax);
  MultiIndex zero(sig.n());
  e.add_term(MultiIndex::unit(sig.n(), mu), zero, zero, ExactScalar(1L));
  return e;
}

WeylElement WeylElement::p(const AlgebraSignature& sig, std::size_t mu, int kmax) {
  WeylElement e(sig, kmax);
  MultiIndex zero(sig.n());
  e.add_term(zero, MultiIndex::unit(sig.n(), mu), zero, ExactScalar(1L));
  return e;
}

WeylElement WeylElement::from_series(const AlgebraSignature& sig, const GradedSeries& s) {
  if (s.n() != sig.n()) throw DimensionMismatch("series and signature dimensions differ");
  if (s.pmax()) throw std::invalid_argument("the Weyl oracle only handles polynomial series");
  WeylElement e(sig, s.kmax());
  MultiIndex zero(sig.n());
  for (const auto& [key, c] : s.terms()) e.add_term(zero, key.p, key.k, c);
  return e;
}

std::optional<int> WeylElement::min_k_degree() const {
  std::optional<int> d;
  for (const auto& [key, c] : terms_) {
    int kd = static_cast<int>(key.k.degree());
    if (!d || kd < *d) d = kd;
  }
  return d;
}

void WeylElement::add_term(const MultiIndex& x, const MultiIndex& p, const MultiIndex& k, const ExactScalar& c) {
  const std::size_t n = sig_.n();
  if (x.size() != n || p.size() != n || k.size() != n) throw DimensionMismatch("monomial dimension mismatch");
  if (c.is_zero() || static_cast<long>(k.degree()) > kmax_) return;
  auto [it, inserted] = terms_.try_emplace(WeylKey{x, p, k}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

WeylElement WeylElement::truncated(int kmax) const {
  WeylElement r(sig_, std::min(kmax, kmax_));
  for (const auto& [key, c] : terms_) r.add_term(key.x, key.p, key.k, c);
  return r;
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
  require_same_signature(*this, o);
  if (o.kmax_ < kmax_) *this = truncated(o.kmax_);
  for (const auto& [key, c] : o.terms_) add_term(key.x, key.p, key.k, c);
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) { return *this += -o; }

WeylElement& WeylElement::operator*=(const ExactScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, coeff] : terms_) coeff *= c;
  return *this;
}

WeylElement WeylElement::operator-() const {
  WeylElement r(*this);
  for (auto& [key, c] : r.terms_) c = -c;
  return r;
}

WeylElement weyl_mul(const WeylElement& a, const WeylElement& b) { return multiply<true>(a, b); }

WeylElement normal_ordered_product(const WeylElement& a, const WeylElement& b) { return multiply<false>(a, b); }

WeylElement commutator(const WeylElement& a, const WeylElement& b) { return weyl_mul(a, b) - weyl_mul(b, a); }

namespace {

template <typename Product>
WeylElement exponential(const WeylElement& e, int kmax, Product product) {
  auto d = e.min_k_degree();
  if (d && *d < 1) throw std::invalid_argument("exponent has terms of k-degree 0; the series would not truncate");
  const int order = std::min(kmax, e.kmax());
  WeylElement term = WeylElement::scalar(e.signature(), ExactScalar(1L), order);
  WeylElement sum = term;
  for (int m = 1; m <= order; ++m) {
    term = product(term, e.truncated(order));
    if (term.is_zero()) break;
    term *= ExactScalar(Rational(1, m));
    sum += term;
  }
  return sum;
}

}  // namespace

WeylElement weyl_exp(const WeylElement& e, int kmax) { return exponential(e, kmax, weyl_mul); }

WeylElement normal_ordered_exp(const WeylElement& e, int kmax) {
  return exponential(e, kmax, normal_ordered_product);
}

WeylElement ad_p_iterate(const WeylElement& e, std::size_t mu, unsigned m) {
  if (mu >= e.n()) throw std::out_of_range("ad_p_iterate: index out of range");
  WeylElement p = WeylElement::p(e.signature(), mu);
  WeylElement r = e;
  for (unsigned i = 0; i < m; ++i) r = commutator(p, r);
  return r;
}

WeylElement set_x_zero(const WeylElement& e) {
  WeylElement r(e.signature(), e.kmax());
  for (const auto& [key, c] : e.terms()) {
    if (key.x.is_zero()) r.add_term(key.x, key.p, key.k, c);
  }
  return r;
}

GradedSeries to_series(const WeylElement& e) {
  GradedSeries s(e.n(), e.kmax());
  for (const auto& [key, c] : e.terms()) {
    if (!key.x.is_zero()) throw std::invalid_argument("to_series: element contains coordinates");
    s.add_term(key.k, key.p, c);
  }
  return s;
}

nlohmann::ordered_json to_json(const WeylElement& e) {
  auto idx = [](const MultiIndex& m) {
    auto ex = m.exponents();
    return nlohmann::ordered_json(std::vector<unsigned>(ex.begin(), ex.end()));
  };
  nlohmann::ordered_json j;
  j["n"] = e.n();
  j["metric"] = e.signature().metric();
  j["kmax"] = e.kmax() == kUnbounded ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(e.kmax());
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& [key, c] : e.terms()) {
    j["terms"].push_back({{"x", idx(key.x)},
                          {"p", idx(key.p)},
                          {"k", idx(key.k)},
                          {"re", rational_to_string(c.re())},
                          {"im", rational_to_string(c.im())}});
  }
  return j;
}

}  // namespace weylflow
