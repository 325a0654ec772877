#include "weylflow/graded_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "weylflow/errors.hpp"

namespace weylflow {

namespace {

void require_same_dimension(const GradedSeries& a, const GradedSeries& b) {
  if (a.n() != b.n()) {
    throw DimensionMismatch("series dimensions differ: " + std::to_string(a.n()) + " vs " + std::to_string(b.n()));
  }
}

std::optional<int> min_cap(const std::optional<int>& a, const std::optional<int>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

GradedSeries::GradedSeries(std::size_t n, int kmax, std::optional<int> pmax) : n_(n), kmax_(kmax), pmax_(pmax) {
  if (n > kMaxDimension) throw std::invalid_argument("dimension exceeds kMaxDimension");
  if (kmax < 0) throw std::invalid_argument("kmax must be non-negative");
  if (pmax && *pmax < 0) throw std::invalid_argument("pmax must be non-negative");
}

GradedSeries GradedSeries::constant(std::size_t n, const ExactScalar& c, int kmax) {
  return monomial(n, MultiIndex(n), MultiIndex(n), c, kmax);
}

GradedSeries GradedSeries::p_var(std::size_t n, std::size_t i, int kmax) {
  if (i >= n) throw std::out_of_range("momentum index out of range");
  return monomial(n, MultiIndex(n), MultiIndex::unit(n, i), ExactScalar(1L), kmax);
}

GradedSeries GradedSeries::k_var(std::size_t n, std::size_t i, int kmax) {
  if (i >= n) throw std::out_of_range("parameter index out of range");
  return monomial(n, MultiIndex::unit(n, i), MultiIndex(n), ExactScalar(1L), kmax);
}

GradedSeries GradedSeries::monomial(std::size_t n, const MultiIndex& k, const MultiIndex& p, const ExactScalar& c,
                                    int kmax) {
  GradedSeries s(n, kmax);
  s.add_term(k, p, c);
  return s;
}

bool GradedSeries::admits(const MultiIndex& k, const MultiIndex& p) const {
  if (static_cast<long>(k.degree()) > kmax_) return false;
  if (pmax_ && static_cast<long>(p.degree()) > *pmax_) return false;
  return true;
}

void GradedSeries::add_term(const MultiIndex& k, const MultiIndex& p, const ExactScalar& c) {
  if (k.size() != n_ || p.size() != n_) throw DimensionMismatch("monomial dimension does not match series");
  if (c.is_zero() || !admits(k, p)) return;
  auto [it, inserted] = terms_.try_emplace(SeriesKey{k, p}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExactScalar GradedSeries::coefficient(const MultiIndex& k, const MultiIndex& p) const {
  auto it = terms_.find(SeriesKey{k, p});
  return it == terms_.end() ? ExactScalar() : it->second;
}

std::optional<int> GradedSeries::min_k_degree() const {
  if (terms_.empty()) return std::nullopt;
  return static_cast<int>(terms_.begin()->first.k.degree());
}

std::optional<int> GradedSeries::max_k_degree() const {
  if (terms_.empty()) return std::nullopt;
  return static_cast<int>(terms_.rbegin()->first.k.degree());
}

std::optional<int> GradedSeries::max_p_degree() const {
  if (terms_.empty()) return std::nullopt;
  unsigned d = 0;
  for (const auto& [key, c] : terms_) d = std::max(d, key.p.degree());
  return static_cast<int>(d);
}

bool GradedSeries::is_p_only() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.k.is_zero(); });
}

bool GradedSeries::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

GradedSeries GradedSeries::truncated(int kmax) const {
  GradedSeries r(n_, std::min(kmax, kmax_), pmax_);
  for (const auto& [key, c] : terms_) {
    if (static_cast<long>(key.k.degree()) > r.kmax_) break;
    r.terms_.emplace_hint(r.terms_.end(), key, c);
  }
  return r;
}

GradedSeries GradedSeries::with_pmax(std::optional<int> pmax) const {
  GradedSeries r(n_, kmax_, pmax);
  for (const auto& [key, c] : terms_) {
    if (r.admits(key.k, key.p)) r.terms_.emplace_hint(r.terms_.end(), key, c);
  }
  return r;
}

GradedSeries GradedSeries::k_slice(int degree) const {
  GradedSeries r(n_, kmax_, pmax_);
  for (const auto& [key, c] : terms_) {
    if (static_cast<int>(key.k.degree()) == degree) r.terms_.emplace_hint(r.terms_.end(), key, c);
  }
  return r;
}

GradedSeries& GradedSeries::operator+=(const GradedSeries& o) {
  require_same_dimension(*this, o);
  int kmax = std::min(kmax_, o.kmax_);
  auto pmax = min_cap(pmax_, o.pmax_);
  if (kmax != kmax_ || pmax != pmax_) *this = with_pmax(pmax).truncated(kmax);
  for (const auto& [key, c] : o.terms_) add_term(key.k, key.p, c);
  return *this;
}

GradedSeries& GradedSeries::operator-=(const GradedSeries& o) { return *this += -o; }

GradedSeries& GradedSeries::operator*=(const ExactScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, coeff] : terms_) coeff *= c;
  return *this;
}

GradedSeries GradedSeries::operator-() const {
  GradedSeries r(*this);
  for (auto& [key, c] : r.terms_) c = -c;
  return r;
}

GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
  require_same_dimension(a, b);
  GradedSeries r(a.n_, std::min(a.kmax_, b.kmax_), min_cap(a.pmax_, b.pmax_));
  const long kmax = r.kmax_;
  for (const auto& [ka, ca] : a.terms_) {
    const long da = ka.k.degree();
    if (da > kmax) break;
    for (const auto& [kb, cb] : b.terms_) {
      // Terms of b are sorted by k-degree, so nothing further fits.
      if (da + static_cast<long>(kb.k.degree()) > kmax) break;
      MultiIndex p = ka.p + kb.p;
      if (r.pmax_ && static_cast<long>(p.degree()) > *r.pmax_) continue;
      MultiIndex k = ka.k + kb.k;
      auto [it, inserted] = r.terms_.try_emplace(SeriesKey{k, p}, ca);
      if (inserted) {
        it->second *= cb;
      } else {
        it->second.add_product(ca, cb);
      }
    }
  }
  std::erase_if(r.terms_, [](const auto& t) { return t.second.is_zero(); });
  return r;
}

GradedSeries series_add(const GradedSeries& a, const GradedSeries& b) { return a + b; }

GradedSeries series_mul(const GradedSeries& a, const GradedSeries& b) { return a * b; }

GradedSeries series_pow(const GradedSeries& a, unsigned exponent) {
  GradedSeries result = GradedSeries::constant(a.n(), ExactScalar(1L), a.kmax()).with_pmax(a.pmax());
  GradedSeries base = a;
  while (exponent != 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent != 0) base = base * base;
  }
  return result;
}

GradedSeries series_dp(const GradedSeries& a, std::size_t beta) {
  if (beta >= a.n()) throw std::out_of_range("momentum index out of range in series_dp");
  std::optional<int> pmax = a.pmax();
  if (pmax) pmax = std::max(*pmax - 1, 0);
  GradedSeries r(a.n(), a.kmax(), pmax);
  for (const auto& [key, c] : a.terms()) {
    unsigned e = key.p[beta];
    if (e == 0) continue;
    MultiIndex p = key.p;
    p.set(beta, e - 1);
    r.add_term(key.k, p, c * ExactScalar(static_cast<long>(e)));
  }
  return r;
}

GradedSeries series_dk(const GradedSeries& a, std::size_t alpha) {
  if (alpha >= a.n()) throw std::out_of_range("parameter index out of range in series_dk");
  GradedSeries r(a.n(), a.kmax(), a.pmax());
  for (const auto& [key, c] : a.terms()) {
    unsigned e = key.k[alpha];
    if (e == 0) continue;
    MultiIndex k = key.k;
    k.set(alpha, e - 1);
    r.add_term(k, key.p, c * ExactScalar(static_cast<long>(e)));
  }
  return r;
}

GradedSeries series_euler_k(const GradedSeries& a) {
  GradedSeries r(a.n(), a.kmax(), a.pmax());
  for (const auto& [key, c] : a.terms()) {
    r.add_term(key.k, key.p, c * ExactScalar(static_cast<long>(key.k.degree())));
  }
  return r;
}

bool has_identity_boundary(const GradedSeries& J, std::size_t mu) {
  if (mu >= J.n()) return false;
  return J.k_slice(0) == GradedSeries::p_var(J.n(), mu);
}

GradedSeries series_substitute_p(const GradedSeries& f, std::span<const GradedSeries> J) {
  const std::size_t n = f.n();
  if (J.size() != n) throw DimensionMismatch("substitution needs one series per momentum");
  int kmax = f.kmax();
  for (std::size_t mu = 0; mu < n; ++mu) {
    require_same_dimension(f, J[mu]);
    kmax = std::min(kmax, J[mu].kmax());
    if (f.pmax() && !has_identity_boundary(J[mu], mu)) {
      throw ShapeError("substituting into a p-truncated series requires J_" + std::to_string(mu) +
                       " = p_" + std::to_string(mu) + " + O(k)");
    }
  }

  // powers[mu][e] = J_mu^e, built lazily.
  std::vector<std::vector<GradedSeries>> powers(n);
  auto power = [&](std::size_t mu, unsigned e) -> const GradedSeries& {
    auto& cache = powers[mu];
    if (cache.empty()) cache.push_back(GradedSeries::constant(n, ExactScalar(1L), kmax));
    while (cache.size() <= e) cache.push_back(cache.back() * J[mu].truncated(kmax));
    return cache[e];
  };

  GradedSeries result(n, kmax, f.pmax());
  for (const auto& [key, c] : f.terms()) {
    if (static_cast<long>(key.k.degree()) > kmax) break;
    GradedSeries term = GradedSeries::monomial(n, key.k, MultiIndex(n), c, kmax);
    for (std::size_t mu = 0; mu < n && !term.is_zero(); ++mu) {
      if (key.p[mu] != 0) term = term * power(mu, key.p[mu]);
    }
    result += term;
  }
  return result;
}

std::complex<double> series_eval(const GradedSeries& f, std::span<const double> k, std::span<const double> p) {
  if (k.size() != f.n() || p.size() != f.n()) throw DimensionMismatch("evaluation point has the wrong length");
  std::complex<double> total{0.0, 0.0};
  for (const auto& [key, c] : f.terms()) {
    double m = 1.0;
    for (std::size_t i = 0; i < f.n(); ++i) {
      if (key.k[i] != 0) m *= std::pow(k[i], static_cast<int>(key.k[i]));
      if (key.p[i] != 0) m *= std::pow(p[i], static_cast<int>(key.p[i]));
    }
    total += c.to_complex() * m;
  }
  return total;
}

}  // namespace weylflow
