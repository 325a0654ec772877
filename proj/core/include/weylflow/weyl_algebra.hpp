#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "weylflow/graded_series.hpp"
#include "weylflow/multi_index.hpp"
#include "weylflow/scalar.hpp"

namespace weylflow {

/// Dimension and diagonal metric of [p_mu, x_nu] = -i eta_{mu nu}.
class AlgebraSignature {
 public:
  AlgebraSignature(std::size_t n, std::vector<int> metric);
  static AlgebraSignature euclidean(std::size_t n);

  std::size_t n() const noexcept { return metric_.size(); }
  const std::vector<int>& metric() const noexcept { return metric_; }
  int eta(std::size_t mu) const { return metric_.at(mu); }

  friend bool operator==(const AlgebraSignature&, const AlgebraSignature&) = default;

 private:
  std::vector<int> metric_;
};

/// Monomial x^x p^p k^k; the x factors always stand left of the p factors.
struct WeylKey {
  MultiIndex x;
  MultiIndex p;
  MultiIndex k;

  friend bool operator==(const WeylKey&, const WeylKey&) = default;
};

/// grlex on x, then p, then k.
struct WeylKeyLess {
  bool operator()(const WeylKey& a, const WeylKey& b) const noexcept {
    int c = grlex_compare(a.x, b.x);
    if (c != 0) return c < 0;
    c = grlex_compare(a.p, b.p);
    if (c != 0) return c < 0;
    return grlex_compare(a.k, b.k) < 0;
  }
};

/// Normal-ordered element of the Weyl-Heisenberg algebra with coefficients
/// polynomial in the commuting parameters k, truncated at total k-degree kmax.
class WeylElement {
 public:
  using Terms = std::map<WeylKey, ExactScalar, WeylKeyLess>;

  explicit WeylElement(AlgebraSignature sig, int kmax = kUnbounded);

  static WeylElement scalar(const AlgebraSignature& sig, const ExactScalar& c, int kmax = kUnbounded);
  static WeylElement x(const AlgebraSignature& sig, std::size_t mu, int kmax = kUnbounded);
  static WeylElement p(const AlgebraSignature& sig, std::size_t mu, int kmax = kUnbounded);
  /// Embeds a series in (k, p); it has no x factors. Throws if the series is p-truncated.
  static WeylElement from_series(const AlgebraSignature& sig, const GradedSeries& s);

  const AlgebraSignature& signature() const noexcept { return sig_; }
  std::size_t n() const noexcept { return sig_.n(); }
  int kmax() const noexcept { return kmax_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::optional<int> min_k_degree() const;

  void add_term(const MultiIndex& x, const MultiIndex& p, const MultiIndex& k, const ExactScalar& c);
  WeylElement truncated(int kmax) const;

  WeylElement& operator+=(const WeylElement& o);
  WeylElement& operator-=(const WeylElement& o);
  WeylElement& operator*=(const ExactScalar& c);
  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  friend WeylElement operator*(WeylElement a, const ExactScalar& c) { return a *= c; }
  friend WeylElement operator*(const ExactScalar& c, WeylElement a) { return a *= c; }
  WeylElement operator-() const;

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.sig_ == b.sig_ && a.terms_ == b.terms_;
  }

 private:
  AlgebraSignature sig_;
  int kmax_;
  Terms terms_;
};

/// Algebra product, reordering p^b x^c = sum_j C(b,j) C(c,j) j! (-i eta)^j x^{c-j} p^{b-j}
/// coordinate by coordinate.
WeylElement weyl_mul(const WeylElement& a, const WeylElement& b);
/// :a b:, the product of the normal-ordered symbols with no reordering terms.
WeylElement normal_ordered_product(const WeylElement& a, const WeylElement& b);
WeylElement commutator(const WeylElement& a, const WeylElement& b);

/// sum_{m <= kmax} e^m / m!. Every term of e must have k-degree >= 1.
WeylElement weyl_exp(const WeylElement& e, int kmax);
/// exp under normal ordering, :exp(e): = sum_m :e^m:/m!.
WeylElement normal_ordered_exp(const WeylElement& e, int kmax);

/// m-fold [p_mu, .].
WeylElement ad_p_iterate(const WeylElement& e, std::size_t mu, unsigned m);
/// Drops every monomial containing an x factor.
WeylElement set_x_zero(const WeylElement& e);
/// x-free element as a series in (k, p). Throws std::invalid_argument if x occurs.
GradedSeries to_series(const WeylElement& e);

/// {"n":int, "metric":[..], "kmax":int|null, "terms":[{"x":[..],"p":[..],"k":[..],"re":"a/b","im":"c/d"}...]}
nlohmann::ordered_json to_json(const WeylElement& e);

}  // namespace weylflow
