#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "weylflow/multi_index.hpp"
#include "weylflow/scalar.hpp"

namespace weylflow {

/// Truncation order meaning "no cap".
inline constexpr int kUnbounded = std::numeric_limits<int>::max();

/// A monomial k^k p^p in the deformation parameters and momenta.
struct SeriesKey {
  MultiIndex k;
  MultiIndex p;

  friend bool operator==(const SeriesKey&, const SeriesKey&) = default;
};

/// Canonical order: grlex on the k-index, then grlex on the p-index.
struct SeriesKeyLess {
  bool operator()(const SeriesKey& a, const SeriesKey& b) const noexcept {
    int c = grlex_compare(a.k, b.k);
    if (c != 0) return c < 0;
    return grlex_compare(a.p, b.p) < 0;
  }
};

/// Multivariate polynomial in p_0..p_{n-1} and k_0..k_{n-1} with exact
/// coefficients, truncated at total k-degree kmax and optionally at total
/// p-degree pmax.
///
/// Terms above either cap are discarded on insertion and zero coefficients
/// are never stored, so the term map is a canonical form. Equality compares
/// the dimension and the term maps only; the truncation orders are metadata.
///
/// When pmax is set the series stands for a power series in p known up to
/// p-degree pmax. Differentiating in p lowers that cap by one.
class GradedSeries {
 public:
  using Terms = std::map<SeriesKey, ExactScalar, SeriesKeyLess>;

  GradedSeries() = default;
  explicit GradedSeries(std::size_t n, int kmax = kUnbounded, std::optional<int> pmax = std::nullopt);

  static GradedSeries constant(std::size_t n, const ExactScalar& c, int kmax = kUnbounded);
  static GradedSeries p_var(std::size_t n, std::size_t i, int kmax = kUnbounded);
  static GradedSeries k_var(std::size_t n, std::size_t i, int kmax = kUnbounded);
  static GradedSeries monomial(std::size_t n, const MultiIndex& k, const MultiIndex& p, const ExactScalar& c,
                               int kmax = kUnbounded);

  std::size_t n() const noexcept { return n_; }
  int kmax() const noexcept { return kmax_; }
  const std::optional<int>& pmax() const noexcept { return pmax_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Adds c to the coefficient of k^k p^p; silently drops monomials above the caps.
  void add_term(const MultiIndex& k, const MultiIndex& p, const ExactScalar& c);
  ExactScalar coefficient(const MultiIndex& k, const MultiIndex& p) const;

  /// Smallest / largest total k-degree present; nullopt for the zero series.
  std::optional<int> min_k_degree() const;
  std::optional<int> max_k_degree() const;
  std::optional<int> max_p_degree() const;

  bool is_p_only() const;
  bool is_real() const;

  /// Copy with the k-cap lowered to min(kmax, current).
  GradedSeries truncated(int kmax) const;
  /// Copy with the p-cap replaced (terms above the new cap are dropped).
  GradedSeries with_pmax(std::optional<int> pmax) const;
  /// The homogeneous part of total k-degree exactly `degree`.
  GradedSeries k_slice(int degree) const;

  GradedSeries& operator+=(const GradedSeries& o);
  GradedSeries& operator-=(const GradedSeries& o);
  GradedSeries& operator*=(const ExactScalar& c);

  friend GradedSeries operator+(GradedSeries a, const GradedSeries& b) { return a += b; }
  friend GradedSeries operator-(GradedSeries a, const GradedSeries& b) { return a -= b; }
  friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b);
  friend GradedSeries operator*(GradedSeries a, const ExactScalar& c) { return a *= c; }
  friend GradedSeries operator*(const ExactScalar& c, GradedSeries a) { return a *= c; }
  GradedSeries operator-() const;

  friend bool operator==(const GradedSeries& a, const GradedSeries& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  bool admits(const MultiIndex& k, const MultiIndex& p) const;

  std::size_t n_ = 0;
  int kmax_ = kUnbounded;
  std::optional<int> pmax_;
  Terms terms_;
};

GradedSeries series_add(const GradedSeries& a, const GradedSeries& b);
GradedSeries series_mul(const GradedSeries& a, const GradedSeries& b);
/// Non-negative integer power, truncated like repeated series_mul.
GradedSeries series_pow(const GradedSeries& a, unsigned exponent);

/// d/dp_beta, term by term.
GradedSeries series_dp(const GradedSeries& a, std::size_t beta);
/// d/dk_alpha, term by term.
GradedSeries series_dk(const GradedSeries& a, std::size_t alpha);
/// Euler operator k_beta d/dk_beta: scales each term by its total k-degree.
GradedSeries series_euler_k(const GradedSeries& a);

/// Replaces p_mu by J[mu] and re-expands, truncated at the smallest kmax
/// involved. The k-dependence of f is kept as a multiplicative factor.
/// If f carries a p-cap, every J[mu] must be p_mu plus terms of positive
/// k-degree (ShapeError otherwise).
GradedSeries series_substitute_p(const GradedSeries& f, std::span<const GradedSeries> J);

/// Numeric value at (k, p); coefficients are rounded to double only here.
std::complex<double> series_eval(const GradedSeries& f, std::span<const double> k, std::span<const double> p);

/// True iff J_mu restricted to k-degree 0 is exactly p_mu.
bool has_identity_boundary(const GradedSeries& J, std::size_t mu);

}  // namespace weylflow
