#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace weylflow {

using Rational = mpq_class;

/// Parses "a/b" or "a" (optional leading sign) into a canonical rational.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Always "num/den", including "n/1" for integers.
std::string rational_to_string(const Rational& q);

Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);

/// Gaussian rational re + im*i with exact arbitrary-precision parts.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(const Rational& re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(const Rational& re, const Rational& im) : re_(re), im_(im) {}

  static ExactScalar i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  ExactScalar conj() const { return {re_, -im_}; }
  /// Throws std::domain_error for zero.
  ExactScalar inverse() const;
  /// Integer power; negative exponents go through inverse().
  ExactScalar pow(int exponent) const;

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string to_string() const;

  ExactScalar& operator+=(const ExactScalar& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
  }
  ExactScalar& operator-=(const ExactScalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  ExactScalar& operator*=(const ExactScalar& o);
  /// *this += a * b without a temporary scalar.
  ExactScalar& add_product(const ExactScalar& a, const ExactScalar& b);
  ExactScalar& operator/=(const ExactScalar& o) { return *this *= o.inverse(); }

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  ExactScalar operator-() const { return {-re_, -im_}; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& s);

}  // namespace weylflow
