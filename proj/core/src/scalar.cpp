#include "weylflow/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace weylflow {

namespace {

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den.front() == '-' || den.front() == '+') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  std::string num_s(num.front() == '+' ? num.substr(1) : num);
  mpz_class n(num_s, 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Rational norm = re_ * re_ + im_ * im_;
  return {re_ / norm, -im_ / norm};
}

ExactScalar ExactScalar::pow(int exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  ExactScalar result(1L);
  ExactScalar base = *this;
  auto e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactScalar& ExactScalar::add_product(const ExactScalar& a, const ExactScalar& b) {
  if (sgn(a.im_) == 0 && sgn(b.im_) == 0) {
    re_ += a.re_ * b.re_;
    return *this;
  }
  return *this += a * b;
}

std::string ExactScalar::to_string() const {
  if (is_real()) return re_.get_str();
  if (sgn(re_) == 0) return im_.get_str() + "*i";
  std::string im = im_.get_str();
  if (sgn(im_) > 0) im = "+" + im;
  return "(" + re_.get_str() + im + "*i)";
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& s) { return os << s.to_string(); }

}  // namespace weylflow
