#include "weylflow/expression.hpp"

#include <cctype>
#include <limits>

#include "weylflow/errors.hpp"

namespace weylflow {

namespace {

using Kind = ExprNode::Kind;

Expression make(Kind kind, Expression lhs = nullptr, Expression rhs = nullptr) {
  auto node = std::make_shared<ExprNode>();
  node->kind = kind;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

class Parser {
 public:
  Parser(std::string_view src, std::size_t n) : src_(src), n_(n) {}

  Expression parse() {
    Expression e = expr();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const { throw ParseError(message, at); }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_digit() {
    skip_space();
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }

  std::string digits() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::string(src_.substr(start, pos_ - start));
  }

  Expression expr() {
    Expression lhs = term();
    while (true) {
      if (accept('+')) {
        lhs = make(Kind::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make(Kind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Expression term() {
    Expression lhs = unary();
    while (accept('*')) lhs = make(Kind::Mul, lhs, unary());
    return lhs;
  }

  Expression unary() {
    if (accept('-')) return make(Kind::Neg, unary());
    return power();
  }

  Expression power() {
    Expression base = primary();
    while (accept('^')) {
      skip_space();
      std::size_t at = pos_;
      if (accept('-')) fail_at("negative exponent", at);
      if (!peek_digit()) fail("exponent must be a non-negative integer literal");
      std::string d = digits();
      skip_space();
      if (pos_ < src_.size() && (src_[pos_] == '/' || src_[pos_] == '.')) fail_at("fractional exponent", at);
      mpz_class value(d, 10);
      if (value > 4096) fail_at("exponent too large", at);
      auto node = std::make_shared<ExprNode>();
      node->kind = Kind::Pow;
      node->exponent = static_cast<unsigned>(value.get_ui());
      node->lhs = std::move(base);
      base = std::move(node);
    }
    return base;
  }

  Expression primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    const std::size_t start = pos_;
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expression inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num(digits(), 10);
      mpz_class den(1);
      skip_space();
      if (pos_ < src_.size() && src_[pos_] == '/') {
        ++pos_;
        if (!peek_digit()) fail("expected a denominator");
        std::size_t at = pos_;
        den = mpz_class(digits(), 10);
        if (den == 0) fail_at("zero denominator", at);
      }
      auto node = std::make_shared<ExprNode>();
      node->kind = Kind::Literal;
      node->value = Rational(num, den);
      node->value.canonicalize();
      return node;
    }
    if (c == 'p') {
      ++pos_;
      if (pos_ >= src_.size() || src_[pos_] != '_') fail("expected '_' after 'p'");
      ++pos_;
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        fail("expected a variable index");
      }
      std::size_t idx_start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      mpz_class index(std::string(src_.substr(idx_start, pos_ - idx_start)), 10);
      if (index >= static_cast<unsigned long>(n_)) {
        fail_at("variable index " + index.get_str() + " out of range for dimension " + std::to_string(n_), start);
      }
      auto node = std::make_shared<ExprNode>();
      node->kind = Kind::Variable;
      node->index = static_cast<std::size_t>(index.get_ui());
      return node;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

int precedence(Kind k) {
  switch (k) {
    case Kind::Add:
    case Kind::Sub:
      return 1;
    case Kind::Mul:
      return 2;
    case Kind::Neg:
      return 3;
    case Kind::Pow:
      return 4;
    case Kind::Literal:
    case Kind::Variable:
      return 5;
  }
  return 0;
}

std::string print(const Expression& e);

std::string wrap(const Expression& e, bool parens) { return parens ? "(" + print(e) + ")" : print(e); }

std::string print(const Expression& e) {
  switch (e->kind) {
    case Kind::Literal:
      return e->value.get_str();
    case Kind::Variable:
      return "p_" + std::to_string(e->index);
    case Kind::Add:
      return wrap(e->lhs, precedence(e->lhs->kind) < 1) + " + " + wrap(e->rhs, precedence(e->rhs->kind) <= 1);
    case Kind::Sub:
      return wrap(e->lhs, precedence(e->lhs->kind) < 1) + " - " + wrap(e->rhs, precedence(e->rhs->kind) <= 1);
    case Kind::Mul:
      return wrap(e->lhs, precedence(e->lhs->kind) < 2) + "*" + wrap(e->rhs, precedence(e->rhs->kind) <= 2);
    case Kind::Neg:
      return "-" + wrap(e->lhs, precedence(e->lhs->kind) < 3);
    case Kind::Pow: {
      // A fractional literal base would read as a rational literal over a power.
      bool parens = precedence(e->lhs->kind) < 5 ||
                    (e->lhs->kind == Kind::Literal && e->lhs->value.get_den() != 1);
      return wrap(e->lhs, parens) + "^" + std::to_string(e->exponent);
    }
  }
  return {};
}

GradedSeries lower(const Expression& e, std::size_t n) {
  switch (e->kind) {
    case Kind::Literal:
      return GradedSeries::constant(n, ExactScalar(e->value));
    case Kind::Variable:
      return GradedSeries::p_var(n, e->index);
    case Kind::Add:
      return lower(e->lhs, n) + lower(e->rhs, n);
    case Kind::Sub:
      return lower(e->lhs, n) - lower(e->rhs, n);
    case Kind::Mul:
      return lower(e->lhs, n) * lower(e->rhs, n);
    case Kind::Neg:
      return -lower(e->lhs, n);
    case Kind::Pow:
      return series_pow(lower(e->lhs, n), e->exponent);
  }
  return GradedSeries(n);
}

}  // namespace

Expression parse_expression(std::string_view src, std::size_t n) { return Parser(src, n).parse(); }

std::string to_string(const Expression& e) { return print(e); }

bool structurally_equal(const Expression& a, const Expression& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Literal:
      return a->value == b->value;
    case Kind::Variable:
      return a->index == b->index;
    case Kind::Pow:
      return a->exponent == b->exponent && structurally_equal(a->lhs, b->lhs);
    case Kind::Neg:
      return structurally_equal(a->lhs, b->lhs);
    default:
      return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
  }
}

GradedSeries lower_to_series(const Expression& e, std::size_t n, int kmax, std::optional<int> pmax,
                             std::vector<std::string>* warnings) {
  GradedSeries full = lower(e, n);
  GradedSeries capped = full.with_pmax(pmax).truncated(kmax);
  if (pmax && capped.size() != full.size() && warnings != nullptr) {
    warnings->push_back("terms above p-degree " + std::to_string(*pmax) + " dropped from '" + to_string(e) + "'");
  }
  return capped;
}

}  // namespace weylflow
