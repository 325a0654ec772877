#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weylflow/graded_series.hpp"
#include "weylflow/scalar.hpp"

namespace weylflow {

/// Polynomial expression AST over rational literals and momenta p_i.
///
/// Grammar (whitespace insignificant):
///   expr    := term (('+' | '-') term)*
///   term    := unary ('*' unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' integer)*
///   primary := integer ['/' integer] | 'p_' integer | '(' expr ')'
/// so '^' binds tighter than unary minus, which binds tighter than '*'.
struct ExprNode {
  enum class Kind { Literal, Variable, Add, Sub, Mul, Neg, Pow };

  Kind kind;
  Rational value;         // Literal
  std::size_t index = 0;  // Variable
  unsigned exponent = 0;  // Pow
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};

using Expression = std::shared_ptr<const ExprNode>;

/// Throws ParseError (with byte offset) on syntax errors, out-of-range
/// variables and negative or fractional exponents.
Expression parse_expression(std::string_view src, std::size_t n);

/// Canonical source text; parse_expression(to_string(e)) is structurally equal to e.
std::string to_string(const Expression& e);
bool structurally_equal(const Expression& a, const Expression& b);

/// Exact polynomial expansion (k-degree 0). With pmax set, terms above p-degree
/// pmax are dropped and a warning is appended to `warnings` if any were.
GradedSeries lower_to_series(const Expression& e, std::size_t n, int kmax = kUnbounded,
                             std::optional<int> pmax = std::nullopt, std::vector<std::string>* warnings = nullptr);

}  // namespace weylflow
