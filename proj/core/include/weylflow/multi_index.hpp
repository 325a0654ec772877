#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>

namespace weylflow {

/// Largest supported number of coordinates / momenta.
inline constexpr std::size_t kMaxDimension = 8;

/// Exponent vector of a monomial, stored inline (no allocation).
class MultiIndex {
 public:
  using value_type = std::uint16_t;

  MultiIndex() = default;
  explicit MultiIndex(std::size_t n);
  MultiIndex(std::initializer_list<unsigned> exponents);

  /// e_i scaled by power, in dimension n.
  static MultiIndex unit(std::size_t n, std::size_t i, unsigned power = 1);

  std::size_t size() const noexcept { return n_; }
  unsigned operator[](std::size_t i) const noexcept { return e_[i]; }
  void set(std::size_t i, unsigned value);

  unsigned degree() const noexcept;
  bool is_zero() const noexcept { return degree() == 0; }

  std::span<const value_type> exponents() const noexcept { return {e_.data(), n_}; }

  /// Throws std::overflow_error if an exponent exceeds the storage range.
  MultiIndex operator+(const MultiIndex& o) const;

  std::string to_string() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) noexcept {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }

 private:
  std::array<value_type, kMaxDimension> e_{};
  std::uint8_t n_ = 0;
};

/// Graded lexicographic comparison: total degree ascending, then exponents
/// lexicographically descending (so x_0^2 precedes x_0 x_1 precedes x_1^2).
/// Returns <0, 0, >0.
int grlex_compare(const MultiIndex& a, const MultiIndex& b) noexcept;

}  // namespace weylflow
