#include "weylflow/multi_index.hpp"

#include <limits>
#include <stdexcept>

namespace weylflow {

MultiIndex::MultiIndex(std::size_t n) {
  if (n > kMaxDimension) {
    throw std::invalid_argument("dimension " + std::to_string(n) + " exceeds the supported maximum " +
                                std::to_string(kMaxDimension));
  }
  n_ = static_cast<std::uint8_t>(n);
}

MultiIndex::MultiIndex(std::initializer_list<unsigned> exponents) : MultiIndex(exponents.size()) {
  std::size_t i = 0;
  for (unsigned e : exponents) set(i++, e);
}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t i, unsigned power) {
  MultiIndex m(n);
  m.set(i, power);
  return m;
}

void MultiIndex::set(std::size_t i, unsigned value) {
  if (i >= n_) throw std::out_of_range("multi-index position out of range");
  if (value > std::numeric_limits<value_type>::max()) throw std::overflow_error("exponent too large");
  e_[i] = static_cast<value_type>(value);
}

unsigned MultiIndex::degree() const noexcept {
  unsigned d = 0;
  for (std::size_t i = 0; i < n_; ++i) d += e_[i];
  return d;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  MultiIndex r(*this);
  for (std::size_t i = 0; i < n_; ++i) {
    unsigned s = unsigned{e_[i]} + o.e_[i];
    if (s > std::numeric_limits<value_type>::max()) throw std::overflow_error("exponent too large");
    r.e_[i] = static_cast<value_type>(s);
  }
  return r;
}

std::string MultiIndex::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < n_; ++i) {
    if (i != 0) s += ",";
    s += std::to_string(e_[i]);
  }
  return s + "]";
}

int grlex_compare(const MultiIndex& a, const MultiIndex& b) noexcept {
  unsigned da = a.degree();
  unsigned db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  std::size_t n = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

}  // namespace weylflow
