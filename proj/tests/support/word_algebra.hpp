#pragma once

// Test-only Weyl algebra on words: products are concatenations and normal
// ordering swaps one adjacent (p_mu, x_nu) pair at a time using
// p_mu x_nu = x_nu p_mu - i eta_{mu nu}. Independent of the closed-form
// reordering used by weyl_mul.

#include <map>
#include <vector>

#include "weylflow/weyl_algebra.hpp"

namespace weylflow::testing {

struct Letter {
  bool is_x;
  std::size_t index;
  friend bool operator<(const Letter& a, const Letter& b) {
    if (a.is_x != b.is_x) return a.is_x;
    return a.index < b.index;
  }
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Words for each monomial of e, with the k-part and coefficient carried along.
struct WordTerm {
  Word word;
  MultiIndex k;
  ExactScalar c;
};

inline std::vector<WordTerm> to_words(const WeylElement& e) {
  std::vector<WordTerm> out;
  for (const auto& [key, c] : e.terms()) {
    Word w;
    for (std::size_t mu = 0; mu < e.n(); ++mu) {
      for (unsigned j = 0; j < key.x[mu]; ++j) w.push_back({true, mu});
    }
    for (std::size_t mu = 0; mu < e.n(); ++mu) {
      for (unsigned j = 0; j < key.p[mu]; ++j) w.push_back({false, mu});
    }
    out.push_back({std::move(w), key.k, c});
  }
  return out;
}

/// Rewrites a single word into normal order by adjacent transpositions.
inline void normal_order_word(const AlgebraSignature& sig, Word w, const MultiIndex& k, const ExactScalar& c,
                              WeylElement& out) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (!w[i].is_x && w[i + 1].is_x) {
      Word swapped = w;
      std::swap(swapped[i], swapped[i + 1]);
      normal_order_word(sig, swapped, k, c, out);
      if (w[i].index == w[i + 1].index) {
        Word contracted;
        contracted.insert(contracted.end(), w.begin(), w.begin() + static_cast<long>(i));
        contracted.insert(contracted.end(), w.begin() + static_cast<long>(i) + 2, w.end());
        ExactScalar factor(Rational(0), Rational(-sig.eta(w[i].index)));
        normal_order_word(sig, contracted, k, c * factor, out);
      }
      return;
    }
  }
  MultiIndex x(sig.n());
  MultiIndex p(sig.n());
  for (const auto& l : w) {
    if (l.is_x) {
      x.set(l.index, x[l.index] + 1);
    } else {
      p.set(l.index, p[l.index] + 1);
    }
  }
  out.add_term(x, p, k, c);
}

/// a*b computed by word concatenation and step-by-step reordering.
inline WeylElement word_product(const WeylElement& a, const WeylElement& b) {
  WeylElement out(a.signature(), std::min(a.kmax(), b.kmax()));
  for (const auto& ta : to_words(a)) {
    for (const auto& tb : to_words(b)) {
      Word w = ta.word;
      w.insert(w.end(), tb.word.begin(), tb.word.end());
      normal_order_word(a.signature(), w, ta.k + tb.k, ta.c * tb.c, out);
    }
  }
  return out;
}

}  // namespace weylflow::testing
