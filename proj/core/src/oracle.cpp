#include "weylflow/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "weylflow/flows.hpp"

namespace weylflow {

namespace {

const ExactScalar kI = ExactScalar::i();

// x^alpha = eta_alpha x_alpha, sitting left of everything else.
WeylElement upper_x(const AlgebraSignature& sig, std::size_t alpha, int kmax) {
  return WeylElement::x(sig, alpha, kmax) * ExactScalar(static_cast<long>(sig.eta(alpha)));
}

}  // namespace

AlgebraSignature signature_of(const Realization& r) { return AlgebraSignature(r.n(), r.metric()); }

WeylElement exponent_of(const Realization& r, bool include_chi) {
  if (!r.is_polynomial()) throw std::invalid_argument("the Weyl oracle needs polynomial phi and chi");
  const AlgebraSignature sig = signature_of(r);
  WeylElement e(sig);
  for (std::size_t alpha = 0; alpha < r.n(); ++alpha) {
    // vector_field(alpha) = k_beta phi_{alpha beta}(p)
    e += weyl_mul(upper_x(sig, alpha, kUnbounded), WeylElement::from_series(sig, r.vector_field(alpha)));
  }
  if (include_chi) e += WeylElement::from_series(sig, r.chi_source());
  return e * kI;
}

WeylElement normal_order_of_flow(const FlowResult& fr, const AlgebraSignature& sig) {
  if (fr.phi.size() != sig.n() || fr.h.n() != sig.n()) {
    throw std::invalid_argument("flow result and signature dimensions differ");
  }
  WeylElement exponent(sig, fr.kmax);
  for (std::size_t alpha = 0; alpha < sig.n(); ++alpha) {
    exponent += normal_ordered_product(upper_x(sig, alpha, fr.kmax), WeylElement::from_series(sig, fr.phi[alpha]));
  }
  WeylElement left = normal_ordered_exp(exponent * kI, fr.kmax);
  WeylElement right = weyl_exp(WeylElement::from_series(sig, fr.h) * kI, fr.kmax);
  // right is a function of p alone, so this product needs no reordering.
  return weyl_mul(left, right);
}

OracleCheck verify_theorem1(const Realization& r, int kmax) {
  WeylElement lhs = weyl_exp(exponent_of(r), kmax);
  WeylElement rhs = normal_order_of_flow(compute_flow(r, kmax), signature_of(r));
  WeylElement diff = lhs - rhs;
  bool equal = diff.is_zero();
  return {equal, std::move(diff)};
}

WeylElement bch_reference(const WeylElement& A, const WeylElement& B, int kmax) {
  if (kmax > 3) throw std::invalid_argument("bch_reference is only available up to k-order 3");
  for (const auto* e : {&A, &B}) {
    auto d = e->min_k_degree();
    if (d && *d < 1) throw std::invalid_argument("bch_reference: operands need positive k-degree");
  }
  const WeylElement a = A.truncated(kmax);
  const WeylElement b = B.truncated(kmax);
  const WeylElement ab = commutator(a, b);
  WeylElement z = a + b;
  z += ab * ExactScalar(Rational(1, 2));
  z += (commutator(a, ab) + commutator(b, commutator(b, a))) * ExactScalar(Rational(1, 12));
  return weyl_exp(z, kmax);
}

OracleCheck verify_bch(const Realization& r, int kmax) {
  const int order = std::min(kmax, 3);
  const AlgebraSignature sig = signature_of(r);
  WeylElement A = -exponent_of(r, false);
  WeylElement B = exponent_of(r, true);
  WeylElement reference = bch_reference(A, B, order);
  WeylElement from_h = weyl_exp(WeylElement::from_series(sig, compute_h(r, order)) * kI, order);
  WeylElement diff = reference - from_h;
  bool equal = diff.is_zero();
  return {equal, std::move(diff)};
}

}  // namespace weylflow
