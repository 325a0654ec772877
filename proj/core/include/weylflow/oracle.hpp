#pragma once

#include "weylflow/realization.hpp"
#include "weylflow/weyl_algebra.hpp"

namespace weylflow {

// Brute-force checks of the normal-ordering identities. Coordinates are
// paired with phi through the metric, x^alpha = eta_{alpha alpha} x_alpha, so
// that [p_mu, x^nu] = -i delta_mu^nu in any signature.

AlgebraSignature signature_of(const Realization& r);

/// i k_beta x^alpha phi_{alpha beta}(p) + i k_alpha chi_alpha(p), as a Weyl element.
WeylElement exponent_of(const Realization& r, bool include_chi = true);

/// :exp(i x^alpha phi_alpha(k,p)): exp(i h(k,p)), truncated at fr.kmax.
WeylElement normal_order_of_flow(const FlowResult& fr, const AlgebraSignature& sig);

struct OracleCheck {
  bool equal = false;
  /// left-hand side minus right-hand side
  WeylElement discrepancy;
};

/// exp(exponent_of(r)) against normal_order_of_flow(compute_flow(r, kmax)).
/// Requires polynomial phi and chi.
OracleCheck verify_theorem1(const Realization& r, int kmax);

/// exp(A + B + [A,B]/2 + ([A,[A,B]] + [B,[B,A]])/12), truncated at kmax <= 3.
/// A and B must have positive k-degree.
WeylElement bch_reference(const WeylElement& A, const WeylElement& B, int kmax);

/// exp(i h) from compute_h against bch_reference(-i k x phi, i k x phi + i k chi)
/// at min(kmax, 3).
OracleCheck verify_bch(const Realization& r, int kmax);

}  // namespace weylflow
