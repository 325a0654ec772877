#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "weylflow/graded_series.hpp"
#include "weylflow/realization.hpp"

namespace weylflow {

/// O(f) = sum_{alpha,beta} k_alpha phi_{beta alpha}(p) df/dp_beta, truncated at f's kmax.
GradedSeries apply_O(const Realization& r, const GradedSeries& f);

/// J_mu = exp(O)(p_mu) = sum_{m <= kmax} O^m(p_mu) / m!.
std::vector<GradedSeries> compute_J(const Realization& r, int kmax);

/// phi_mu = J_mu - p_mu, cross-checked against the combinator
/// sum_{m >= 0} O^m / (m+1)! applied to k_beta phi_{mu beta}(p).
/// Throws ConsistencyError if the two disagree.
std::vector<GradedSeries> compute_phi(const Realization& r, int kmax);

/// h = sum_{m >= 0} O^m(k_beta chi_beta(p)) / (m+1)!.
GradedSeries compute_h(const Realization& r, int kmax);

/// J, phi and h together. Throws ConsistencyError if a coefficient is not real.
FlowResult compute_flow(const Realization& r, int kmax);

/// k_beta dJ_mu/dk_beta - k_beta phi_{mu beta}(J), truncated at J's kmax.
std::vector<GradedSeries> ode_residual_J(const Realization& r, std::span<const GradedSeries> J);
/// k_beta dh/dk_beta - k_beta chi_beta(J), truncated at h's kmax.
GradedSeries ode_residual_h(const Realization& r, std::span<const GradedSeries> J, const GradedSeries& h);

/// J to third order written out as three nested derivative sums, without
/// going through apply_O. Equals compute_J(r, 3).
std::vector<GradedSeries> third_order_J(const Realization& r);

/// phi_mu = sum_{m=1..kmax} k_0^m/m! (A^m)_{mu beta} p_beta, using exact matrix powers.
std::vector<GradedSeries> linear_closed_form(const LinearRealization& lr, int kmax);

/// J3_mu(k,p) = J1_mu(k, J2(k,p)); both flows must be p + O(k).
std::vector<GradedSeries> compose_flows(std::span<const GradedSeries> J1, std::span<const GradedSeries> J2);

/// Graded vector field G with exp(G_beta d/dp_beta)(p_mu) = J_mu to J's kmax,
/// solved order by order. The k-degree-1 slice is dJ/dk at k = 0; higher
/// slices are the corrections a k-independent generator would miss.
std::vector<GradedSeries> recover_generator(std::span<const GradedSeries> J);

/// True if some component of G has a term of k-degree above 1.
bool has_higher_corrections(std::span<const GradedSeries> G);

/// exp(L)(f) for L = field_beta d/dp_beta, with every field component of
/// positive k-degree; truncated at kmax.
GradedSeries lie_exponential(std::span<const GradedSeries> field, const GradedSeries& f, int kmax);

/// The identity flow p_mu truncated at kmax.
std::vector<GradedSeries> identity_flow(std::size_t n, int kmax);

}  // namespace weylflow
