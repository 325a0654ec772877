#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "weylflow/errors.hpp"
#include "weylflow/flows.hpp"

namespace weylflow {
namespace {

using testing::Gen;

GradedSeries p0(int kmax = kUnbounded) { return GradedSeries::p_var(1, 0, kmax); }
GradedSeries k0(int kmax = kUnbounded) { return GradedSeries::k_var(1, 0, kmax); }
GradedSeries mono(unsigned k, unsigned p, const ExactScalar& c, int kmax = kUnbounded) {
  return GradedSeries::monomial(1, MultiIndex{k}, MultiIndex{p}, c, kmax);
}

Realization one_dim(const GradedSeries& phi, const GradedSeries& chi = GradedSeries(1)) {
  return Realization(1, {1}, {{phi}}, {chi});
}

Realization square() { return one_dim(series_pow(p0(), 2)); }

// Each term k^a p^b -> c^|a| k^a p^b.
GradedSeries reweight(const GradedSeries& s, const Rational& c) {
  GradedSeries out(s.n(), s.kmax(), s.pmax());
  for (const auto& [key, coeff] : s.terms()) {
    Rational w(1);
    for (unsigned i = 0; i < key.k.degree(); ++i) w *= c;
    out.add_term(key.k, key.p, coeff * ExactScalar(w));
  }
  return out;
}

// --- apply_O ----------------------------------------------------------------

TEST(ApplyO, OnMomentumGivesPhi) { EXPECT_EQ(apply_O(square(), p0()), k0() * series_pow(p0(), 2)); }

TEST(ApplyO, ChainRule) {
  EXPECT_EQ(apply_O(square(), series_pow(p0(), 2)), mono(1, 3, ExactScalar(2L)));
}

TEST(ApplyO, IteratesMatchHandExpansion) {
  // O(p) = k p^2, O(k p^2) = 2 k^2 p^3, O(2 k^2 p^3) = 6 k^3 p^4: O^r(p) = r! k^r p^{r+1}.
  GradedSeries f = p0();
  for (unsigned r = 1; r <= 6; ++r) {
    f = apply_O(square(), f);
    ASSERT_EQ(f, mono(r, r + 1, ExactScalar(factorial(r))));
  }
}

TEST(ApplyO, RaisesMinimumKDegree) {
  Gen gen(1);
  for (int trial = 0; trial < 30; ++trial) {
    Realization r = gen.realization(2, 2, false);
    GradedSeries f = gen.series(2, kUnbounded, 2, 3, 4);
    GradedSeries of = apply_O(r, f);
    if (!of.is_zero()) ASSERT_GE(*of.min_k_degree(), *f.min_k_degree() + 1);
  }
}

TEST(ApplyO, DimensionMismatchThrows) { EXPECT_THROW(apply_O(square(), GradedSeries::p_var(2, 0)), DimensionMismatch); }

// --- compute_J / compute_phi / compute_h -------------------------------------

TEST(ComputeJ, SquareMatchesGeometricExpansion) {
  // J = p/(1 - k p) solves dJ/dk = J^2 with J(0) = p; expand geometrically.
  auto J = compute_J(square(), 3);
  GradedSeries expected(1, 3);
  for (unsigned r = 0; r <= 3; ++r) expected += mono(r, r + 1, ExactScalar(1L));
  ASSERT_EQ(J.size(), 1U);
  EXPECT_EQ(J[0], expected);
}

TEST(ComputeJ, ZeroPhiGivesIdentity) {
  Realization zero(2, {1, -1}, {{GradedSeries(2), GradedSeries(2)}, {GradedSeries(2), GradedSeries(2)}}, {});
  auto J = compute_J(zero, 5);
  EXPECT_EQ(J, identity_flow(2, 5));
}

TEST(ComputeJ, LinearScalarIsExponential) {
  const Rational a(3, 2);
  auto J = compute_J(one_dim(p0() * ExactScalar(a)), 4);
  GradedSeries expected(1, 4);
  Rational coeff(1);
  for (unsigned r = 0; r <= 4; ++r) {
    expected += mono(r, 1, ExactScalar(coeff));
    coeff = coeff * a / (r + 1);
  }
  EXPECT_EQ(J[0], expected);
}

TEST(ComputeJ, NegativeKmaxThrows) { EXPECT_THROW(compute_J(square(), -1), std::invalid_argument); }

TEST(ComputePhi, SquareExample) {
  auto phi = compute_phi(square(), 3);
  EXPECT_EQ(phi[0], mono(1, 2, 1L) + mono(2, 3, 1L) + mono(3, 4, 1L));
}

TEST(ComputePhi, ZeroPhi) { EXPECT_TRUE(compute_phi(one_dim(GradedSeries(1)), 4)[0].is_zero()); }

TEST(ComputePhi, LinearIsExpMinusOne) {
  const Rational a(-2, 3);
  auto phi = compute_phi(one_dim(p0() * ExactScalar(a)), 5);
  GradedSeries expected(1, 5);
  Rational coeff = a;
  for (unsigned r = 1; r <= 5; ++r) {
    expected += mono(r, 1, ExactScalar(coeff));
    coeff = coeff * a / (r + 1);
  }
  EXPECT_EQ(phi[0], expected);
}

TEST(ComputeH, ConstantChiIsLinearInK) {
  Gen gen(4);
  for (int trial = 0; trial < 10; ++trial) {
    Realization base = gen.realization(1, 3, false);
    Realization r(1, {1}, {{base.phi(0, 0)}}, {GradedSeries::constant(1, ExactScalar(Rational(7, 3)))});
    EXPECT_EQ(compute_h(r, 5), mono(1, 0, ExactScalar(Rational(7, 3))));
  }
}

TEST(ComputeH, LogarithmExample) {
  // O^n(p) = n! k^n p^{n+1}, so the k^{n+1} term is p^{n+1}/(n+1): h = -log(1 - k p).
  auto h = compute_h(one_dim(series_pow(p0(), 2), p0()), 4);
  GradedSeries expected(1, 4);
  for (unsigned r = 1; r <= 4; ++r) expected += mono(r, r, ExactScalar(Rational(1, r)));
  EXPECT_EQ(h, expected);
}

TEST(ComputeH, ZeroChi) { EXPECT_TRUE(compute_h(square(), 5).is_zero()); }

TEST(ComputeFlow, InvariantsOnRandomRealizations) {
  Gen gen(77);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.integer(1, 3));
    Realization r = gen.realization(n, 2, true, gen.metric(n));
    FlowResult fr = compute_flow(r, 3);
    for (std::size_t mu = 0; mu < n; ++mu) {
      ASSERT_TRUE(has_identity_boundary(fr.J[mu], mu));
      ASSERT_EQ(fr.phi[mu], fr.J[mu] - GradedSeries::p_var(n, mu));
      ASSERT_TRUE(fr.J[mu].is_real());
    }
    ASSERT_TRUE(fr.h.k_slice(0).is_zero());
    ASSERT_TRUE(fr.h.is_real());
  }
}

// --- residuals ---------------------------------------------------------------

TEST(OdeResidualJ, VanishesOnComputedFlow) {
  auto J = compute_J(square(), 6);
  for (const auto& res : ode_residual_J(square(), J)) EXPECT_TRUE(res.is_zero());
}

TEST(OdeResidualJ, IdentityFlowLeavesFirstOrderSource) {
  Gen gen(9);
  Realization r = gen.realization(2, 2, false);
  auto res = ode_residual_J(r, identity_flow(2, 4));
  for (std::size_t mu = 0; mu < 2; ++mu) EXPECT_EQ(res[mu], -r.vector_field(mu));
}

TEST(OdeResidualJ, MissingSecondOrderTerm) {
  // k dJ/dk - k (p + k p^2)^2 = k p^2 - k p^2 - 2 k^2 p^3 - k^3 p^4 -> -2 k^2 p^3 at kmax 2.
  std::vector<GradedSeries> J{p0(2) + mono(1, 2, 1L)};
  auto res = ode_residual_J(square(), J);
  EXPECT_EQ(res[0], mono(2, 3, -2L));
}

TEST(OdeResidualH, VanishesOnComputedFlow) {
  Realization r = one_dim(series_pow(p0(), 2), p0());
  FlowResult fr = compute_flow(r, 6);
  EXPECT_TRUE(ode_residual_h(r, fr.J, fr.h).is_zero());
}

TEST(OdeResidualH, ZeroHLeavesFirstOrderSource) {
  Realization r = one_dim(series_pow(p0(), 2), p0() + GradedSeries::constant(1, 3L));
  auto J = compute_J(r, 4);
  EXPECT_EQ(ode_residual_h(r, J, GradedSeries(1, 4)), -(k0() * (J[0] + GradedSeries::constant(1, 3L))));
}

TEST(OdeResidualH, DroppedTopOrderTerm) {
  // h = kp + k^2p^2/2 + k^3p^3/3 (k^4 p^4/4 dropped); Euler(h) - kJ = -4 * (1/4) k^4 p^4.
  Realization r = one_dim(series_pow(p0(), 2), p0());
  FlowResult fr = compute_flow(r, 4);
  GradedSeries short_h = fr.h - fr.h.k_slice(4);
  EXPECT_EQ(ode_residual_h(r, fr.J, short_h), mono(4, 4, -1L));
}

TEST(OdeResiduals, VanishOnRandomRealizations) {
  Gen gen(31337);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.integer(1, 3));
    int kmax = n == 3 ? gen.integer(1, 3) : gen.integer(1, 5);
    Realization r = gen.realization(n, gen.integer(0, 3), gen.coin(0.7));
    FlowResult fr = compute_flow(r, kmax);
    for (const auto& res : ode_residual_J(r, fr.J)) ASSERT_TRUE(res.is_zero()) << "trial " << trial;
    ASSERT_TRUE(ode_residual_h(r, fr.J, fr.h).is_zero()) << "trial " << trial;
  }
}

TEST(OdeResiduals, PerturbedSolutionIsDetected) {
  // Any change above k-degree 0 breaks the equation at its own order.
  Gen gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    Realization r = gen.realization(2, 2, true);
    FlowResult fr = compute_flow(r, 4);
    for (std::size_t mu = 0; mu < 2; ++mu) {
      for (const auto& [key, c] : fr.J[mu].terms()) {
        if (key.k.degree() == 0) continue;
        auto J = fr.J;
        J[mu].add_term(key.k, key.p, ExactScalar(1L));
        auto res = ode_residual_J(r, J);
        ASSERT_FALSE(res[0].is_zero() && res[1].is_zero());
      }
    }
    auto h = fr.h;
    h.add_term(MultiIndex{1, 1}, MultiIndex{0, 2}, ExactScalar(1L));
    ASSERT_FALSE(ode_residual_h(r, fr.J, h).is_zero());
  }
}

// --- third order ---------------------------------------------------------------

TEST(ThirdOrderJ, SquareExample) {
  EXPECT_EQ(third_order_J(square())[0], mono(0, 1, 1L) + mono(1, 2, 1L) + mono(2, 3, 1L) + mono(3, 4, 1L));
}

TEST(ThirdOrderJ, ZeroPhi) { EXPECT_EQ(third_order_J(one_dim(GradedSeries(1))), identity_flow(1, 3)); }

TEST(ThirdOrderJ, AgreesWithEngineOnRandomRealizations) {
  Gen gen(42);
  for (int trial = 0; trial < 25; ++trial) {
    Realization r = gen.realization(2, 2, false);
    ASSERT_EQ(third_order_J(r), compute_J(r, 3));
  }
}

// --- linear closed form ------------------------------------------------------

TEST(LinearClosedForm, ZeroMatrix) {
  LinearRealization lr({{Rational(0), Rational(0)}, {Rational(0), Rational(0)}});
  for (const auto& s : linear_closed_form(lr, 6)) EXPECT_TRUE(s.is_zero());
}

TEST(LinearClosedForm, NilpotentTerminates) {
  LinearRealization lr({{Rational(0), Rational(1)}, {Rational(0), Rational(0)}});
  for (int kmax = 1; kmax <= 8; ++kmax) {
    auto phi = linear_closed_form(lr, kmax);
    EXPECT_EQ(phi[0], GradedSeries::k_var(2, 0) * GradedSeries::p_var(2, 1));
    EXPECT_TRUE(phi[1].is_zero());
  }
}

TEST(LinearClosedForm, ScalarIsExpMinusOne) {
  const Rational a(5, 4);
  auto phi = linear_closed_form(LinearRealization({{a}}), 6);
  GradedSeries expected(1, 6);
  Rational coeff = a;
  for (unsigned r = 1; r <= 6; ++r) {
    expected += mono(r, 1, ExactScalar(coeff));
    coeff = coeff * a / (r + 1);
  }
  EXPECT_EQ(phi[0], expected);
}

TEST(LinearClosedForm, MatchesGeneralEngine) {
  Gen gen(99);
  for (int trial = 0; trial < 5; ++trial) {
    LinearRealization lr(gen.matrix(3));
    ASSERT_EQ(compute_J(lr.to_realization(), 6), testing::plus_identity(linear_closed_form(lr, 6), 6));
  }
}

// --- composition and generator recovery ----------------------------------------

TEST(ComposeFlows, IdentityOnTheRight) {
  auto J1 = compute_J(square(), 5);
  EXPECT_EQ(compose_flows(J1, identity_flow(1, 5)), J1);
}

TEST(ComposeFlows, FlowThenInverseIsIdentity) {
  // p/(1 - kp) composed with p/(1 + kp) is p.
  for (int kmax = 1; kmax <= 8; ++kmax) {
    auto J1 = compute_J(square(), kmax);
    auto J2 = compute_J(square().negated(), kmax);
    EXPECT_EQ(compose_flows(J1, J2), identity_flow(1, kmax));
  }
}

TEST(ComposeFlows, ScalarLinearFlowsAdd) {
  const Rational a(1, 2);
  const Rational b(-3);
  auto J1 = compute_J(one_dim(p0() * ExactScalar(a)), 6);
  auto J2 = compute_J(one_dim(p0() * ExactScalar(b)), 6);
  auto expected = testing::plus_identity(linear_closed_form(LinearRealization({{a + b}}), 6), 6);
  EXPECT_EQ(compose_flows(J1, J2), expected);
}

TEST(ComposeFlows, RejectsBadShape) {
  std::vector<GradedSeries> bad{p0() * ExactScalar(2L)};
  EXPECT_THROW(compose_flows(bad, identity_flow(1, 3)), ShapeError);
  EXPECT_THROW(compose_flows(identity_flow(1, 3), bad), ShapeError);
}

TEST(RecoverGenerator, LinearScalarHasNoCorrections) {
  const Rational a(7, 5);
  auto G = recover_generator(compute_J(one_dim(p0() * ExactScalar(a)), 6));
  EXPECT_EQ(G[0], mono(1, 1, ExactScalar(a)));
  EXPECT_FALSE(has_higher_corrections(G));
}

TEST(RecoverGenerator, IdentityFlowHasZeroGenerator) {
  auto J = compose_flows(compute_J(square(), 5), compute_J(square().negated(), 5));
  for (const auto& g : recover_generator(J)) EXPECT_TRUE(g.is_zero());
}

TEST(RecoverGenerator, RoundTripsComputeJ) {
  Gen gen(17);
  for (int trial = 0; trial < 15; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.integer(1, 2));
    Realization r = gen.realization(n, 2, false);
    auto G = recover_generator(compute_J(r, 4));
    for (std::size_t mu = 0; mu < n; ++mu) ASSERT_EQ(G[mu], r.vector_field(mu));
    ASSERT_FALSE(has_higher_corrections(G));
  }
}

TEST(RecoverGenerator, NonCommutingCompositionNeedsCorrections) {
  auto J = compose_flows(compute_J(square(), 4), compute_J(one_dim(p0()), 4));
  auto G = recover_generator(J);
  EXPECT_EQ(G[0].k_slice(1), k0() * (series_pow(p0(), 2) + p0()));
  EXPECT_TRUE(has_higher_corrections(G));
  EXPECT_EQ(lie_exponential(G, p0(4), 4), J[0]);
}

// --- lambda rescaling ------------------------------------------------------------

TEST(Rescaling, ScalingPhiReweightsKOrders) {
  Gen gen(55);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.integer(1, 2));
    Realization r = gen.realization(n, 2, true);
    Rational c = gen.rational(4);
    auto scaled = compute_flow(r.scaled(c), 4);
    auto base = compute_flow(r, 4);
    for (std::size_t mu = 0; mu < n; ++mu) ASSERT_EQ(scaled.J[mu], reweight(base.J[mu], c));
    ASSERT_EQ(scaled.h, reweight(base.h, c));
  }
}

TEST(Metric, DoesNotEnterTheFlows) {
  Gen gen(3);
  Realization r = gen.realization(2, 2, true);
  EXPECT_EQ(compute_flow(r, 4), compute_flow(r.with_metric({-1, 1}), 4));
}

}  // namespace
}  // namespace weylflow
