#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "support/generators.hpp"
#include "weylflow/applications.hpp"
#include "weylflow/errors.hpp"
#include "weylflow/flows.hpp"

namespace weylflow {
namespace {

using testing::Gen;

GradedSeries p0() { return GradedSeries::p_var(1, 0); }

Realization one_dim(const GradedSeries& phi, const GradedSeries& chi = GradedSeries(1)) {
  return Realization(1, {1}, {{phi}}, {chi});
}

// Reference p/(1 - kq) expansion of the l=2 family, summed in closed form.
double square_closed(double k, double q) { return q / (1.0 - k * q); }

// --- plane waves -----------------------------------------------------------------

TEST(PlaneWave, ZeroKIsIdentity) {
  Gen gen(1);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.integer(1, 3));
    Realization r = gen.realization(n, 2, true);
    std::vector<double> k(n, 0.0);
    std::vector<double> q(n);
    for (auto& v : q) v = gen.integer(-50, 50) / 7.0;
    auto image = act_on_plane_wave(r, k, q, 3);
    EXPECT_EQ(image.Jq, q);
    EXPECT_EQ(image.hq, 0.0);
    EXPECT_EQ(image.kmax_used, 3);
  }
}

TEST(PlaneWave, LinearScalarIsExponential) {
  std::vector<double> k{0.1};
  std::vector<double> q{2.0};
  auto image = act_on_plane_wave(one_dim(p0()), k, q, 10);
  EXPECT_NEAR(image.Jq[0], 2.0 * std::exp(0.1), 1e-6);
  EXPECT_EQ(image.hq, 0.0);
}

TEST(PlaneWave, SquareConvergesToGeometricSum) {
  std::vector<double> k{0.1};
  std::vector<double> q{2.0};
  auto image = act_on_plane_wave(one_dim(series_pow(p0(), 2)), k, q, 12);
  EXPECT_NEAR(image.Jq[0], 2.5, 1e-4);
}

TEST(PlaneWave, LogPhase) {
  // phi = p^2, chi = p: h = -log(1 - k q).
  std::vector<double> k{0.05};
  std::vector<double> q{1.5};
  auto image = act_on_plane_wave(one_dim(series_pow(p0(), 2), p0()), k, q, 14);
  EXPECT_NEAR(image.hq, -std::log(1.0 - 0.075), 1e-12);
}

TEST(PlaneWave, DimensionMismatchThrows) {
  std::vector<double> k{0.1, 0.2};
  std::vector<double> q{1.0};
  EXPECT_THROW(act_on_plane_wave(one_dim(p0()), k, q, 3), DimensionMismatch);
}

TEST(PlaneWave, MonotoneConvergenceForSquare) {
  auto fr = compute_flow(one_dim(series_pow(p0(), 2)), 12);
  for (double k : {-0.2, -0.05, 0.03, 0.1, 0.125}) {
    for (double q : {-2.0, -1.0, 0.5, 2.0}) {
      if (std::abs(k * q) > 0.25) continue;
      double previous = INFINITY;
      for (int kmax : {4, 6, 8, 10, 12}) {
        FlowResult cut{{fr.J[0].truncated(kmax)}, {fr.phi[0].truncated(kmax)}, fr.h.truncated(kmax), kmax};
        std::vector<double> kv{k};
        std::vector<double> qv{q};
        double err = std::abs(evaluate_plane_wave(cut, kv, qv).Jq[0] - square_closed(k, q));
        // Once the truncation error reaches double roundoff it can only stall.
        if (previous > 1e-14) {
          ASSERT_LT(err, previous) << "k=" << k << " q=" << q << " kmax=" << kmax;
        } else {
          ASSERT_LE(err, 1e-14);
        }
        previous = err;
      }
    }
  }
}

TEST(PlaneWave, JsonLine) {
  std::vector<double> k{0.0};
  std::vector<double> q{2.0};
  auto image = act_on_plane_wave(one_dim(p0()), k, q, 4);
  EXPECT_EQ(to_json(image, k, q).dump(), R"({"k":[0.0],"q":[2.0],"J":[2.0],"h":0.0,"kmax":4})");
}

// --- power-law family --------------------------------------------------------------

TEST(PowerLaw, CubicSecondOrder) {
  auto nr = power_law_family(3, 2);
  GradedSeries expected(1, 2);
  expected.add_term(MultiIndex{0}, MultiIndex{1}, ExactScalar(1L));
  expected.add_term(MultiIndex{1}, MultiIndex{3}, ExactScalar(1L));
  expected.add_term(MultiIndex{2}, MultiIndex{5}, ExactScalar(Rational(3, 2)));
  EXPECT_EQ(nr.closed_form_series(2)[0], expected);
  EXPECT_EQ(compute_J(nr.realization, 2)[0], expected);
}

TEST(PowerLaw, SquareIsGeometric) {
  auto J = power_law_family(2, 5).closed_form_series(5)[0];
  for (unsigned r = 0; r <= 5; ++r) EXPECT_EQ(J.coefficient(MultiIndex{r}, MultiIndex{r + 1}), ExactScalar(1L));
  EXPECT_EQ(J.size(), 6U);
}

TEST(PowerLaw, OrderZeroIsIdentity) {
  for (unsigned l = 2; l <= 6; ++l) EXPECT_EQ(power_law_family(l, 0).closed_form_series(0)[0], p0());
}

TEST(PowerLaw, RejectsSmallExponent) {
  EXPECT_THROW(power_law_family(1, 3), std::invalid_argument);
  EXPECT_THROW(power_law_family(0, 3), std::invalid_argument);
}

TEST(PowerLaw, NumericClosedFormAgreesWithSeries) {
  for (unsigned l = 2; l <= 4; ++l) {
    auto nr = power_law_family(l, 10);
    std::vector<double> k{0.02};
    std::vector<double> q{1.3};
    double series = series_eval(compute_J(nr.realization, 10)[0], k, q).real();
    EXPECT_NEAR(series, nr.closed_form_J(k, q)[0], 1e-9) << "l=" << l;
  }
}

// --- built-ins -------------------------------------------------------------------

TEST(Builtins, NamesAreUniqueAndFindable) {
  const auto& all = builtin_realizations();
  ASSERT_GE(all.size(), 5U);
  for (const auto& nr : all) {
    ASSERT_NE(find_builtin(nr.name), nullptr);
    EXPECT_EQ(find_builtin(nr.name)->name, nr.name);
    EXPECT_FALSE(nr.description.empty());
  }
  EXPECT_EQ(find_builtin("no-such-thing"), nullptr);
}

TEST(Builtins, ClosedFormsMatchEngineUpToOrderEight) {
  for (const auto& nr : builtin_realizations()) {
    if (!nr.closed_form_series) continue;
    for (int kmax = 0; kmax <= 8; ++kmax) {
      ASSERT_EQ(compute_J(nr.realization, kmax), nr.closed_form_series(kmax)) << nr.name << " kmax " << kmax;
    }
  }
}

TEST(Builtins, NumericClosedFormsMatchSeries) {
  for (const auto& nr : builtin_realizations()) {
    if (!nr.closed_form_J) continue;
    const std::size_t n = nr.realization.n();
    std::vector<double> k(n, 0.03);
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = 0.7 + 0.4 * static_cast<double>(i);
    auto J = compute_J(nr.realization, 10);
    auto ref = nr.closed_form_J(k, q);
    for (std::size_t mu = 0; mu < n; ++mu) EXPECT_NEAR(series_eval(J[mu], k, q).real(), ref[mu], 1e-9) << nr.name;
  }
}

// --- composition -------------------------------------------------------------------

TEST(Composition, WithNegationIsIdentity) {
  Realization r = one_dim(series_pow(p0(), 2) + p0());
  auto report = composition_demo(r, r.negated(), 4);
  EXPECT_EQ(report.J3, identity_flow(1, 4));
  for (const auto& g : report.generator) EXPECT_TRUE(g.is_zero());
  EXPECT_FALSE(report.higher_corrections);
  EXPECT_TRUE(report.oracle_equal);
}

TEST(Composition, ScalarLinearFlowsAdd) {
  const Rational a(2, 3);
  const Rational b(-5, 2);
  auto report = composition_demo(one_dim(p0() * ExactScalar(a)), one_dim(p0() * ExactScalar(b)), 5);
  ASSERT_EQ(report.generator.size(), 1U);
  EXPECT_EQ(report.generator[0], GradedSeries::k_var(1, 0) * p0() * ExactScalar(a + b));
  EXPECT_FALSE(report.higher_corrections);
  EXPECT_TRUE(report.oracle_equal);
}

TEST(Composition, NonCommutingPair) {
  auto report = composition_demo(one_dim(series_pow(p0(), 2)), one_dim(p0()), 4);
  EXPECT_EQ(report.generator[0].k_slice(1), GradedSeries::k_var(1, 0) * (series_pow(p0(), 2) + p0()));
  EXPECT_TRUE(report.higher_corrections);
  EXPECT_TRUE(report.oracle_equal);
  EXPECT_FALSE(report.discrepancy.has_value());
}

TEST(Composition, RandomPairs) {
  Gen gen(314);
  for (int trial = 0; trial < 10; ++trial) {
    Realization r1 = gen.realization(1, 2, false);
    Realization r2 = gen.realization(1, 2, false);
    auto report = composition_demo(r1, r2, 4);
    ASSERT_TRUE(report.oracle_equal) << "trial " << trial;
    ASSERT_EQ(report.generator[0].k_slice(1), r1.vector_field(0) + r2.vector_field(0));
  }
}

TEST(Composition, RejectsChiAndMismatch) {
  EXPECT_THROW(composition_demo(one_dim(p0(), p0()), one_dim(p0()), 3), std::invalid_argument);
  Realization two(2, {1, 1}, {{GradedSeries(2), GradedSeries(2)}, {GradedSeries(2), GradedSeries(2)}}, {});
  EXPECT_THROW(composition_demo(one_dim(p0()), two, 3), DimensionMismatch);
}

}  // namespace
}  // namespace weylflow
