#include "weylflow/flows.hpp"

#include <algorithm>
#include <string>

#include "weylflow/errors.hpp"

namespace weylflow {

namespace {

// L(f) = field_beta * df/dp_beta
GradedSeries apply_field(std::span<const GradedSeries> field, const GradedSeries& f) {
  GradedSeries out(f.n(), f.kmax(), f.pmax());
  for (std::size_t beta = 0; beta < field.size(); ++beta) {
    if (field[beta].is_zero()) continue;
    GradedSeries d = series_dp(f, beta);
    if (d.is_zero()) continue;
    out += field[beta].truncated(f.kmax()) * d;
  }
  return out;
}

std::vector<GradedSeries> field_of(const Realization& r) {
  std::vector<GradedSeries> field;
  for (std::size_t mu = 0; mu < r.n(); ++mu) field.push_back(r.vector_field(mu));
  return field;
}

// sum_{m>=0} L^m(g)/(m+1)!
GradedSeries phi_combinator(std::span<const GradedSeries> field, const GradedSeries& g, int kmax) {
  GradedSeries term = g.truncated(kmax);
  GradedSeries sum = term;
  for (int m = 1; m <= kmax && !term.is_zero(); ++m) {
    term = apply_field(field, term);
    term *= ExactScalar(Rational(1, m + 1));
    sum += term;
  }
  return sum;
}

void require_flow_shape(std::span<const GradedSeries> J, const char* what) {
  for (std::size_t mu = 0; mu < J.size(); ++mu) {
    if (J[mu].n() != J.size()) throw DimensionMismatch(std::string(what) + ": flow needs n components");
    if (!has_identity_boundary(J[mu], mu)) {
      throw ShapeError(std::string(what) + ": component " + std::to_string(mu) + " is not p_mu + O(k)");
    }
  }
}

int common_kmax(std::span<const GradedSeries> J) {
  int kmax = kUnbounded;
  for (const auto& s : J) kmax = std::min(kmax, s.kmax());
  return kmax;
}

}  // namespace

GradedSeries apply_O(const Realization& r, const GradedSeries& f) {
  if (f.n() != r.n()) throw DimensionMismatch("apply_O: series and realization dimensions differ");
  auto field = field_of(r);
  return apply_field(field, f);
}

GradedSeries lie_exponential(std::span<const GradedSeries> field, const GradedSeries& f, int kmax) {
  for (const auto& v : field) {
    auto d = v.min_k_degree();
    if (d && *d < 1) throw std::invalid_argument("lie_exponential: field must have positive k-degree");
  }
  GradedSeries term = f.truncated(kmax);
  GradedSeries sum = term;
  for (int m = 1; m <= kmax && !term.is_zero(); ++m) {
    term = apply_field(field, term);
    term *= ExactScalar(Rational(1, m));
    sum += term;
  }
  return sum;
}

std::vector<GradedSeries> identity_flow(std::size_t n, int kmax) {
  std::vector<GradedSeries> J;
  for (std::size_t mu = 0; mu < n; ++mu) J.push_back(GradedSeries::p_var(n, mu, kmax));
  return J;
}

std::vector<GradedSeries> compute_J(const Realization& r, int kmax) {
  if (kmax < 0) throw std::invalid_argument("kmax must be non-negative");
  auto field = field_of(r);
  std::vector<GradedSeries> J;
  for (std::size_t mu = 0; mu < r.n(); ++mu) {
    J.push_back(lie_exponential(field, GradedSeries::p_var(r.n(), mu, kmax), kmax));
  }
  return J;
}

std::vector<GradedSeries> compute_phi(const Realization& r, int kmax) {
  auto J = compute_J(r, kmax);
  auto field = field_of(r);
  std::vector<GradedSeries> phi;
  for (std::size_t mu = 0; mu < r.n(); ++mu) {
    GradedSeries from_J = J[mu] - GradedSeries::p_var(r.n(), mu, kmax);
    GradedSeries from_combinator = phi_combinator(field, r.vector_field(mu), kmax);
    if (!(from_J == from_combinator)) {
      throw ConsistencyError("phi_" + std::to_string(mu) + ": J - p and (e^O - 1)/O disagree");
    }
    phi.push_back(std::move(from_J));
  }
  return phi;
}

GradedSeries compute_h(const Realization& r, int kmax) {
  if (kmax < 0) throw std::invalid_argument("kmax must be non-negative");
  auto field = field_of(r);
  return phi_combinator(field, r.chi_source().truncated(kmax), kmax);
}

FlowResult compute_flow(const Realization& r, int kmax) {
  FlowResult fr;
  fr.kmax = kmax;
  fr.phi = compute_phi(r, kmax);
  for (std::size_t mu = 0; mu < r.n(); ++mu) fr.J.push_back(GradedSeries::p_var(r.n(), mu, kmax) + fr.phi[mu]);
  fr.h = compute_h(r, kmax);
  auto real = [](const GradedSeries& s) { return s.is_real(); };
  if (!std::all_of(fr.J.begin(), fr.J.end(), real) || !fr.h.is_real()) {
    throw ConsistencyError("flow series acquired an imaginary part");
  }
  return fr;
}

namespace {

// The source term carries an explicit factor of k, so J is only needed to kmax - 1.
std::vector<GradedSeries> below_top_order(std::span<const GradedSeries> J, int kmax) {
  std::vector<GradedSeries> low;
  for (const auto& s : J) low.push_back(s.truncated(std::max(kmax - 1, 0)));
  return low;
}

// k_beta * X for X known to order kmax - 1; the product is known to order kmax.
GradedSeries times_k(std::size_t beta, const GradedSeries& X, int kmax) {
  GradedSeries out(X.n(), kmax);
  const MultiIndex shift = MultiIndex::unit(X.n(), beta);
  for (const auto& [key, c] : X.terms()) out.add_term(key.k + shift, key.p, c);
  return out;
}

}  // namespace

std::vector<GradedSeries> ode_residual_J(const Realization& r, std::span<const GradedSeries> J) {
  if (J.size() != r.n()) throw DimensionMismatch("ode_residual_J: J needs n components");
  const std::size_t n = r.n();
  const int kmax = common_kmax(J);
  const std::vector<GradedSeries> low = below_top_order(J, kmax);
  std::vector<GradedSeries> residual;
  for (std::size_t mu = 0; mu < n; ++mu) {
    GradedSeries res = series_euler_k(J[mu].truncated(kmax));
    for (std::size_t beta = 0; beta < n && kmax > 0; ++beta) {
      const GradedSeries& f = r.phi(mu, beta);
      if (f.is_zero()) continue;
      res -= times_k(beta, series_substitute_p(f, low), kmax);
    }
    residual.push_back(std::move(res));
  }
  return residual;
}

GradedSeries ode_residual_h(const Realization& r, std::span<const GradedSeries> J, const GradedSeries& h) {
  if (J.size() != r.n() || h.n() != r.n()) throw DimensionMismatch("ode_residual_h: dimensions differ");
  const std::size_t n = r.n();
  const int kmax = std::min(common_kmax(J), h.kmax());
  GradedSeries res = series_euler_k(h.truncated(kmax));
  const std::vector<GradedSeries> low = below_top_order(J, kmax);
  for (std::size_t beta = 0; beta < n && kmax > 0; ++beta) {
    if (r.chi(beta).is_zero()) continue;
    res -= times_k(beta, series_substitute_p(r.chi(beta), low), kmax);
  }
  return res;
}

std::vector<GradedSeries> third_order_J(const Realization& r) {
  constexpr int kOrder = 3;
  const std::size_t n = r.n();
  auto k = [&](std::size_t a) { return GradedSeries::k_var(n, a, kOrder); };

  std::vector<GradedSeries> J;
  for (std::size_t mu = 0; mu < n; ++mu) {
    // k_alpha phi_{mu alpha}
    GradedSeries first(n, kOrder);
    for (std::size_t alpha = 0; alpha < n; ++alpha) first += k(alpha) * r.phi(mu, alpha);

    // k_a' phi_{b' a'} d/dp_b' (first)
    GradedSeries second(n, kOrder);
    for (std::size_t a1 = 0; a1 < n; ++a1) {
      for (std::size_t b1 = 0; b1 < n; ++b1) second += k(a1) * r.phi(b1, a1) * series_dp(first, b1);
    }

    // k_a'' phi_{b'' a''} d/dp_b'' (second)
    GradedSeries third(n, kOrder);
    for (std::size_t a2 = 0; a2 < n; ++a2) {
      for (std::size_t b2 = 0; b2 < n; ++b2) third += k(a2) * r.phi(b2, a2) * series_dp(second, b2);
    }

    GradedSeries total = GradedSeries::p_var(n, mu, kOrder) + first;
    total += second * ExactScalar(Rational(1, 2));
    total += third * ExactScalar(Rational(1, 6));
    J.push_back(std::move(total));
  }
  return J;
}

std::vector<GradedSeries> linear_closed_form(const LinearRealization& lr, int kmax) {
  if (kmax < 0) throw std::invalid_argument("kmax must be non-negative");
  const std::size_t n = lr.n();
  const auto& A = lr.matrix();
  std::vector<std::vector<Rational>> power(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) power[i][i] = 1;

  std::vector<GradedSeries> phi(n, GradedSeries(n, kmax));
  Rational inv_factorial(1);
  for (int m = 1; m <= kmax; ++m) {
    std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        if (sgn(power[i][l]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) next[i][j] += power[i][l] * A[l][j];
      }
    }
    power = std::move(next);
    inv_factorial /= m;
    for (std::size_t mu = 0; mu < n; ++mu) {
      for (std::size_t beta = 0; beta < n; ++beta) {
        phi[mu].add_term(MultiIndex::unit(n, 0, static_cast<unsigned>(m)), MultiIndex::unit(n, beta),
                         ExactScalar(Rational(power[mu][beta] * inv_factorial)));
      }
    }
  }
  return phi;
}

std::vector<GradedSeries> compose_flows(std::span<const GradedSeries> J1, std::span<const GradedSeries> J2) {
  if (J1.size() != J2.size()) throw DimensionMismatch("compose_flows: flows have different dimensions");
  require_flow_shape(J1, "compose_flows");
  require_flow_shape(J2, "compose_flows");
  std::vector<GradedSeries> J3;
  for (const auto& component : J1) J3.push_back(series_substitute_p(component, J2));
  return J3;
}

std::vector<GradedSeries> recover_generator(std::span<const GradedSeries> J) {
  require_flow_shape(J, "recover_generator");
  const std::size_t n = J.size();
  const int kmax = common_kmax(J);

  std::vector<GradedSeries> G;
  for (std::size_t mu = 0; mu < n; ++mu) G.push_back(J[mu].k_slice(1).truncated(kmax));

  for (int order = 2; order <= kmax; ++order) {
    std::vector<GradedSeries> correction;
    for (std::size_t mu = 0; mu < n; ++mu) {
      GradedSeries flowed = lie_exponential(G, GradedSeries::p_var(n, mu, kmax), kmax);
      correction.push_back((J[mu] - flowed).k_slice(order));
    }
    for (std::size_t mu = 0; mu < n; ++mu) G[mu] += correction[mu];
  }

  for (std::size_t mu = 0; mu < n; ++mu) {
    if (!(lie_exponential(G, GradedSeries::p_var(n, mu, kmax), kmax) == J[mu].truncated(kmax))) {
      throw ConsistencyError("recover_generator: generator does not reproduce the flow");
    }
  }
  return G;
}

bool has_higher_corrections(std::span<const GradedSeries> G) {
  return std::any_of(G.begin(), G.end(), [](const GradedSeries& g) {
    auto d = g.max_k_degree();
    return d && *d > 1;
  });
}

}  // namespace weylflow
