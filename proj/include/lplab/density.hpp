#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "lplab/averaging.hpp"
#include "lplab/group_vector.hpp"

namespace lplab {

template <class S>
struct DensityReport {
  std::int64_t n = 0;
  double p = 0;
  double epsilon = 0;
  double b_one_norm = 0;
  double recipe_bound = 0;     // epsilon / (2 ||b||_1)
  double xn_norm = 0;          // ||x_n||_p, equals n^{(1-p)/p}
  double achieved_error = 0;   // ||x_n b||_p
  VectorTuple<S> approximant;  // (1 - x_n) b  (lies in (g-omega)B)
  VectorTuple<S> witness;      // d b with (g-omega)(d b) = (1-x_n) b
  bool witness_verified = false;
  std::size_t residual_support = 0;
};

// Smallest n with ||x_n||_p = n^{(1-p)/p} strictly below `bound`.
inline std::int64_t density_recipe_n(double bound, double p,
                                     std::int64_t n_cap) {
  if (!(bound > 0)) throw DomainError("density recipe: bound must be > 0");
  double exponent = p / (p - 1.0);
  double raw = std::pow(1.0 / bound, exponent);
  if (raw > static_cast<double>(n_cap))
    throw ResourceLimitError("density recipe n exceeds cap");
  std::int64_t n = std::max<std::int64_t>(1, static_cast<std::int64_t>(raw));
  while (averaging_norm_law(n, p) >= bound) {
    ++n;
    if (n > n_cap) throw ResourceLimitError("density recipe n exceeds cap");
  }
  return n;
}

// One-factor density step at a finitely supported b: pick n so
// that ||x_n||_p < eps/(2||b||_1), form (1-x_n)b, and exhibit the exact
// membership witness d b. For exact scalars the witness identity is checked
// by exact convolution; for float it is checked to 1e-9.
template <class S>
DensityReport<S> density_experiment(
    const VectorTuple<S>& b, const GroupSpec& group, const GroupElement& g,
    const S& omega, double p, double epsilon,
    std::optional<std::int64_t> forced_n = std::nullopt,
    std::int64_t n_cap = std::int64_t(1) << 23) {
  detail::check_p(p);
  if (!(epsilon > 0)) throw DomainError("density: epsilon must be > 0");
  DensityReport<S> r{0, p, epsilon, 0, 0, 0, 0, VectorTuple<S>(group),
                     VectorTuple<S>(group), false, 0};
  r.b_one_norm = one_norm(b);
  if (r.b_one_norm == 0.0) {
    // b = 0: every n works trivially; keep n = 1.
    r.n = forced_n.value_or(1);
  } else {
    r.recipe_bound = epsilon / (2.0 * r.b_one_norm);
    r.n = forced_n ? *forced_n : density_recipe_n(r.recipe_bound, p, n_cap);
  }
  auto spec = make_averaging_spec(group, g, omega, r.n);
  VectorTuple<S> xnb(group);
  {
    GroupVector<S> xn = averaging_element(spec);
    r.xn_norm = p_norm(xn, p);
    xnb = convolve(xn, b);
  }
  r.achieved_error = p_norm(xnb, p);
  r.approximant = b - xnb;
  {
    GroupVector<S> d = [&] {
      if constexpr (ScalarTraits<S>::is_exact) {
        return factor_witness(spec);
      } else {
        // Float mode: same coefficients d_j = -(n-j) omega^{-(j+1)} / n.
        std::vector<typename GroupVector<S>::Term> terms;
        S winv = detail::omega_reciprocal(omega);
        S wk = winv;
        GroupElement gj = identity(group);
        for (std::int64_t j = 0; j < r.n; ++j) {
          double mag = -static_cast<double>(r.n - j) / static_cast<double>(r.n);
          terms.emplace_back(gj, S(mag, 0.0) * wk);
          if (j + 1 < r.n) {
            gj = mul(group, gj, g);
            wk = wk * winv;
          }
        }
        return GroupVector<S>::from_terms(group, std::move(terms));
      }
    }();
    r.witness = convolve(d, b);
  }
  GroupVector<S> factor = linear_factor(group, g, omega);
  r.witness_verified = true;
  for (std::size_t k = 0; k < b.arity(); ++k) {
    GroupVector<S> lhs = convolve(factor, r.witness.components[k]);
    GroupVector<S> diff = lhs - r.approximant.components[k];
    if constexpr (ScalarTraits<S>::is_exact) {
      r.residual_support += diff.support_size();
      if (!diff.is_zero()) r.witness_verified = false;
    } else {
      if (one_norm(diff) > 1e-9) {
        r.residual_support += diff.support_size();
        r.witness_verified = false;
      }
    }
  }
  return r;
}

template <class S>
DensityReport<S> density_experiment(
    const GroupVector<S>& b, const GroupSpec& group, const GroupElement& g,
    const S& omega, double p, double epsilon,
    std::optional<std::int64_t> forced_n = std::nullopt,
    std::int64_t n_cap = std::int64_t(1) << 23) {
  return density_experiment(VectorTuple<S>::single(b), group, g, omega, p,
                            epsilon, forced_n, n_cap);
}

template <class S>
struct ComposedStage {
  S omega;
  std::int64_t n = 0;
  double target = 0;
  double achieved = 0;  // ||x_n u_{i-1}||_p
  bool witness_exact = false;
};

template <class S>
struct ComposedDensityReport {
  double p = 0;
  double epsilon = 0;
  std::vector<ComposedStage<S>> stages;
  VectorTuple<S> witness;  // u with || b - prod_i (g - omega_i) u ||_p < eps
  double achieved_error = 0;
  bool witness_verified = false;
};

namespace detail {

// One composed-density stage: adaptively doubles n = 2^t until
// ||x_n u||_p < target,
// maintaining x_n u and d_n u incrementally via
//   x_{2n} = (x_n + w^{-n} g^n x_n)/2
//   d_{2n} = (d_n + w^{-n} g^n d_n)/2 - (w^{-n}/2) geo_n,
//   geo_{2n} = (w^n + g^n) geo_n,   geo_n = sum_{j<n} w^{n-1-j} g^j,
// so the cost stays near-linear in the final supports instead of the
// quadratic direct convolution d_n * u.
template <class S>
ComposedStage<S> density_stage(const GroupSpec& group, const GroupElement& g,
                               const S& omega, const VectorTuple<S>& u,
                               double p, double target, std::int64_t n_cap,
                               VectorTuple<S>& witness_out,
                               VectorTuple<S>& xnu_out) {
  ComposedStage<S> st{omega, 1, target, 0, false};
  S winv = omega_reciprocal(omega);
  S half;
  if constexpr (ScalarTraits<S>::is_exact) {
    half = ExactScalar(Rational(1, 2));
  } else {
    half = S(0.5, 0.0);
  }
  // n = 1 state.
  VectorTuple<S> xnu = (winv * left_translate(g, u));
  VectorTuple<S> dnu = ((-winv) * u);
  VectorTuple<S> geo = u;
  GroupElement gn = g;  // g^n
  S wn = omega;         // omega^n
  S wninv = winv;       // omega^{-n}
  std::int64_t n = 1;
  while (p_norm(xnu, p) >= target) {
    if (2 * n > n_cap)
      throw ResourceLimitError("composed density stage exceeded n cap");
    VectorTuple<S> shifted_x = (wninv * left_translate(gn, xnu));
    xnu = half * (xnu + shifted_x);
    VectorTuple<S> shifted_d = (wninv * left_translate(gn, dnu));
    dnu = half * (dnu + shifted_d) - (half * wninv) * geo;
    geo = wn * geo + left_translate(gn, geo);
    gn = mul(group, gn, gn);
    wn = wn * wn;
    wninv = wninv * wninv;
    n *= 2;
  }
  st.n = n;
  st.achieved = p_norm(xnu, p);
  witness_out = std::move(dnu);
  xnu_out = std::move(xnu);
  return st;
}

}  // namespace detail

// Epsilon-halving chain for the product F(g) = prod_i (g - omega_i):
// stage i approximates the previous stage's witness with per-stage target
// eps / (2^{i+1} prod_{j<i} ||g - omega_j||_1), so the telescoped error is
// below eps. Per-stage witness identities (g - omega_i) u_i = u_{i-1} -
// x_{n_i} u_{i-1} are re-verified, exactly in exact mode.
template <class S>
ComposedDensityReport<S> composed_density(
    const VectorTuple<S>& b, const GroupSpec& group, const GroupElement& g,
    const std::vector<S>& omegas, double p, double epsilon,
    std::int64_t n_cap = std::int64_t(1) << 23) {
  detail::check_p(p);
  if (!(epsilon > 0)) throw DomainError("density: epsilon must be > 0");
  ComposedDensityReport<S> r{p, epsilon, {}, b, 0, true};
  if (omegas.empty()) {
    r.achieved_error = 0.0;
    return r;
  }
  for (const auto& w : omegas)
    if (!detail::omega_on_unit_circle(w))
      throw DomainError("composed density: |omega| = 1 required");
  if (!has_infinite_order(group, g))
    throw DomainError("composed density needs g of infinite order");

  VectorTuple<S> u = b;
  double norm_product = 1.0;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    double target =
        epsilon / (std::pow(2.0, static_cast<double>(i) + 1.0) * norm_product);
    VectorTuple<S> witness(group), xnu(group);
    auto st = detail::density_stage(group, g, omegas[i], u, p, target, n_cap,
                                    witness, xnu);
    // Witness identity for this stage.
    GroupVector<S> factor = linear_factor(group, g, omegas[i]);
    st.witness_exact = true;
    for (std::size_t k = 0; k < u.arity(); ++k) {
      GroupVector<S> diff = convolve(factor, witness.components[k]) -
                            (u.components[k] - xnu.components[k]);
      if constexpr (ScalarTraits<S>::is_exact) {
        if (!diff.is_zero()) st.witness_exact = false;
      } else {
        if (one_norm(diff) > 1e-9) st.witness_exact = false;
      }
    }
    if (!st.witness_exact) r.witness_verified = false;
    norm_product *= one_norm(factor);
    r.stages.push_back(st);
    u = std::move(witness);
  }
  r.witness = u;
  // Residual b - prod_i (g - omega_i) u, applied right to left.
  VectorTuple<S> acc = r.witness;
  for (std::size_t i = omegas.size(); i-- > 0;)
    acc = convolve(linear_factor(group, g, omegas[i]), acc);
  r.achieved_error = p_norm(b - acc, p);
  if (!(r.achieved_error < epsilon)) r.witness_verified = false;
  return r;
}

}  // namespace lplab
