#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "lplab/group_vector.hpp"

namespace lplab {

// Coefficient polynomial c_0 + c_1 t + ... + c_deg t^deg. Only what the
// factor-witness construction needs: synthetic division by a linear factor.
template <class S>
struct Polynomial {
  std::vector<S> coeffs;

  void normalize() {
    while (!coeffs.empty() && ScalarTraits<S>::is_zero(coeffs.back()))
      coeffs.pop_back();
  }
  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  S evaluate(const S& t) const {
    S acc{};
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
    return acc;
  }

  // P(t) = (t - root) * Q(t) + remainder.
  std::pair<Polynomial, S> divide_linear(const S& root) const {
    Polynomial q;
    if (coeffs.size() <= 1) {
      S rem = coeffs.empty() ? S{} : coeffs[0];
      return {q, rem};
    }
    q.coeffs.assign(coeffs.size() - 1, S{});
    S carry = coeffs.back();
    for (std::size_t j = coeffs.size() - 1; j-- > 0;) {
      q.coeffs[j] = carry;
      carry = coeffs[j] + root * carry;
    }
    return {q, carry};
  }
};

namespace detail {

template <class S>
bool omega_on_unit_circle(const S& omega) {
  if constexpr (ScalarTraits<S>::is_exact) {
    return omega.has_unit_modulus();
  } else {
    return std::abs(std::abs(omega) - 1.0) <= 1e-12;
  }
}

// 1/omega; for exact unit omega this is the conjugate, which stays exact.
template <class S>
S omega_reciprocal(const S& omega) {
  if constexpr (ScalarTraits<S>::is_exact) {
    if (omega.has_unit_modulus()) return omega.conj();
    return ExactScalar(1) / omega;
  } else {
    return 1.0 / omega;
  }
}

}  // namespace detail

// Averaging data: an infinite-order g, a unit omega, and the
// averaging length n.
template <class S>
struct AveragingSpec {
  GroupSpec group;
  GroupElement g;
  S omega;
  std::int64_t n;
};

template <class S>
AveragingSpec<S> make_averaging_spec(GroupSpec group, GroupElement g, S omega,
                                     std::int64_t n) {
  if (n < 1) throw DomainError("averaging length n must be >= 1");
  if (!has_infinite_order(group, g))
    throw DomainError("averaging element needs g of infinite order");
  if (!detail::omega_on_unit_circle(omega))
    throw DomainError("averaging omega must have |omega| = 1");
  return AveragingSpec<S>{std::move(group), std::move(g), std::move(omega), n};
}

// x_n = (1/n) sum_{k=1}^n omega^{-k} g^k, supported on {g, ..., g^n} with
// every coefficient of modulus 1/n, so ||x_n||_p = n^{(1-p)/p}.
template <class S>
GroupVector<S> averaging_element(const AveragingSpec<S>& spec) {
  if (!has_infinite_order(spec.group, spec.g))
    throw DomainError("averaging element needs g of infinite order");
  S winv = detail::omega_reciprocal(spec.omega);
  S inv_n;
  if constexpr (ScalarTraits<S>::is_exact) {
    inv_n = ExactScalar(Rational(1, spec.n));
  } else {
    inv_n = S(1.0 / static_cast<double>(spec.n), 0.0);
  }
  std::vector<typename GroupVector<S>::Term> terms;
  terms.reserve(static_cast<std::size_t>(spec.n));
  GroupElement gk = spec.g;
  S wk = winv;
  for (std::int64_t k = 1; k <= spec.n; ++k) {
    terms.emplace_back(gk, wk * inv_n);
    if (k < spec.n) {
      gk = mul(spec.group, gk, spec.g);
      wk = wk * winv;
    }
  }
  return GroupVector<S>::from_terms(spec.group, std::move(terms));
}

// Exact norm law n^{(1-p)/p} for reference columns.
inline double averaging_norm_law(std::int64_t n, double p) {
  return std::pow(static_cast<double>(n), (1.0 - p) / p);
}

// The group-ring element g - omega (as a vector: delta_g - omega*delta_e).
template <class S>
GroupVector<S> linear_factor(const GroupSpec& group, const GroupElement& g,
                             const S& omega) {
  return GroupVector<S>::delta(group, g) +
         (-omega) * GroupVector<S>::delta(group, identity(group));
}

// Solves 1 - x_n = (g - omega) d by synthetic division of the coefficient
// polynomial by (t - omega); exact coefficients, and the remainder must
// vanish identically. The returned d satisfies the identity exactly, which
// callers can (and tests do) re-verify by convolution.
inline GroupVector<ExactScalar> factor_witness(
    const AveragingSpec<ExactScalar>& spec) {
  if (!spec.omega.has_unit_modulus())
    throw DomainError("factor witness needs an exact unit omega");
  ExactScalar winv = spec.omega.conj();
  ExactScalar inv_n(Rational(1, spec.n));
  Polynomial<ExactScalar> poly;
  poly.coeffs.assign(static_cast<std::size_t>(spec.n) + 1, ExactScalar{});
  poly.coeffs[0] = ExactScalar(1);
  ExactScalar wk = winv;
  for (std::int64_t k = 1; k <= spec.n; ++k) {
    poly.coeffs[static_cast<std::size_t>(k)] = -(wk * inv_n);
    wk = wk * winv;
  }
  auto [quotient, remainder] = poly.divide_linear(spec.omega);
  if (!remainder.is_zero())
    throw InternalError("factor witness division left a nonzero remainder");
  std::vector<GroupVector<ExactScalar>::Term> terms;
  terms.reserve(quotient.coeffs.size());
  GroupElement gj = identity(spec.group);
  for (std::size_t j = 0; j < quotient.coeffs.size(); ++j) {
    if (!quotient.coeffs[j].is_zero()) terms.emplace_back(gj, quotient.coeffs[j]);
    if (j + 1 < quotient.coeffs.size()) gj = mul(spec.group, gj, spec.g);
  }
  return GroupVector<ExactScalar>::from_terms(spec.group, std::move(terms));
}

template <class S>
struct NeumannResult {
  GroupVector<S> inverse;    // truncated Neumann series u_K
  GroupVector<S> residual;   // (g - omega) u_K - 1
  double residual_one_norm;  // equals |omega|^{-(K+1)} (|omega| > 1) or
                             // |omega|^{K+1} (|omega| < 1)
};

// Truncated geometric-series inverse of (g - omega) in l^1<g>; only valid
// off the unit circle.
template <class S>
NeumannResult<S> neumann_inverse(const GroupSpec& group, const GroupElement& g,
                                 const S& omega, std::int64_t K) {
  if (K < 0) throw DomainError("neumann_inverse: K must be >= 0");
  if (!has_infinite_order(group, g))
    throw DomainError("neumann_inverse needs g of infinite order");
  if (detail::omega_on_unit_circle(omega))
    throw DomainError(
        "neumann_inverse: (g - omega) with |omega| = 1 is not invertible "
        "in l^1");
  bool outside;  // |omega| > 1: expand in g; otherwise in g^-1
  if constexpr (ScalarTraits<S>::is_exact) {
    outside = omega.abs_squared() > Rational(1);
  } else {
    outside = std::abs(omega) > 1.0;
  }
  std::vector<typename GroupVector<S>::Term> terms;
  terms.reserve(static_cast<std::size_t>(K) + 1);
  if (outside) {
    // u_K = -sum_{k=0}^K g^k / omega^{k+1}
    S winv = ScalarTraits<S>::one() / omega;
    GroupElement gk = identity(group);
    S c = winv;
    for (std::int64_t k = 0; k <= K; ++k) {
      terms.emplace_back(gk, -c);
      if (k < K) {
        gk = mul(group, gk, g);
        c = c * winv;
      }
    }
  } else {
    // u_K = sum_{k=0}^K omega^k g^{-(k+1)}
    GroupElement gi = inv(group, g);
    GroupElement gk = gi;
    S c = ScalarTraits<S>::one();
    for (std::int64_t k = 0; k <= K; ++k) {
      terms.emplace_back(gk, c);
      if (k < K) {
        gk = mul(group, gk, gi);
        c = c * omega;
      }
    }
  }
  NeumannResult<S> out{
      GroupVector<S>::from_terms(group, std::move(terms)),
      GroupVector<S>::zero(group), 0.0};
  out.residual = convolve(linear_factor(group, g, omega), out.inverse) -
                 GroupVector<S>::delta(group, identity(group));
  out.residual_one_norm = one_norm(out.residual);
  return out;
}

}  // namespace lplab
