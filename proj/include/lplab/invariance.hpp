#pragma once

#include <memory>
#include <vector>

#include "lplab/density.hpp"
#include "lplab/graph_function.hpp"

namespace lplab {

// Left translation f_h(g) = f(hg). On vectors this is left multiplication
// by delta_{h^-1}; p-norms are preserved.
template <class S>
GroupVector<S> translate(const GroupVector<S>& f, const GroupElement& h) {
  return left_translate(inv(f.group(), h), f);
}

// GraphFunction version; requires h * ball to stay inside the ball (true
// for full finite balls and h = e; otherwise the translated window
// overflows and is reported as an error).
inline GraphFunction translate(const GraphFunction& f, const GroupElement& h) {
  const CayleyBall& b = f.ball();
  Eigen::VectorXd vals(static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) {
    GroupElement hg = mul(b.group(), h, b.vertex(i));
    std::int32_t j = b.index_of(hg);
    if (j < 0)
      throw DomainError("translate: translated support leaves the ball");
    vals[static_cast<Eigen::Index>(i)] = f.value(static_cast<std::size_t>(j));
  }
  return GraphFunction(f.ball_ptr(), std::move(vals));
}

struct TranslationAction {
  GroupElement h;  // side: left
  template <class F>
  F apply(const F& f) const {
    return translate(f, h);
  }
};

// Signed combination of difference terms c * ((base)_h - base); the exact
// certificate that a vector lies in the span Diff.
struct DiffTerm {
  GroupElement h;
  GroupVector<ExactScalar> base;
  ExactScalar coeff;
};

struct DiffDecomposition {
  GroupSpec group;
  std::vector<DiffTerm> terms;

  GroupVector<ExactScalar> reconstruct() const {
    auto acc = GroupVector<ExactScalar>::zero(group);
    for (const auto& t : terms)
      acc = acc + t.coeff * (translate(t.base, t.h) - t.base);
    return acc;
  }
};

// Exact membership in Diff: a finitely supported f with zero coefficient
// sum equals sum_{x in supp, x != e} f(x) ((delta_e)_{x^-1} - delta_e).
inline DiffDecomposition diff_decompose(const GroupVector<ExactScalar>& f) {
  if (!f.augmentation().is_zero())
    throw DomainError(
        "diff_decompose: coefficient sum is nonzero, f is not exactly in the "
        "Diff span; use approximate_by_diff");
  const GroupSpec& g = f.group();
  DiffDecomposition out{g, {}};
  auto e = identity(g);
  auto delta_e = GroupVector<ExactScalar>::delta(g, e);
  for (const auto& t : f.terms()) {
    if (t.first == e) continue;
    out.terms.push_back(DiffTerm{inv(g, t.first), delta_e, t.second});
  }
  if (out.reconstruct() != f)
    throw InternalError("diff_decompose: reconstruction mismatch");
  return out;
}

template <class S>
struct DiffApproximation {
  GroupVector<S> approximant;  // (1 - x_n) f, inside the Diff closure
  double error = 0.0;          // ||x_n f||_p, below the requested epsilon
  std::int64_t n = 0;
  DiffDecomposition witness;  // single term (g^-1, d f, 1), exact mode
  bool witness_exact = false;
};

// The section-3/section-4 bridge: (1 - x_n) f = (g - 1)(d f) is a single
// Diff difference; the recipe n makes ||x_n f||_p < epsilon.
inline DiffApproximation<ExactScalar> approximate_by_diff(
    const GroupVector<ExactScalar>& f, const GroupSpec& group,
    const GroupElement& g, double p, double epsilon,
    std::int64_t n_cap = std::int64_t(1) << 23) {
  // ||x_1 f||_p = ||f||_p, so n = 1 already suffices for loose epsilon;
  // otherwise the recipe bound picks n.
  std::optional<std::int64_t> forced;
  if (!(epsilon > 0)) throw DomainError("approximate_by_diff: epsilon <= 0");
  if (p_norm(f, p) < epsilon) forced = 1;
  auto rep = density_experiment(VectorTuple<ExactScalar>::single(f), group, g,
                                ExactScalar(1), p, epsilon, forced, n_cap);
  DiffApproximation<ExactScalar> out{
      rep.approximant.components[0], rep.achieved_error, rep.n,
      DiffDecomposition{group, {}}, rep.witness_verified};
  out.witness.terms.push_back(
      DiffTerm{inv(group, g), rep.witness.components[0], ExactScalar(1)});
  if (out.witness_exact &&
      out.witness.reconstruct() != out.approximant)
    throw InternalError("approximate_by_diff: witness reconstruction failed");
  return out;
}

// theta(f) = (f - f s_1, ..., f - f s_d): component for s is the difference
// function g -> f(g) - f(gs), i.e. f - f * delta_{s^-1}. The p-norm
// identity ||theta(f)||_p^p = I_p(f) holds with the full-scope Dirichlet
// sum; theta(f) = 0 exactly for constants (only f = 0 is both constant and
// finitely supported on an infinite group).
template <class S>
VectorTuple<S> theta(const GroupVector<S>& f, const GeneratingSet& gens) {
  VectorTuple<S> out(f.group());
  out.components.reserve(gens.size());
  for (const auto& s : gens.elements)
    out.components.push_back(
        f - convolve(f, GroupVector<S>::delta(f.group(), inv(f.group(), s))));
  return out;
}

struct ThetaWindow {
  // One component per generator, defined at vertices with all neighbors
  // inside; zero elsewhere. shrunk marks that such vertices exist.
  std::vector<Eigen::VectorXd> components;
  bool shrunk = false;

  double p_power_norm(double p) const {
    KahanSum sum;
    for (const auto& c : components)
      for (Eigen::Index i = 0; i < c.size(); ++i)
        sum.add(std::pow(std::abs(c[i]), p));
    return sum.value();
  }
};

inline ThetaWindow theta(const GraphFunction& f) {
  const CayleyBall& b = f.ball();
  ThetaWindow out;
  out.components.assign(
      b.gens().size(),
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(b.size())));
  for (std::size_t v = 0; v < b.size(); ++v) {
    if (!b.all_neighbors_inside(v)) {
      out.shrunk = true;
      continue;
    }
    for (std::size_t s = 0; s < b.gens().size(); ++s) {
      std::int32_t w = b.neighbor(v, s);
      out.components[s][static_cast<Eigen::Index>(v)] =
          f.value(v) - f.value(static_cast<std::size_t>(w));
    }
  }
  return out;
}

}  // namespace lplab
