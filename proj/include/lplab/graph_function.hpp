#pragma once

#include <Eigen/Core>
#include <cmath>
#include <memory>
#include <vector>

#include "lplab/ball.hpp"
#include "lplab/group_vector.hpp"

namespace lplab {

// Real-valued function on a Cayley ball, indexed by the ball's vertex
// order. The carrier for gradients, p-Dirichlet sums, and the p-Laplacian.
class GraphFunction {
 public:
  GraphFunction(std::shared_ptr<const CayleyBall> ball, Eigen::VectorXd values)
      : ball_(std::move(ball)), values_(std::move(values)) {
    if (!ball_) throw DomainError("GraphFunction: null ball");
    if (static_cast<std::size_t>(values_.size()) != ball_->size())
      throw DomainError("GraphFunction: one value per ball vertex required");
    for (Eigen::Index i = 0; i < values_.size(); ++i)
      if (!std::isfinite(values_[i]))
        throw DomainError("GraphFunction: values must be finite");
  }

  static GraphFunction constant(std::shared_ptr<const CayleyBall> ball,
                                double c) {
    Eigen::VectorXd v =
        Eigen::VectorXd::Constant(static_cast<Eigen::Index>(ball->size()), c);
    return GraphFunction(std::move(ball), std::move(v));
  }

  const CayleyBall& ball() const { return *ball_; }
  const std::shared_ptr<const CayleyBall>& ball_ptr() const { return ball_; }
  const Eigen::VectorXd& values() const { return values_; }
  double value(std::size_t i) const {
    return values_[static_cast<Eigen::Index>(i)];
  }
  std::size_t size() const { return ball_->size(); }

 private:
  std::shared_ptr<const CayleyBall> ball_;
  Eigen::VectorXd values_;
};

enum class EnergyScope { InteriorOnly, AllInBall };

// |t|^{p-2} t with the termwise convention: 0 when t = 0 (the limit that
// exists for every p > 1).
inline double p_flux(double t, double p) {
  if (t == 0.0) return 0.0;
  return std::pow(std::abs(t), p - 2.0) * t;
}

// |Df(v)|^p = sum_s |f(v) - f(vs)|^p. Requires every neighbor inside the
// ball unless exclude_outside is set, in which case out-of-ball neighbors
// are skipped.
inline double gradient_power(const GraphFunction& f, std::size_t v, double p,
                             bool exclude_outside = false) {
  detail::check_p(p);
  const CayleyBall& b = f.ball();
  if (v >= b.size()) throw DomainError("gradient_power: vertex out of range");
  if (!exclude_outside && !b.all_neighbors_inside(v))
    throw DomainError(
        "gradient_power: vertex has out-of-ball neighbors (pass the "
        "exclusion flag to restrict to in-ball edges)");
  KahanSum sum;
  for (std::size_t j = 0; j < b.gens().size(); ++j) {
    std::int32_t w = b.neighbor(v, j);
    if (w < 0) continue;
    sum.add(std::pow(std::abs(f.value(v) - f.value(static_cast<std::size_t>(w))), p));
  }
  return sum.value();
}

// I_p over ordered pairs (g, s) with both endpoints in scope; each
// unordered edge contributes twice since S is symmetric.
inline double dirichlet_sum(const GraphFunction& f, double p,
                            EnergyScope scope = EnergyScope::AllInBall) {
  detail::check_p(p);
  const CayleyBall& b = f.ball();
  KahanSum sum;
  for (std::size_t v = 0; v < b.size(); ++v) {
    if (scope == EnergyScope::InteriorOnly && !b.is_interior(v)) continue;
    for (std::size_t j = 0; j < b.gens().size(); ++j) {
      std::int32_t w = b.neighbor(v, j);
      if (w < 0) continue;
      if (scope == EnergyScope::InteriorOnly &&
          !b.is_interior(static_cast<std::size_t>(w)))
        continue;
      sum.add(std::pow(std::abs(f.value(v) - f.value(static_cast<std::size_t>(w))), p));
    }
  }
  return sum.value();
}

// Delta_p f(v) = sum_s |f(vs) - f(v)|^{p-2} (f(vs) - f(v)).
inline double p_laplacian(const GraphFunction& f, std::size_t v, double p) {
  detail::check_p(p);
  const CayleyBall& b = f.ball();
  if (v >= b.size()) throw DomainError("p_laplacian: vertex out of range");
  if (!b.all_neighbors_inside(v))
    throw DomainError("p_laplacian: vertex on the frontier");
  KahanSum sum;
  for (std::size_t j = 0; j < b.gens().size(); ++j) {
    std::int32_t w = b.neighbor(v, j);
    sum.add(p_flux(f.value(static_cast<std::size_t>(w)) - f.value(v), p));
  }
  return sum.value();
}

// ||f||_{D_p} = (I_p(f) + |f(e)|^p)^{1/p} over the ball scope.
inline double dp_norm(const GraphFunction& f, double p) {
  const CayleyBall& b = f.ball();
  std::int32_t e = b.index_of(identity(b.group()));
  if (e < 0) throw DomainError("dp_norm: identity not in ball");
  double ip = dirichlet_sum(f, p, EnergyScope::AllInBall);
  return std::pow(ip + std::pow(std::abs(f.value(static_cast<std::size_t>(e))), p),
                  1.0 / p);
}

// ||f||_{BD_p} = I_p(f)^{1/p} + ||f||_inf.
inline double bdp_norm(const GraphFunction& f, double p) {
  const CayleyBall& b = f.ball();
  if (b.index_of(identity(b.group())) < 0)
    throw DomainError("bdp_norm: identity not in ball");
  double ip = dirichlet_sum(f, p, EnergyScope::AllInBall);
  double sup = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    sup = std::max(sup, std::abs(f.value(i)));
  return std::pow(ip, 1.0 / p) + sup;
}

// l^p norm of the vertex values (the function extended by zero off the
// ball).
inline double p_norm(const GraphFunction& f, double p) {
  detail::check_p(p);
  KahanSum sum;
  for (std::size_t v = 0; v < f.size(); ++v)
    sum.add(std::pow(std::abs(f.value(v)), p));
  return std::pow(sum.value(), 1.0 / p);
}

// Full-scope p-Dirichlet sum of a finitely supported vector: the sum over
// all of G collapses to the union of the support and its S-translates.
template <class S>
double dirichlet_sum(const GroupVector<S>& f, const GeneratingSet& gens,
                     double p) {
  detail::check_p(p);
  const GroupSpec& g = f.group();
  std::unordered_map<GroupElement, double, GroupElementHash> vals;
  for (const auto& t : f.terms()) {
    if constexpr (ScalarTraits<S>::is_exact) {
      if (!t.second.im.is_zero())
        throw DomainError("dirichlet_sum needs a real-valued vector");
      vals[t.first] = t.second.re.to_double();
    } else {
      if (t.second.imag() != 0.0)
        throw DomainError("dirichlet_sum needs a real-valued vector");
      vals[t.first] = t.second.real();
    }
  }
  std::unordered_set<GroupElement, GroupElementHash> sites;
  for (const auto& [x, c] : vals) {
    sites.insert(x);
    for (const auto& s : gens.elements) sites.insert(mul(g, x, inv(g, s)));
  }
  KahanSum sum;
  for (const auto& x : sites) {
    auto it = vals.find(x);
    double fx = it == vals.end() ? 0.0 : it->second;
    for (const auto& s : gens.elements) {
      auto jt = vals.find(mul(g, x, s));
      double fxs = jt == vals.end() ? 0.0 : jt->second;
      sum.add(std::pow(std::abs(fx - fxs), p));
    }
  }
  return sum.value();
}

}  // namespace lplab
