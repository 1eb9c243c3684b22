#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <cmath>
#include <functional>
#include <memory>
#include <unordered_set>
#include <vector>

#include "lplab/graph_function.hpp"

namespace lplab {

// Boundary-value problem for the p-Dirichlet energy on a ball: frontier
// values are data, interior values are free.
struct DirichletProblem {
  std::shared_ptr<const CayleyBall> ball;
  Eigen::VectorXd boundary_values;  // one per frontier vertex, in ball order
  double p = 2.0;
  double residual_tol = 1e-8;
  int max_iters = 100000;
};

struct EnergyReport {
  double energy = 0.0;  // I_p over in-ball edges (ordered pairs)
  Eigen::VectorXd gradient_power_per_vertex;
  double residual = 0.0;  // max interior |Delta_p f|
  int iterations = 0;
  bool converged = false;
};

namespace detail {

struct EdgeList {
  // Unordered in-ball edges (i < j); the ordered energy is twice the sum
  // over these.
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;

  explicit EdgeList(const CayleyBall& b) {
    for (std::size_t v = 0; v < b.size(); ++v)
      for (std::size_t s = 0; s < b.gens().size(); ++s) {
        std::int32_t w = b.neighbor(v, s);
        if (w > static_cast<std::int32_t>(v))
          edges.emplace_back(static_cast<std::int32_t>(v), w);
      }
  }
};

inline double edge_energy(const EdgeList& el, const Eigen::VectorXd& f,
                          double p) {
  KahanSum sum;
  for (const auto& [i, j] : el.edges)
    sum.add(std::pow(std::abs(f[i] - f[j]), p));
  return 2.0 * sum.value();
}

// Gradient of the ordered-pair energy: dE/df(v) = 2p sum_{w ~ v} phi(f(v)-f(w)).
inline Eigen::VectorXd edge_energy_gradient(const EdgeList& el,
                                            const Eigen::VectorXd& f,
                                            double p) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(f.size());
  for (const auto& [i, j] : el.edges) {
    double flux = p_flux(f[i] - f[j], p);
    g[i] += 2.0 * p * flux;
    g[j] -= 2.0 * p * flux;
  }
  return g;
}

}  // namespace detail

// Analytic gradient of the in-ball energy at every vertex (restricted to
// in-ball neighbor terms); equals -2p Delta_p f on interior vertices.
inline Eigen::VectorXd energy_gradient(const GraphFunction& f, double p) {
  detail::check_p(p);
  detail::EdgeList el(f.ball());
  return detail::edge_energy_gradient(el, f.values(), p);
}

namespace detail {

// One weighted-Laplacian solve: minimizes sum_e w_e (x_i - x_j)^2 over
// interior values with the frontier fixed. Returns the full-length vector.
inline Eigen::VectorXd irls_solve(const CayleyBall& ball, const EdgeList& el,
                                  const Eigen::VectorXd& f, double p,
                                  const std::vector<std::int32_t>& int_index,
                                  std::size_t n_int) {
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_int));
  std::vector<double> diag(n_int, 0.0);
  for (const auto& [i, j] : el.edges) {
    double d = std::abs(f[i] - f[j]);
    double w = std::pow(std::max(d, 1e-12), p - 2.0);
    std::int32_t ii = int_index[static_cast<std::size_t>(i)];
    std::int32_t jj = int_index[static_cast<std::size_t>(j)];
    if (ii >= 0 && jj >= 0) {
      diag[static_cast<std::size_t>(ii)] += w;
      diag[static_cast<std::size_t>(jj)] += w;
      trip.emplace_back(ii, jj, -w);
      trip.emplace_back(jj, ii, -w);
    } else if (ii >= 0) {
      diag[static_cast<std::size_t>(ii)] += w;
      rhs[ii] += w * f[j];
    } else if (jj >= 0) {
      diag[static_cast<std::size_t>(jj)] += w;
      rhs[jj] += w * f[i];
    }
  }
  for (std::size_t k = 0; k < n_int; ++k)
    trip.emplace_back(static_cast<std::int32_t>(k),
                      static_cast<std::int32_t>(k), diag[k]);
  Eigen::SparseMatrix<double> L(static_cast<Eigen::Index>(n_int),
                                static_cast<Eigen::Index>(n_int));
  L.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(L);
  if (solver.info() != Eigen::Success)
    throw InternalError("dirichlet: weighted Laplacian factorization failed");
  Eigen::VectorXd xi = solver.solve(rhs);
  Eigen::VectorXd out = f;
  for (std::size_t v = 0; v < ball.size(); ++v)
    if (int_index[v] >= 0) out[static_cast<Eigen::Index>(v)] = xi[int_index[v]];
  return out;
}

}  // namespace detail

// Energy minimization: IRLS proposals safeguarded by backtracking on the
// true energy, then plain Armijo gradient descent until the p-Laplacian
// residual passes the tolerance. Iterates never increase E; for 1 < p < 2 a
// one-time 1e-14 jitter escapes flat facets (the energy is convex but not
// strictly). Non-convergence is flagged on the report, not thrown.
inline std::pair<GraphFunction, EnergyReport> solve_dirichlet(
    const DirichletProblem& problem) {
  if (!problem.ball) throw DomainError("dirichlet: null ball");
  const CayleyBall& b = *problem.ball;
  detail::check_p(problem.p);
  if (!(problem.residual_tol > 0))
    throw DomainError("dirichlet: residual_tol must be > 0");
  const std::size_t n = b.size();
  const std::size_t n_int = b.interior_count();
  const std::size_t n_bnd = n - n_int;
  if (static_cast<std::size_t>(problem.boundary_values.size()) != n_bnd)
    throw DomainError("dirichlet: boundary assignment must be total");
  if (n_bnd == 0 && n_int > 0)
    throw DomainError(
        "dirichlet: no frontier vertices; interior has no boundary contact "
        "(ill-posed)");
  const double p = problem.p;

  // Interior index map; frontier vertices carry their boundary value.
  std::vector<std::int32_t> int_index(n, -1);
  for (std::size_t v = 0; v < n_int; ++v)
    int_index[v] = static_cast<std::int32_t>(v);
  Eigen::VectorXd f(static_cast<Eigen::Index>(n));
  double bmin = n_bnd ? problem.boundary_values.minCoeff() : 0.0;
  double bmax = n_bnd ? problem.boundary_values.maxCoeff() : 0.0;
  double start = 0.5 * (bmin + bmax);
  for (std::size_t v = 0; v < n_int; ++v) f[static_cast<Eigen::Index>(v)] = start;
  for (std::size_t v = n_int; v < n; ++v)
    f[static_cast<Eigen::Index>(v)] =
        problem.boundary_values[static_cast<Eigen::Index>(v - n_int)];

  detail::EdgeList el(b);

  // Interior components must reach the frontier (union-find over edges).
  {
    std::vector<std::int32_t> parent(n);
    for (std::size_t v = 0; v < n; ++v) parent[v] = static_cast<std::int32_t>(v);
    std::function<std::int32_t(std::int32_t)> find =
        [&](std::int32_t x) -> std::int32_t {
      while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
      }
      return x;
    };
    for (const auto& [i, j] : el.edges)
      parent[static_cast<std::size_t>(find(i))] = find(j);
    std::unordered_set<std::int32_t> boundary_roots;
    for (std::size_t v = n_int; v < n; ++v)
      boundary_roots.insert(find(static_cast<std::int32_t>(v)));
    for (std::size_t v = 0; v < n_int; ++v)
      if (!boundary_roots.count(find(static_cast<std::int32_t>(v))))
        throw DomainError(
            "dirichlet: interior component with no boundary contact "
            "(ill-posed)");
  }

  auto residual_of = [&](const Eigen::VectorXd& x) {
    double r = 0.0;
    for (std::size_t v = 0; v < n_int; ++v) {
      KahanSum sum;
      for (std::size_t s = 0; s < b.gens().size(); ++s) {
        std::int32_t w = b.neighbor(v, s);
        sum.add(p_flux(x[w] - x[static_cast<Eigen::Index>(v)], p));
      }
      r = std::max(r, std::abs(sum.value()));
    }
    return r;
  };

  EnergyReport rep;
  double energy = detail::edge_energy(el, f, p);
  double residual = residual_of(f);
  int iter = 0;
  bool jittered = false;
  bool stalled = false;

  // Phase 1: IRLS with backtracking safeguard on the true energy.
  if (n_int > 0) {
    int irls_rounds = p == 2.0 ? 1 : 60;
    for (int round = 0; round < irls_rounds && residual > problem.residual_tol;
         ++round) {
      ++iter;
      Eigen::VectorXd prop = detail::irls_solve(b, el, f, p, int_index, n_int);
      double t = 1.0;
      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        Eigen::VectorXd trial = f + t * (prop - f);
        double e_trial = detail::edge_energy(el, trial, p);
        if (e_trial <= energy) {
          f = std::move(trial);
          energy = e_trial;
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      residual = residual_of(f);
      if (!accepted) break;
    }
  }

  // Phase 2: Armijo gradient descent polish.
  double step = 1.0;
  while (n_int > 0 && residual > problem.residual_tol &&
         iter < problem.max_iters) {
    ++iter;
    Eigen::VectorXd grad = detail::edge_energy_gradient(el, f, p);
    for (std::size_t v = n_int; v < n; ++v) grad[static_cast<Eigen::Index>(v)] = 0.0;
    double g2 = grad.squaredNorm();
    if (g2 == 0.0) break;
    step *= 2.0;
    bool accepted = false;
    for (int bt = 0; bt < 80; ++bt) {
      Eigen::VectorXd trial = f - step * grad;
      double e_trial = detail::edge_energy(el, trial, p);
      if (e_trial <= energy - 1e-4 * step * g2) {
        f = std::move(trial);
        energy = e_trial;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (p < 2.0 && !jittered) {
        // Flat facet: nudge equal-value clusters apart, once.
        jittered = true;
        for (std::size_t v = 0; v < n_int; ++v)
          f[static_cast<Eigen::Index>(v)] += (v % 2 ? 1.0 : -1.0) * 1e-14;
        energy = detail::edge_energy(el, f, p);
        step = 1.0;
        continue;
      }
      stalled = true;
      break;
    }
    residual = residual_of(f);
  }
  residual = residual_of(f);

  rep.energy = energy;
  rep.residual = residual;
  rep.iterations = iter;
  rep.converged = residual <= problem.residual_tol && !stalled;

  GraphFunction sol(problem.ball, f);
  rep.gradient_power_per_vertex =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t v = 0; v < n; ++v)
    rep.gradient_power_per_vertex[static_cast<Eigen::Index>(v)] =
        gradient_power(sol, v, p, /*exclude_outside=*/true);

  // Maximum principle: a converged solution attains extrema on the frontier.
  if (rep.converged && n_bnd > 0) {
    double span = std::max(1.0, bmax - bmin);
    for (std::size_t v = 0; v < n_int; ++v) {
      double x = f[static_cast<Eigen::Index>(v)];
      if (x < bmin - 1e-7 * span || x > bmax + 1e-7 * span)
        throw InternalError("dirichlet: maximum principle violated");
    }
  }
  return {std::move(sol), std::move(rep)};
}

}  // namespace lplab
