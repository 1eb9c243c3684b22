#pragma once

#include <Eigen/Core>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <Eigen/SparseCore>
#include <memory>
#include <vector>

#include "lplab/complexes.hpp"
#include "lplab/graph_function.hpp"

namespace lplab {

enum class WindowPolicy { Clip, Extend };

// Numeric window of the left-multiplication action of a group-ring matrix:
// inputs are c-tuples supported on the window ball, outputs r-tuples on the
// window (clip drops rows landing outside) or on the ball enlarged by the
// matrix support radius (extend keeps every reachable row, so images of
// window-supported inputs are represented exactly).
struct TruncatedOperator {
  std::shared_ptr<const CayleyBall> in_window;
  std::shared_ptr<const CayleyBall> out_window;
  std::size_t in_rank = 1;
  std::size_t out_rank = 1;
  WindowPolicy policy = WindowPolicy::Clip;
  Eigen::SparseMatrix<double> matrix;

  Eigen::Index rows() const { return matrix.rows(); }
  Eigen::Index cols() const { return matrix.cols(); }
};

// Longest word length over the supports of all entries.
template <class S>
std::int64_t support_radius(const GrMatrix<S>& m, const GeneratingSet& gens) {
  std::int64_t r = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (const auto& t : m.at(i, j).terms())
        r = std::max(r, word_length(m.group(), gens, t.first));
  return r;
}

namespace detail {

template <class S>
double real_coefficient(const S& c) {
  if constexpr (ScalarTraits<S>::is_exact) {
    if (!c.im.is_zero())
      throw DomainError("truncate: complex coefficients not supported");
    return c.re.to_double();
  } else {
    if (c.imag() != 0.0)
      throw DomainError("truncate: complex coefficients not supported");
    return c.real();
  }
}

}  // namespace detail

template <class S>
TruncatedOperator truncate(const GrMatrix<S>& m,
                           std::shared_ptr<const CayleyBall> window,
                           WindowPolicy policy,
                           std::size_t entry_cap = std::size_t(1) << 27) {
  if (!window) throw DomainError("truncate: null window");
  if (m.group() != window->group())
    throw DomainError("truncate: matrix/window group mismatch");
  TruncatedOperator t;
  t.in_window = window;
  t.in_rank = m.cols();
  t.out_rank = m.rows();
  t.policy = policy;
  if (policy == WindowPolicy::Extend) {
    std::int64_t rho = support_radius(m, window->gens());
    t.out_window = std::make_shared<CayleyBall>(
        window->group(), window->gens(), window->radius() + rho);
  } else {
    t.out_window = window;
  }
  std::size_t rows = t.out_rank * t.out_window->size();
  std::size_t cols = t.in_rank * t.in_window->size();
  if (rows * cols > entry_cap)
    throw ResourceLimitError("truncate: window size cap exceeded");

  std::vector<Eigen::Triplet<double>> trip;
  const auto& in_verts = t.in_window->vertices();
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t h = 0; h < in_verts.size(); ++h) {
      std::size_t col = j * in_verts.size() + h;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (const auto& term : m.at(i, j).terms()) {
          GroupElement target = mul(m.group(), term.first, in_verts[h]);
          std::int32_t idx = t.out_window->index_of(target);
          if (idx < 0) {
            if (policy == WindowPolicy::Extend)
              throw InternalError("truncate: extend window missed a row");
            continue;
          }
          double val = detail::real_coefficient(term.second);
          trip.emplace_back(
              static_cast<Eigen::Index>(i * t.out_window->size() +
                                        static_cast<std::size_t>(idx)),
              static_cast<Eigen::Index>(col), val);
        }
      }
    }
  }
  t.matrix.resize(static_cast<Eigen::Index>(rows),
                  static_cast<Eigen::Index>(cols));
  t.matrix.setFromTriplets(trip.begin(), trip.end());
  return t;
}

// Smallest singular value by dense SVD; desk-scale windows only.
inline double smallest_singular_value(const TruncatedOperator& t,
                                      std::size_t dense_cap = std::size_t(1)
                                                              << 24) {
  std::size_t cells = static_cast<std::size_t>(t.rows()) *
                      static_cast<std::size_t>(t.cols());
  if (cells > dense_cap)
    throw ResourceLimitError("smallest_singular_value: dense cap exceeded");
  Eigen::MatrixXd dense(t.matrix);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(dense);
  const auto& sv = svd.singularValues();
  return sv[sv.size() - 1];
}

struct DistanceResult {
  double distance = 0.0;
  Eigen::VectorXd minimizer;
  bool converged = true;
  int iterations = 0;
};

// min_u || T u - v ||_p over window-supported u. p = 2 is a least-squares
// solve; other p descend the smooth convex objective sum |r_k|^p from the
// least-squares point with Armijo backtracking.
inline DistanceResult distance_to_image(const TruncatedOperator& t,
                                        const Eigen::VectorXd& v, double p,
                                        int max_iters = 20000) {
  detail::check_p(p);
  if (v.size() != t.rows())
    throw DomainError("distance_to_image: target size mismatch");
  DistanceResult out;
  // Least-squares start (the p = 2 answer): dense QR at small sizes,
  // iterative sparse least squares for large windows.
  Eigen::VectorXd u;
  if (t.cols() <= 512) {
    Eigen::MatrixXd dense(t.matrix);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(dense);
    u = qr.solve(v);
  } else {
    Eigen::LeastSquaresConjugateGradient<Eigen::SparseMatrix<double>> lscg;
    lscg.setTolerance(1e-14);
    lscg.setMaxIterations(40 * t.cols());
    lscg.compute(t.matrix);
    u = lscg.solve(v);
  }
  if (p == 2.0) {
    out.minimizer = u;
    out.distance = (t.matrix * u - v).norm();
    return out;
  }
  auto objective = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd r = t.matrix * x - v;
    KahanSum s;
    for (Eigen::Index k = 0; k < r.size(); ++k)
      s.add(std::pow(std::abs(r[k]), p));
    return s.value();
  };
  double fu = objective(u);
  double step = 1.0;
  int it = 0;
  for (; it < max_iters; ++it) {
    Eigen::VectorXd r = t.matrix * u - v;
    Eigen::VectorXd flux(r.size());
    for (Eigen::Index k = 0; k < r.size(); ++k) flux[k] = p_flux(r[k], p);
    Eigen::VectorXd grad = p * (t.matrix.transpose() * flux);
    double g2 = grad.squaredNorm();
    if (std::sqrt(g2) <= 1e-12 * std::max(1.0, fu)) break;
    step *= 2.0;
    bool accepted = false;
    for (int bt = 0; bt < 80; ++bt) {
      Eigen::VectorXd trial = u - step * grad;
      double ft = objective(trial);
      if (ft <= fu - 1e-4 * step * g2) {
        u = std::move(trial);
        fu = ft;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  out.minimizer = u;
  out.distance = std::pow(fu, 1.0 / p);
  out.converged = it < max_iters;
  out.iterations = it;
  return out;
}

struct InvariantReport {
  std::size_t dimension = 0;  // solution space of f(g) = f(gs) over in-ball
                              // edges: one per connected component
  std::size_t dimension_with_decay = 0;  // components with no out-of-ball
                                         // edge survive a zero-tail constraint
  bool connected = false;
};

// H^0 probe: G-invariant functions on a window are constant per component;
// any l^p-decay constraint kills components that touch the outside.
inline InvariantReport invariant_vectors(const CayleyBall& b) {
  std::vector<std::int32_t> parent(b.size());
  for (std::size_t v = 0; v < b.size(); ++v)
    parent[v] = static_cast<std::int32_t>(v);
  std::function<std::int32_t(std::int32_t)> find =
      [&](std::int32_t x) -> std::int32_t {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (std::size_t v = 0; v < b.size(); ++v)
    for (std::size_t s = 0; s < b.gens().size(); ++s) {
      std::int32_t w = b.neighbor(v, s);
      if (w >= 0) parent[static_cast<std::size_t>(find(static_cast<std::int32_t>(v)))] = find(w);
    }
  std::unordered_map<std::int32_t, bool> comp_has_exit;
  for (std::size_t v = 0; v < b.size(); ++v) {
    std::int32_t root = find(static_cast<std::int32_t>(v));
    bool& exit = comp_has_exit[root];
    if (!b.all_neighbors_inside(v)) exit = true;
  }
  InvariantReport rep;
  rep.dimension = comp_has_exit.size();
  for (const auto& [root, exit] : comp_has_exit)
    if (!exit) ++rep.dimension_with_decay;
  rep.connected = rep.dimension == 1;
  return rep;
}

}  // namespace lplab
