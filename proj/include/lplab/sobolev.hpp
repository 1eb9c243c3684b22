#pragma once

#include <Eigen/Core>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "lplab/dirichlet.hpp"
#include "lplab/graph_function.hpp"

namespace lplab {

struct SobolevResult {
  double lambda = 0.0;  // min I_p(f) / ||f||_p^p over supp f in ball(R)
  std::shared_ptr<const CayleyBall> window;  // ball(R+1); shell is zero
  Eigen::VectorXd achiever;                  // normalized, ||f||_p = 1
  bool converged = true;
  int iterations = 0;
};

namespace detail {

inline double p_power_sum(const Eigen::VectorXd& x, double p) {
  KahanSum s;
  for (Eigen::Index i = 0; i < x.size(); ++i) s.add(std::pow(std::abs(x[i]), p));
  return s.value();
}

}  // namespace detail

// Windowed Sobolev quotient lambda(R) = min I_p(f)/||f||_p^p over f
// supported in ball(R), by normalized projected descent with seeded
// multistarts. I_p is the full sum over G: working on ball(R+1) with the
// outer shell pinned to zero represents every nonzero term exactly.
// A warm start (a previous achiever on ball(R'+1), R' < R, zero-extended)
// joins the start list, which makes computed lambda non-increasing in R
// along a sweep.
inline SobolevResult sobolev_ratio(
    const GroupSpec& group, const GeneratingSet& gens, std::int64_t radius,
    double p, int multistarts = 8,
    std::optional<std::pair<std::shared_ptr<const CayleyBall>, Eigen::VectorXd>>
        warm_start = std::nullopt,
    int max_iters_per_start = 4000) {
  if (radius < 1) throw DomainError("sobolev_ratio: radius must be >= 1");
  detail::check_p(p);
  auto window =
      std::make_shared<CayleyBall>(group, gens, radius + 1);
  const std::size_t n = window->size();
  // Free = word length <= radius; the outer shell stays zero.
  std::size_t n_free = 0;
  while (n_free < n && window->layer(n_free) <= radius) ++n_free;

  detail::EdgeList el(*window);
  auto energy = [&](const Eigen::VectorXd& x) {
    return detail::edge_energy(el, x, p);
  };

  auto project = [&](Eigen::VectorXd x) {
    for (std::size_t v = n_free; v < n; ++v)
      x[static_cast<Eigen::Index>(v)] = 0.0;
    double norm_p = std::pow(detail::p_power_sum(x, p), 1.0 / p);
    if (norm_p == 0.0) x[0] = 1.0, norm_p = 1.0;
    return Eigen::VectorXd(x / norm_p);
  };

  std::vector<Eigen::VectorXd> starts;
  {
    // Radial tent profile.
    Eigen::VectorXd tent(static_cast<Eigen::Index>(n));
    for (std::size_t v = 0; v < n; ++v)
      tent[static_cast<Eigen::Index>(v)] = std::max(
          0.0, 1.0 - static_cast<double>(window->layer(v)) /
                         static_cast<double>(radius + 1));
    starts.push_back(project(tent));
  }
  if (warm_start) {
    Eigen::VectorXd ext = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    const CayleyBall& prev = *warm_start->first;
    for (std::size_t v = 0; v < prev.size(); ++v) {
      std::int32_t idx = window->index_of(prev.vertex(v));
      if (idx >= 0 && static_cast<std::size_t>(idx) < n_free)
        ext[idx] = warm_start->second[static_cast<Eigen::Index>(v)];
    }
    starts.push_back(project(ext));
  }
  for (int s = static_cast<int>(starts.size()); s < multistarts; ++s) {
    std::mt19937_64 rng(1000 + static_cast<unsigned>(s));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXd x(static_cast<Eigen::Index>(n));
    for (std::size_t v = 0; v < n; ++v)
      x[static_cast<Eigen::Index>(v)] = u(rng);
    starts.push_back(project(x));
  }

  SobolevResult best;
  best.window = window;
  best.lambda = std::numeric_limits<double>::infinity();
  for (const auto& start : starts) {
    Eigen::VectorXd x = start;
    double ex = energy(x);  // ||x||_p = 1, so rho = E
    double step = 0.1;
    int it = 0;
    bool ok = false;
    int flat_rounds = 0;
    for (; it < max_iters_per_start; ++it) {
      // Gradient of E - rho * ||x||_p^p at the normalized point.
      Eigen::VectorXd g = detail::edge_energy_gradient(el, x, p);
      for (Eigen::Index i = 0; i < g.size(); ++i)
        g[i] -= ex * p * p_flux(x[i], p);
      for (std::size_t v = n_free; v < n; ++v)
        g[static_cast<Eigen::Index>(v)] = 0.0;
      double g2 = g.squaredNorm();
      if (g2 <= 1e-22 * std::max(1.0, ex * ex)) {
        ok = true;
        break;
      }
      step *= 2.0;
      bool accepted = false;
      double prev = ex;
      for (int bt = 0; bt < 60; ++bt) {
        Eigen::VectorXd trial = project(x - step * g);
        double et = energy(trial);
        if (et <= ex - 1e-6 * step * g2) {
          x = std::move(trial);
          ex = et;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        ok = true;  // no further descent possible at this scale
        break;
      }
      flat_rounds = prev - ex <= 1e-14 * std::max(1.0, prev) ? flat_rounds + 1 : 0;
      if (flat_rounds >= 5) {
        ok = true;
        break;
      }
    }
    if (ex < best.lambda) {
      best.lambda = ex;
      best.achiever = x;
      best.converged = ok;
      best.iterations = it;
    }
  }
  return best;
}

// Tent profile on Z^d: f_n(x) = max(0, 1 - |x|/n) on the radius-n ball.
inline GraphFunction tent_function(const GroupSpec& group, std::int64_t n) {
  if (group.kind() != GroupKind::FreeAbelian)
    throw DomainError("tent_function: group must be Z^d");
  if (n < 1) throw DomainError("tent_function: n must be >= 1");
  auto b = std::make_shared<CayleyBall>(group, GeneratingSet::standard(group),
                                        n);
  Eigen::VectorXd vals(static_cast<Eigen::Index>(b->size()));
  for (std::size_t v = 0; v < b->size(); ++v)
    vals[static_cast<Eigen::Index>(v)] =
        1.0 - static_cast<double>(b->layer(v)) / static_cast<double>(n);
  return GraphFunction(std::move(b), std::move(vals));
}

// I_p(tent_n) on Z^d; closed form 4 n^{1-p} in one dimension, full-scope
// Dirichlet sum otherwise.
inline double tent_energy(std::int64_t n, double p, std::int64_t d) {
  detail::check_p(p);
  if (d == 1)
    return 4.0 * std::pow(static_cast<double>(n), 1.0 - p);
  return dirichlet_sum(tent_function(GroupSpec::free_abelian(d), n), p,
                       EnergyScope::AllInBall);
}

// || 1 - f_n ||_{D_p} on the tent's window; equals I_p(f_n)^{1/p} because
// f_n(e) = 1.
inline double tent_distance_to_one(std::int64_t n, double p, std::int64_t d) {
  GraphFunction f = tent_function(GroupSpec::free_abelian(d), n);
  Eigen::VectorXd ones =
      Eigen::VectorXd::Ones(static_cast<Eigen::Index>(f.size()));
  GraphFunction diff(f.ball_ptr(), ones - f.values());
  return dp_norm(diff, p);
}

}  // namespace lplab
