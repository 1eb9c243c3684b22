#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "lplab/group_io.hpp"
#include "lplab/truncation.hpp"

using namespace lplab;
using XV = GroupVector<ExactScalar>;

namespace {

std::shared_ptr<const CayleyBall> make_ball(const char* group, std::int64_t r) {
  auto g = GroupSpec::parse(group);
  return std::make_shared<CayleyBall>(g, GeneratingSet::standard(g), r);
}

GrMatrix<ExactScalar> z_step() {
  auto z = GroupSpec::free_abelian(1);
  GrMatrix<ExactScalar> m(z, 1, 1);
  m.at(0, 0) = XV::delta(z, parse_element(z, "1")) -
               XV::delta(z, identity(z));
  return m;
}

// Column matrix [a^-1 - 1; b^-1 - 1]: the cohomology side of the F2
// differential realized by left multiplication (star transpose of d_0).
GrMatrix<ExactScalar> f2_dual_column() {
  auto f2 = GroupSpec::free_group(2);
  GrMatrix<ExactScalar> d0(f2, 1, 2);
  auto e = identity(f2);
  d0.at(0, 0) = XV::delta(f2, parse_element(f2, "a")) - XV::delta(f2, e);
  d0.at(0, 1) = XV::delta(f2, parse_element(f2, "b")) - XV::delta(f2, e);
  return star_transpose(d0);
}

}  // namespace

TEST_CASE("identity matrix truncates to the identity") {
  auto b = make_ball("Z^2", 2);
  auto m = GrMatrix<ExactScalar>::identity_matrix(b->group(), 1);
  auto t = truncate(m, b, WindowPolicy::Clip);
  CHECK(t.rows() == static_cast<Eigen::Index>(b->size()));
  CHECK(t.cols() == static_cast<Eigen::Index>(b->size()));
  Eigen::MatrixXd dense(t.matrix);
  CHECK((dense - Eigen::MatrixXd::Identity(dense.rows(), dense.cols())).norm() ==
        0.0);
  CHECK(smallest_singular_value(t) == doctest::Approx(1.0));
}

TEST_CASE("Z difference operator windows are bidiagonal") {
  auto b = make_ball("Z", 4);  // window {-4..4}
  auto t = truncate(z_step(), b, WindowPolicy::Extend);
  // Extended window is the ball of radius 5.
  CHECK(t.out_window->radius() == 5);
  CHECK(t.cols() == 9);
  CHECK(t.rows() == 11);
  Eigen::MatrixXd dense(t.matrix);
  // Column for input h: +1 at row (h+1), -1 at row h.
  for (std::size_t h = 0; h < 9; ++h) {
    const auto& hv = t.in_window->vertex(h);
    std::int64_t coord = hv.data()[0];
    for (Eigen::Index r = 0; r < dense.rows(); ++r) {
      std::int64_t rc = t.out_window->vertex(static_cast<std::size_t>(r)).data()[0];
      double want = rc == coord + 1 ? 1.0 : (rc == coord ? -1.0 : 0.0);
      CHECK(dense(r, static_cast<Eigen::Index>(h)) == want);
    }
  }
  // Images of window-supported inputs are exact under extend: columns sum
  // to zero (the augmentation of g-1).
  for (Eigen::Index c = 0; c < dense.cols(); ++c)
    CHECK(dense.col(c).sum() == 0.0);
}

TEST_CASE("koszul dual window shape matches the enlarged ball") {
  auto b1 = make_ball("Z^2", 1);
  auto z2 = b1->group();
  GrMatrix<ExactScalar> d0(z2, 1, 2);
  auto e = identity(z2);
  d0.at(0, 0) = XV::delta(z2, parse_element(z2, "(1,0)")) - XV::delta(z2, e);
  d0.at(0, 1) = XV::delta(z2, parse_element(z2, "(0,1)")) - XV::delta(z2, e);
  auto t = truncate(star_transpose(d0), b1, WindowPolicy::Extend);
  std::size_t b2 = make_ball("Z^2", 2)->size();
  CHECK(t.rows() == static_cast<Eigen::Index>(2 * b2));
  CHECK(t.cols() == static_cast<Eigen::Index>(b1->size()));
}

TEST_CASE("sigma_min of Z windows decays like the path oracle") {
  // Clip policy: N x N lower bidiagonal. Oracle: the exact eigenvalues of
  // T^T T (a path Laplacian with one free end) give
  // sigma_min = 2 sin(pi / (2(2N+1))).
  double prev = 2.0;
  for (std::int64_t r : {2, 4, 8, 16}) {
    auto b = make_ball("Z", r);
    auto t = truncate(z_step(), b, WindowPolicy::Clip);
    double sv = smallest_singular_value(t);
    std::int64_t N = 2 * r + 1;
    double oracle = 2.0 * std::sin(M_PI / (2.0 * (2.0 * N + 1.0)));
    CHECK(sv == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(sv < prev);
    prev = sv;
  }

  // Independent numeric oracle at one size: smallest eigenvalue of T^T T.
  auto b = make_ball("Z", 6);
  auto t = truncate(z_step(), b, WindowPolicy::Clip);
  Eigen::MatrixXd dense(t.matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense.transpose() * dense);
  CHECK(smallest_singular_value(t) ==
        doctest::Approx(std::sqrt(es.eigenvalues()[0])).epsilon(1e-12));
}

TEST_CASE("F2 dual differential keeps a spectral gap across radii") {
  // Nonamenability: sigma_min stays above the infinite-tree bound
  // sqrt(4 - 2 sqrt 3) ~ 0.732, and varies by < 10% across R in {4,5,6}.
  std::vector<double> sv;
  for (std::int64_t r : {2, 3, 4, 5, 6}) {
    auto b = make_ball("F2", r);
    auto t = truncate(f2_dual_column(), b, WindowPolicy::Clip);
    sv.push_back(smallest_singular_value(t));
    CHECK(sv.back() > 0.732);
  }
  double lo = std::min({sv[2], sv[3], sv[4]});
  double hi = std::max({sv[2], sv[3], sv[4]});
  CHECK((hi - lo) / hi < 0.10);
}

TEST_CASE("distance_to_image basics") {
  auto b = make_ball("Z", 8);
  auto t = truncate(z_step(), b, WindowPolicy::Extend);
  // Target in the column span: distance 0 and the witness reproduces it.
  Eigen::VectorXd u0 = Eigen::VectorXd::Zero(t.cols());
  u0[3] = 1.0;
  u0[4] = -2.0;
  Eigen::VectorXd v = t.matrix * u0;
  auto r = distance_to_image(t, v, 2.0);
  CHECK(r.distance <= 1e-10);

  // delta_0 target: least-squares distance is (2n+2)^{-1/2} on the
  // {-n..n} window, below the witness bound n^{-1/2}.
  std::int64_t n = 8;
  Eigen::VectorXd d0 = Eigen::VectorXd::Zero(t.rows());
  d0[t.out_window->index_of(identity(t.out_window->group()))] = 1.0;
  auto r2 = distance_to_image(t, d0, 2.0);
  CHECK(r2.distance ==
        doctest::Approx(std::pow(2.0 * n + 2.0, -0.5)).epsilon(1e-9));
  CHECK(r2.distance <= std::pow(double(n), -0.5));
}

TEST_CASE("distance_to_image for general p meets the witness bound") {
  for (double p : {1.5, 2.0}) {
    double prev = 1e300;
    for (std::int64_t n : {4, 8, 16}) {
      auto b = make_ball("Z", n);
      auto t = truncate(z_step(), b, WindowPolicy::Extend);
      Eigen::VectorXd d0 = Eigen::VectorXd::Zero(t.rows());
      d0[t.out_window->index_of(identity(t.out_window->group()))] = 1.0;
      auto r = distance_to_image(t, d0, p);
      CHECK(r.distance <= std::pow(double(n), (1.0 - p) / p) + 1e-12);
      CHECK(r.distance < prev);
      prev = r.distance;
    }
  }
}

TEST_CASE("truncation rejects complex coefficients and oversized windows") {
  auto z = GroupSpec::free_abelian(1);
  GrMatrix<ExactScalar> m(z, 1, 1);
  m.at(0, 0) = XV::delta(z, identity(z),
                         ExactScalar(Rational(0), Rational(1)));
  auto b = make_ball("Z", 2);
  CHECK_THROWS_AS(truncate(m, b, WindowPolicy::Clip), DomainError);
  CHECK_THROWS_AS(truncate(z_step(), make_ball("Z", 64), WindowPolicy::Clip, 100),
                  ResourceLimitError);
}

TEST_CASE("invariant vectors report") {
  // Connected infinite-group balls: dimension 1, decay kills it.
  for (const char* g : {"Z", "Z^2", "F2"}) {
    auto rep = invariant_vectors(*make_ball(g, 3));
    CHECK(rep.connected);
    CHECK(rep.dimension == 1);
    CHECK(rep.dimension_with_decay == 0);
  }
  // C6 full ball: constants survive any decay constraint.
  auto rep = invariant_vectors(*make_ball("C6", 5));
  CHECK(rep.dimension == 1);
  CHECK(rep.dimension_with_decay == 1);
}
