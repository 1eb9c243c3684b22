#pragma once

#include <string>
#include <vector>

#include "lplab/group_vector.hpp"

namespace lplab {

struct ComposeCheckResult {
  bool pass = true;
  // One entry per consecutive differential pair: matrix positions (row,col)
  // where d_n . d_{n+1} has a nonzero entry. All empty on pass.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>>
      residual_support;
};

// A finite free-resolution fragment: ranks e_0 = 1, e_1, ..., e_N and
// exact-mode group-ring differentials d_n of shape e_n x e_{n+1}, with
// d_n . d_{n+1} = 0 and every column of d_0 in the augmentation ideal.
class ComplexSpec {
 public:
  ComplexSpec(GroupSpec group, std::vector<GrMatrix<ExactScalar>> differentials)
      : group_(std::move(group)), differentials_(std::move(differentials)) {
    if (differentials_.empty())
      throw DomainError("complex needs at least one differential");
    ranks_.push_back(differentials_[0].rows());
    for (std::size_t n = 0; n < differentials_.size(); ++n) {
      if (differentials_[n].group() != group_)
        throw DomainError("complex differential over the wrong group");
      if (differentials_[n].rows() != ranks_.back())
        throw DomainError("complex differential shape mismatch");
      ranks_.push_back(differentials_[n].cols());
    }
    if (ranks_[0] != 1)
      throw DomainError("complex must start at rank e_0 = 1");
    auto chk = compose_residuals();
    if (!chk.pass) throw DomainError("complex differentials do not compose to zero");
    if (!augmentation_ok())
      throw DomainError("d_0 columns must lie in the augmentation ideal");
  }

  // Unvalidated construction for compose_check experiments on user data.
  static ComplexSpec unchecked(GroupSpec group,
                               std::vector<GrMatrix<ExactScalar>> diffs) {
    ComplexSpec c;
    c.group_ = std::move(group);
    c.differentials_ = std::move(diffs);
    c.ranks_.push_back(c.differentials_[0].rows());
    for (const auto& d : c.differentials_) c.ranks_.push_back(d.cols());
    return c;
  }

  const GroupSpec& group() const { return group_; }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  const std::vector<GrMatrix<ExactScalar>>& differentials() const {
    return differentials_;
  }

  ComposeCheckResult compose_residuals() const {
    ComposeCheckResult out;
    for (std::size_t n = 0; n + 1 < differentials_.size(); ++n) {
      auto prod = gr_matrix_mul(differentials_[n], differentials_[n + 1]);
      std::vector<std::pair<std::size_t, std::size_t>> support;
      for (std::size_t i = 0; i < prod.rows(); ++i)
        for (std::size_t j = 0; j < prod.cols(); ++j)
          if (!prod.at(i, j).is_zero()) support.emplace_back(i, j);
      if (!support.empty()) out.pass = false;
      out.residual_support.push_back(std::move(support));
    }
    return out;
  }

  bool augmentation_ok() const {
    const auto& d0 = differentials_[0];
    for (std::size_t j = 0; j < d0.cols(); ++j) {
      ExactScalar sum;
      for (std::size_t i = 0; i < d0.rows(); ++i)
        sum += d0.at(i, j).augmentation();
      if (!sum.is_zero()) return false;
    }
    return true;
  }

 private:
  ComplexSpec() : group_(GroupSpec::free_abelian(1)) {}

  GroupSpec group_;
  std::vector<std::size_t> ranks_;
  std::vector<GrMatrix<ExactScalar>> differentials_;
};

inline ComposeCheckResult compose_check(const ComplexSpec& c) {
  return c.compose_residuals();
}

enum class BuiltinComplex { Z, Z2, Fk };

// Built-in resolution fragments:
//   Z:   ranks (1,1),   d_0 = [g-1]
//   Z^2: ranks (1,2,1), d_0 = [a-1, b-1], d_1 = [b-1; -(a-1)]  (Koszul)
//   F_k: ranks (1,k),   d_0 = [a_1-1, ..., a_k-1]
inline ComplexSpec builtin_complex(BuiltinComplex kind, std::int64_t k = 2) {
  using XV = GroupVector<ExactScalar>;
  switch (kind) {
    case BuiltinComplex::Z: {
      auto z = GroupSpec::free_abelian(1);
      GroupElement::Data one;
      one.push_back(1);
      GroupElement g{std::move(one)};
      GrMatrix<ExactScalar> d0(z, 1, 1);
      d0.at(0, 0) = XV::delta(z, g) - XV::delta(z, identity(z));
      return ComplexSpec(z, {std::move(d0)});
    }
    case BuiltinComplex::Z2: {
      auto z2 = GroupSpec::free_abelian(2);
      GroupElement::Data ad{1, 0}, bd{0, 1};
      GroupElement a{GroupElement::Data{1, 0}};
      GroupElement b{GroupElement::Data{0, 1}};
      auto e = identity(z2);
      auto am1 = XV::delta(z2, a) - XV::delta(z2, e);
      auto bm1 = XV::delta(z2, b) - XV::delta(z2, e);
      GrMatrix<ExactScalar> d0(z2, 1, 2);
      d0.at(0, 0) = am1;
      d0.at(0, 1) = bm1;
      GrMatrix<ExactScalar> d1(z2, 2, 1);
      d1.at(0, 0) = bm1;
      d1.at(1, 0) = -am1;
      return ComplexSpec(z2, {std::move(d0), std::move(d1)});
    }
    case BuiltinComplex::Fk: {
      if (k < 1) throw DomainError("F_k complex needs k >= 1");
      auto fk = GroupSpec::free_group(k);
      GrMatrix<ExactScalar> d0(fk, 1, static_cast<std::size_t>(k));
      for (std::int64_t i = 1; i <= k; ++i) {
        GroupElement::Data d;
        d.push_back(i);
        d0.at(0, static_cast<std::size_t>(i - 1)) =
            XV::delta(fk, GroupElement{std::move(d)}) -
            XV::delta(fk, identity(fk));
      }
      return ComplexSpec(fk, {std::move(d0)});
    }
  }
  throw DomainError("unknown builtin complex");
}

}  // namespace lplab
