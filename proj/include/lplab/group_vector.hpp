#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "lplab/ball.hpp"
#include "lplab/group.hpp"
#include "lplab/scalar.hpp"

namespace lplab {

// Compensated (Kahan) accumulator; norm sums over large supports must not
// drift past the 1e-12 acceptance tolerances.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// Finitely supported group-ring element over scalar type S (ExactScalar or
// FloatScalar; the modes are distinct instantiations, so mixing them is a
// compile error). Terms are sorted by element and never zero, so equal
// vectors have identical term lists.
template <class S>
class GroupVector {
 public:
  using Term = std::pair<GroupElement, S>;

  explicit GroupVector(GroupSpec group) : group_(std::move(group)) {}

  static GroupVector zero(GroupSpec group) {
    return GroupVector(std::move(group));
  }

  static GroupVector delta(GroupSpec group, GroupElement x,
                           S coeff = ScalarTraits<S>::one()) {
    GroupVector v(std::move(group));
    if (!ScalarTraits<S>::is_zero(coeff))
      v.terms_.emplace_back(std::move(x), std::move(coeff));
    return v;
  }

  // Sorts, merges duplicate elements, drops zero coefficients.
  static GroupVector from_terms(GroupSpec group, std::vector<Term> terms) {
    GroupVector v(std::move(group));
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    for (auto& t : terms) {
      if (!v.terms_.empty() && v.terms_.back().first == t.first) {
        v.terms_.back().second += t.second;
        if (ScalarTraits<S>::is_zero(v.terms_.back().second))
          v.terms_.pop_back();
      } else if (!ScalarTraits<S>::is_zero(t.second)) {
        v.terms_.push_back(std::move(t));
      }
    }
    return v;
  }

  const GroupSpec& group() const { return group_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  S coefficient(const GroupElement& x) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), x,
        [](const Term& t, const GroupElement& e) { return t.first < e; });
    if (it != terms_.end() && it->first == x) return it->second;
    return S{};
  }

  friend bool operator==(const GroupVector& a, const GroupVector& b) {
    return a.group_ == b.group_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const GroupVector& a, const GroupVector& b) {
    return !(a == b);
  }

  friend GroupVector operator+(const GroupVector& a, const GroupVector& b) {
    return merge(a, b, false);
  }
  friend GroupVector operator-(const GroupVector& a, const GroupVector& b) {
    return merge(a, b, true);
  }
  GroupVector operator-() const {
    GroupVector v(group_);
    v.terms_.reserve(terms_.size());
    for (const auto& t : terms_) v.terms_.emplace_back(t.first, -t.second);
    return v;
  }
  friend GroupVector operator*(const S& c, const GroupVector& a) {
    GroupVector v(a.group_);
    if (ScalarTraits<S>::is_zero(c)) return v;
    v.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_) {
      S prod = c * t.second;
      if (!ScalarTraits<S>::is_zero(prod))
        v.terms_.emplace_back(t.first, std::move(prod));
    }
    return v;
  }

  // Coefficient sum (image under the augmentation map g -> 1).
  S augmentation() const {
    S sum{};
    for (const auto& t : terms_) sum += t.second;
    return sum;
  }

 private:
  static GroupVector merge(const GroupVector& a, const GroupVector& b,
                           bool subtract) {
    if (a.group_ != b.group_) throw DomainError("group mismatch");
    GroupVector v(a.group_);
    v.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      bool take_a =
          j == b.terms_.size() ||
          (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first);
      bool take_b =
          i == a.terms_.size() ||
          (j < b.terms_.size() && b.terms_[j].first < a.terms_[i].first);
      if (take_a) {
        v.terms_.push_back(a.terms_[i++]);
      } else if (take_b) {
        const auto& t = b.terms_[j++];
        v.terms_.emplace_back(t.first, subtract ? -t.second : t.second);
      } else {
        S c = subtract ? a.terms_[i].second - b.terms_[j].second
                       : a.terms_[i].second + b.terms_[j].second;
        if (!ScalarTraits<S>::is_zero(c))
          v.terms_.emplace_back(a.terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return v;
  }

  GroupSpec group_;
  std::vector<Term> terms_;
};

// (alpha*beta)_g = sum_x alpha_{g x^-1} beta_x; every support pair
// contributes coefficient alpha_a*beta_b at the product element a*b.
template <class S>
GroupVector<S> convolve(const GroupVector<S>& a, const GroupVector<S>& b) {
  if (a.group() != b.group()) throw DomainError("group mismatch in convolve");
  std::vector<typename GroupVector<S>::Term> terms;
  terms.reserve(a.support_size() * b.support_size());
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms())
      terms.emplace_back(mul(a.group(), ta.first, tb.first),
                         ta.second * tb.second);
  return GroupVector<S>::from_terms(a.group(), std::move(terms));
}

template <class S>
GroupVector<S> operator*(const GroupVector<S>& a, const GroupVector<S>& b) {
  return convolve(a, b);
}

// delta_h * v: pointwise left translation of the support.
template <class S>
GroupVector<S> left_translate(const GroupElement& h, const GroupVector<S>& v) {
  std::vector<typename GroupVector<S>::Term> terms;
  terms.reserve(v.support_size());
  for (const auto& t : v.terms())
    terms.emplace_back(mul(v.group(), h, t.first), t.second);
  return GroupVector<S>::from_terms(v.group(), std::move(terms));
}

// Adjoint under the * involution: g -> g^-1 with conjugated coefficients.
template <class S>
GroupVector<S> star(const GroupVector<S>& v) {
  std::vector<typename GroupVector<S>::Term> terms;
  terms.reserve(v.support_size());
  for (const auto& t : v.terms())
    terms.emplace_back(inv(v.group(), t.first),
                       ScalarTraits<S>::conj(t.second));
  return GroupVector<S>::from_terms(v.group(), std::move(terms));
}

namespace detail {

template <class S>
double coeff_abs(const S& c) {
  if constexpr (ScalarTraits<S>::is_exact) {
    if (c.im.is_zero()) return std::abs(c.re.to_double());
    return std::sqrt(c.abs_squared().to_double());
  } else {
    return std::abs(c);
  }
}

inline void check_p(double p) {
  if (!(p > 1.0)) throw DomainError("p must be > 1");
}

}  // namespace detail

template <class S>
void accumulate_p_powers(const GroupVector<S>& v, double p, KahanSum& sum) {
  for (const auto& t : v.terms())
    sum.add(std::pow(detail::coeff_abs(t.second), p));
}

template <class S>
double p_norm(const GroupVector<S>& v, double p) {
  detail::check_p(p);
  KahanSum sum;
  accumulate_p_powers(v, p, sum);
  return std::pow(sum.value(), 1.0 / p);
}

template <class S>
double one_norm(const GroupVector<S>& v) {
  KahanSum sum;
  for (const auto& t : v.terms()) sum.add(detail::coeff_abs(t.second));
  return sum.value();
}

template <class S>
double sup_norm(const GroupVector<S>& v) {
  double m = 0.0;
  for (const auto& t : v.terms())
    m = std::max(m, detail::coeff_abs(t.second));
  return m;
}

// Ordered m-tuple over one group; the computational stand-in for
// l^p(G)^m.
template <class S>
struct VectorTuple {
  GroupSpec group;
  std::vector<GroupVector<S>> components;

  explicit VectorTuple(GroupSpec g) : group(std::move(g)) {}
  VectorTuple(GroupSpec g, std::vector<GroupVector<S>> comps)
      : group(std::move(g)), components(std::move(comps)) {
    for (const auto& c : components)
      if (c.group() != group) throw DomainError("tuple component group mismatch");
  }
  static VectorTuple single(GroupVector<S> v) {
    VectorTuple t(v.group());
    t.components.push_back(std::move(v));
    return t;
  }

  std::size_t arity() const { return components.size(); }

  friend bool operator==(const VectorTuple& a, const VectorTuple& b) {
    return a.group == b.group && a.components == b.components;
  }
};

template <class S>
double p_norm(const VectorTuple<S>& t, double p) {
  detail::check_p(p);
  KahanSum sum;
  for (const auto& c : t.components) accumulate_p_powers(c, p, sum);
  return std::pow(sum.value(), 1.0 / p);
}

template <class S>
double one_norm(const VectorTuple<S>& t) {
  KahanSum sum;
  for (const auto& c : t.components)
    for (const auto& term : c.terms())
      sum.add(detail::coeff_abs(term.second));
  return sum.value();
}

template <class S>
VectorTuple<S> convolve(const GroupVector<S>& a, const VectorTuple<S>& t) {
  VectorTuple<S> out(t.group);
  out.components.reserve(t.arity());
  for (const auto& c : t.components) out.components.push_back(convolve(a, c));
  return out;
}

template <class S>
VectorTuple<S> left_translate(const GroupElement& h, const VectorTuple<S>& t) {
  VectorTuple<S> out(t.group);
  out.components.reserve(t.arity());
  for (const auto& c : t.components)
    out.components.push_back(left_translate(h, c));
  return out;
}

template <class S>
VectorTuple<S> operator*(const S& c, const VectorTuple<S>& t) {
  VectorTuple<S> out(t.group);
  out.components.reserve(t.arity());
  for (const auto& comp : t.components) out.components.push_back(c * comp);
  return out;
}

template <class S>
VectorTuple<S> operator+(const VectorTuple<S>& a, const VectorTuple<S>& b) {
  if (a.arity() != b.arity()) throw DomainError("tuple arity mismatch");
  VectorTuple<S> out(a.group);
  for (std::size_t i = 0; i < a.arity(); ++i)
    out.components.push_back(a.components[i] + b.components[i]);
  return out;
}

template <class S>
VectorTuple<S> operator-(const VectorTuple<S>& a, const VectorTuple<S>& b) {
  if (a.arity() != b.arity()) throw DomainError("tuple arity mismatch");
  VectorTuple<S> out(a.group);
  for (std::size_t i = 0; i < a.arity(); ++i)
    out.components.push_back(a.components[i] - b.components[i]);
  return out;
}

struct YoungCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

inline constexpr double kYoungSlack = 1e-9;

// ||alpha*beta||_p <= ||alpha||_1 ||beta||_p.
template <class S>
YoungCheck young_check(const GroupVector<S>& a, const GroupVector<S>& b,
                       double p) {
  YoungCheck r;
  r.lhs = p_norm(convolve(a, b), p);
  r.rhs = one_norm(a) * p_norm(b, p);
  r.holds = r.lhs <= r.rhs + kYoungSlack;
  return r;
}

// Tuple form: u in l^1(G), v in l^p(G)^m, convolution componentwise.
template <class S>
YoungCheck young_check(const GroupVector<S>& u, const VectorTuple<S>& v,
                       double p) {
  YoungCheck r;
  r.lhs = p_norm(convolve(u, v), p);
  r.rhs = one_norm(u) * p_norm(v, p);
  r.holds = r.lhs <= r.rhs + kYoungSlack;
  return r;
}

// Second tuple form: u in l^p(G), v in l^1(G)^m;
// ||uv||_p^p <= ||u||_p^p * sum_k ||v_k||_1^p.
template <class S>
YoungCheck young_check_lp_times_l1(const GroupVector<S>& u,
                                   const VectorTuple<S>& v, double p) {
  YoungCheck r;
  r.lhs = p_norm(convolve(u, v), p);
  KahanSum sum;
  for (const auto& c : v.components) sum.add(std::pow(one_norm(c), p));
  r.rhs = p_norm(u, p) * std::pow(sum.value(), 1.0 / p);
  r.holds = r.lhs <= r.rhs + kYoungSlack;
  return r;
}

// r x c matrix of group-ring entries; the shape of the maps induced by
// resolution differentials.
template <class S>
class GrMatrix {
 public:
  GrMatrix(GroupSpec group, std::size_t rows, std::size_t cols)
      : group_(std::move(group)),
        rows_(rows),
        cols_(cols),
        entries_(rows * cols, GroupVector<S>::zero(group_)) {}

  static GrMatrix identity_matrix(const GroupSpec& g, std::size_t n) {
    GrMatrix m(g, n, n);
    for (std::size_t i = 0; i < n; ++i)
      m.at(i, i) = GroupVector<S>::delta(g, identity(g));
    return m;
  }

  const GroupSpec& group() const { return group_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  GroupVector<S>& at(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const GroupVector<S>& at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

 private:
  GroupSpec group_;
  std::size_t rows_, cols_;
  std::vector<GroupVector<S>> entries_;
};

// Left action on column tuples: out_i = sum_j M(i,j) * t_j.
template <class S>
VectorTuple<S> gr_matrix_apply(const GrMatrix<S>& m, const VectorTuple<S>& t) {
  if (t.arity() != m.cols()) throw DomainError("gr_matrix_apply: shape mismatch");
  if (t.group != m.group()) throw DomainError("gr_matrix_apply: group mismatch");
  VectorTuple<S> out(m.group());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    GroupVector<S> acc = GroupVector<S>::zero(m.group());
    for (std::size_t j = 0; j < m.cols(); ++j)
      acc = acc + convolve(m.at(i, j), t.components[j]);
    out.components.push_back(std::move(acc));
  }
  return out;
}

// Dual (cohomology) action by right multiplication: out_j = sum_i t_i * M(i,j).
template <class S>
VectorTuple<S> gr_matrix_apply_dual(const GrMatrix<S>& m,
                                    const VectorTuple<S>& t) {
  if (t.arity() != m.rows())
    throw DomainError("gr_matrix_apply_dual: shape mismatch");
  if (t.group != m.group())
    throw DomainError("gr_matrix_apply_dual: group mismatch");
  VectorTuple<S> out(m.group());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    GroupVector<S> acc = GroupVector<S>::zero(m.group());
    for (std::size_t i = 0; i < m.rows(); ++i)
      acc = acc + convolve(t.components[i], m.at(i, j));
    out.components.push_back(std::move(acc));
  }
  return out;
}

template <class S>
GrMatrix<S> gr_matrix_mul(const GrMatrix<S>& a, const GrMatrix<S>& b) {
  if (a.cols() != b.rows()) throw DomainError("gr_matrix_mul: shape mismatch");
  if (a.group() != b.group()) throw DomainError("gr_matrix_mul: group mismatch");
  GrMatrix<S> out(a.group(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      GroupVector<S> acc = GroupVector<S>::zero(a.group());
      for (std::size_t k = 0; k < a.cols(); ++k)
        acc = acc + convolve(a.at(i, k), b.at(k, j));
      out.at(i, j) = std::move(acc);
    }
  return out;
}

// Transpose with the * involution applied entrywise; realizes the
// opposite-side module structure with the same engine.
template <class S>
GrMatrix<S> star_transpose(const GrMatrix<S>& m) {
  GrMatrix<S> out(m.group(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out.at(j, i) = star(m.at(i, j));
  return out;
}

}  // namespace lplab
