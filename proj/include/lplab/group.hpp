#pragma once

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lplab/errors.hpp"

namespace lplab {

enum class GroupKind { FreeAbelian, Free, FiniteCyclic, DirectProduct };

// A finitely generated group with a decidable normal form: Z^d, F_k, C_m,
// or a finite direct product of those. Products are flattened (a product
// never has a product factor), which keeps element encodings canonical.
class GroupSpec {
 public:
  static GroupSpec free_abelian(std::int64_t d) {
    require(d >= 1, "Z^d needs d >= 1");
    return GroupSpec(GroupKind::FreeAbelian, d);
  }
  static GroupSpec free_group(std::int64_t k) {
    require(k >= 1, "F_k needs k >= 1");
    return GroupSpec(GroupKind::Free, k);
  }
  static GroupSpec finite_cyclic(std::int64_t m) {
    require(m >= 1, "C_m needs m >= 1");
    return GroupSpec(GroupKind::FiniteCyclic, m);
  }
  static GroupSpec direct_product(std::vector<GroupSpec> factors) {
    std::vector<GroupSpec> flat;
    for (auto& f : factors) {
      if (f.kind() == GroupKind::DirectProduct)
        for (auto& g : f.factors_) flat.push_back(std::move(g));
      else
        flat.push_back(std::move(f));
    }
    require(flat.size() >= 2, "direct product needs >= 2 factors");
    GroupSpec s(GroupKind::DirectProduct, 0);
    s.factors_ = std::move(flat);
    return s;
  }

  // Grammar: `Z`, `Z^d`, `F<k>`, `C<m>`, factors joined by `x`.
  // Whitespace-insensitive; errors carry the offending position.
  static GroupSpec parse(std::string_view text);

  GroupKind kind() const { return kind_; }
  std::int64_t param() const { return param_; }  // d, k, or m
  const std::vector<GroupSpec>& factors() const { return factors_; }

  bool is_infinite() const {
    switch (kind_) {
      case GroupKind::FreeAbelian:
      case GroupKind::Free:
        return true;
      case GroupKind::FiniteCyclic:
        return false;
      case GroupKind::DirectProduct:
        for (const auto& f : factors_)
          if (f.is_infinite()) return true;
        return false;
    }
    return false;
  }

  // Group order when finite.
  std::optional<std::uint64_t> order() const {
    switch (kind_) {
      case GroupKind::FreeAbelian:
      case GroupKind::Free:
        return std::nullopt;
      case GroupKind::FiniteCyclic:
        return static_cast<std::uint64_t>(param_);
      case GroupKind::DirectProduct: {
        std::uint64_t n = 1;
        for (const auto& f : factors_) {
          auto o = f.order();
          if (!o) return std::nullopt;
          n *= *o;
        }
        return n;
      }
    }
    return std::nullopt;
  }

  std::string to_string() const {
    switch (kind_) {
      case GroupKind::FreeAbelian:
        return param_ == 1 ? "Z" : "Z^" + std::to_string(param_);
      case GroupKind::Free:
        return "F" + std::to_string(param_);
      case GroupKind::FiniteCyclic:
        return "C" + std::to_string(param_);
      case GroupKind::DirectProduct: {
        std::string out;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
          if (i) out += " x ";
          out += factors_[i].to_string();
        }
        return out;
      }
    }
    return {};
  }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    if (a.kind_ != b.kind_ || a.param_ != b.param_) return false;
    return a.factors_ == b.factors_;
  }
  friend bool operator!=(const GroupSpec& a, const GroupSpec& b) {
    return !(a == b);
  }

 private:
  GroupSpec(GroupKind k, std::int64_t p) : kind_(k), param_(p) {}
  static void require(bool ok, const char* msg) {
    if (!ok) throw DomainError(msg);
  }

  GroupKind kind_;
  std::int64_t param_;
  std::vector<GroupSpec> factors_;
};

// Canonical element encoding, one flat integer vector:
//   Z^d            d coordinates
//   F_k            freely reduced word, letters +i / -i for a_i / a_i^-1
//   C_m            one residue in [0, m)
//   direct product factor segments concatenated; free-group segments are
//                  length-prefixed (the other kinds have fixed width)
// Equal elements have equal encodings, so vector comparison is element
// comparison and doubles as the deterministic lexicographic tie-break.
class GroupElement {
 public:
  using Data = boost::container::small_vector<std::int64_t, 4>;

  GroupElement() = default;
  explicit GroupElement(Data d) : data_(std::move(d)) {}

  const Data& data() const { return data_; }
  Data& mutable_data() { return data_; }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.data_ == b.data_;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) {
    return !(a == b);
  }
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return std::lexicographical_compare(a.data_.begin(), a.data_.end(),
                                        b.data_.begin(), b.data_.end());
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : data_) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  Data data_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& e) const { return e.hash(); }
};

namespace detail {

// Encoded width of one product factor starting at data[pos].
inline std::size_t factor_width(const GroupSpec& f, const GroupElement::Data& d,
                                std::size_t pos) {
  switch (f.kind()) {
    case GroupKind::FreeAbelian:
      return static_cast<std::size_t>(f.param());
    case GroupKind::FiniteCyclic:
      return 1;
    case GroupKind::Free: {
      if (pos >= d.size() || d[pos] < 0)
        throw DomainError("element/group mismatch: bad free segment");
      return 1 + static_cast<std::size_t>(d[pos]);
    }
    case GroupKind::DirectProduct:
      throw InternalError("nested product in element encoding");
  }
  return 0;
}

inline void reduce_concat(GroupElement::Data& out, const std::int64_t* w,
                          std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!out.empty() && out.back() == -w[i])
      out.pop_back();
    else
      out.push_back(w[i]);
  }
}

}  // namespace detail

inline GroupElement identity(const GroupSpec& g) {
  GroupElement::Data d;
  switch (g.kind()) {
    case GroupKind::FreeAbelian:
      d.assign(static_cast<std::size_t>(g.param()), 0);
      break;
    case GroupKind::Free:
      break;
    case GroupKind::FiniteCyclic:
      d.assign(1, 0);
      break;
    case GroupKind::DirectProduct:
      for (const auto& f : g.factors()) {
        if (f.kind() == GroupKind::Free) d.push_back(0);
        auto sub = identity(f).data();
        d.insert(d.end(), sub.begin(), sub.end());
      }
      break;
  }
  return GroupElement(std::move(d));
}

// Full well-formedness check for externally supplied encodings.
inline void validate_element(const GroupSpec& g, const GroupElement& x);

inline GroupElement mul(const GroupSpec& g, const GroupElement& x,
                        const GroupElement& y) {
  const auto& a = x.data();
  const auto& b = y.data();
  GroupElement::Data d;
  switch (g.kind()) {
    case GroupKind::FreeAbelian: {
      auto n = static_cast<std::size_t>(g.param());
      if (a.size() != n || b.size() != n)
        throw DomainError("element/group mismatch in mul");
      d.resize(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = a[i] + b[i];
      break;
    }
    case GroupKind::Free: {
      d.assign(a.begin(), a.end());
      detail::reduce_concat(d, b.data(), b.size());
      break;
    }
    case GroupKind::FiniteCyclic: {
      if (a.size() != 1 || b.size() != 1)
        throw DomainError("element/group mismatch in mul");
      d.assign(1, (a[0] + b[0]) % g.param());
      break;
    }
    case GroupKind::DirectProduct: {
      std::size_t pa = 0, pb = 0;
      for (const auto& f : g.factors()) {
        std::size_t wa = detail::factor_width(f, a, pa);
        std::size_t wb = detail::factor_width(f, b, pb);
        GroupElement::Data sa, sb;
        bool free_factor = f.kind() == GroupKind::Free;
        sa.assign(a.begin() + pa + (free_factor ? 1 : 0), a.begin() + pa + wa);
        sb.assign(b.begin() + pb + (free_factor ? 1 : 0), b.begin() + pb + wb);
        auto prod =
            mul(f, GroupElement(std::move(sa)), GroupElement(std::move(sb)));
        if (free_factor)
          d.push_back(static_cast<std::int64_t>(prod.data().size()));
        d.insert(d.end(), prod.data().begin(), prod.data().end());
        pa += wa;
        pb += wb;
      }
      if (pa != a.size() || pb != b.size())
        throw DomainError("element/group mismatch in mul");
      break;
    }
  }
  return GroupElement(std::move(d));
}

inline GroupElement inv(const GroupSpec& g, const GroupElement& x) {
  const auto& a = x.data();
  GroupElement::Data d;
  switch (g.kind()) {
    case GroupKind::FreeAbelian: {
      d.resize(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) d[i] = -a[i];
      break;
    }
    case GroupKind::Free: {
      d.resize(a.size());
      for (std::size_t i = 0; i < a.size(); ++i)
        d[i] = -a[a.size() - 1 - i];
      break;
    }
    case GroupKind::FiniteCyclic: {
      if (a.size() != 1) throw DomainError("element/group mismatch in inv");
      d.assign(1, a[0] == 0 ? 0 : g.param() - a[0]);
      break;
    }
    case GroupKind::DirectProduct: {
      std::size_t p = 0;
      for (const auto& f : g.factors()) {
        std::size_t w = detail::factor_width(f, a, p);
        bool free_factor = f.kind() == GroupKind::Free;
        GroupElement::Data s(a.begin() + p + (free_factor ? 1 : 0),
                             a.begin() + p + w);
        auto ifac = inv(f, GroupElement(std::move(s)));
        if (free_factor)
          d.push_back(static_cast<std::int64_t>(ifac.data().size()));
        d.insert(d.end(), ifac.data().begin(), ifac.data().end());
        p += w;
      }
      break;
    }
  }
  return GroupElement(std::move(d));
}

inline bool has_infinite_order(const GroupSpec& g, const GroupElement& x) {
  const auto& a = x.data();
  switch (g.kind()) {
    case GroupKind::FreeAbelian:
      for (auto v : a)
        if (v != 0) return true;
      return false;
    case GroupKind::Free:
      return !a.empty();
    case GroupKind::FiniteCyclic:
      return false;
    case GroupKind::DirectProduct: {
      std::size_t p = 0;
      for (const auto& f : g.factors()) {
        std::size_t w = detail::factor_width(f, a, p);
        bool free_factor = f.kind() == GroupKind::Free;
        GroupElement::Data s(a.begin() + p + (free_factor ? 1 : 0),
                             a.begin() + p + w);
        if (has_infinite_order(f, GroupElement(std::move(s)))) return true;
        p += w;
      }
      return false;
    }
  }
  return false;
}

inline GroupElement pow(const GroupSpec& g, const GroupElement& x,
                        std::int64_t e) {
  GroupElement base = e < 0 ? inv(g, x) : x;
  std::int64_t n = e < 0 ? -e : e;
  GroupElement out = identity(g);
  while (n > 0) {
    if (n & 1) out = mul(g, out, base);
    if (n > 1) base = mul(g, base, base);
    n >>= 1;
  }
  return out;
}

inline void validate_element(const GroupSpec& g, const GroupElement& x) {
  const auto& a = x.data();
  switch (g.kind()) {
    case GroupKind::FreeAbelian:
      if (a.size() != static_cast<std::size_t>(g.param()))
        throw DomainError("element/group mismatch: wrong coordinate count");
      return;
    case GroupKind::Free:
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0 || a[i] > g.param() || a[i] < -g.param())
          throw DomainError("element/group mismatch: letter out of range");
        if (i + 1 < a.size() && a[i + 1] == -a[i])
          throw DomainError("element/group mismatch: word not reduced");
      }
      return;
    case GroupKind::FiniteCyclic:
      if (a.size() != 1 || a[0] < 0 || a[0] >= g.param())
        throw DomainError("element/group mismatch: residue out of range");
      return;
    case GroupKind::DirectProduct: {
      std::size_t p = 0;
      for (const auto& f : g.factors()) {
        std::size_t w = detail::factor_width(f, a, p);
        bool free_factor = f.kind() == GroupKind::Free;
        if (p + w > a.size())
          throw DomainError("element/group mismatch: truncated encoding");
        GroupElement::Data s(a.begin() + p + (free_factor ? 1 : 0),
                             a.begin() + p + w);
        validate_element(f, GroupElement(std::move(s)));
        p += w;
      }
      if (p != a.size())
        throw DomainError("element/group mismatch: trailing data");
      return;
    }
  }
}

// Splits a product element into factor elements (identity op for atoms).
inline std::vector<GroupElement> factor_parts(const GroupSpec& g,
                                              const GroupElement& x) {
  if (g.kind() != GroupKind::DirectProduct) return {x};
  std::vector<GroupElement> parts;
  const auto& a = x.data();
  std::size_t p = 0;
  for (const auto& f : g.factors()) {
    std::size_t w = detail::factor_width(f, a, p);
    bool free_factor = f.kind() == GroupKind::Free;
    GroupElement::Data s(a.begin() + p + (free_factor ? 1 : 0),
                         a.begin() + p + w);
    parts.emplace_back(std::move(s));
    p += w;
  }
  return parts;
}

inline GroupElement compose_parts(const GroupSpec& g,
                                  const std::vector<GroupElement>& parts) {
  if (g.kind() != GroupKind::DirectProduct) {
    if (parts.size() != 1) throw DomainError("compose_parts: arity mismatch");
    return parts[0];
  }
  if (parts.size() != g.factors().size())
    throw DomainError("compose_parts: arity mismatch");
  GroupElement::Data d;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (g.factors()[i].kind() == GroupKind::Free)
      d.push_back(static_cast<std::int64_t>(parts[i].data().size()));
    d.insert(d.end(), parts[i].data().begin(), parts[i].data().end());
  }
  return GroupElement(std::move(d));
}

}  // namespace lplab
