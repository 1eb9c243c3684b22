#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lplab/group.hpp"

namespace lplab {

// Ordered finite symmetric generating set. The built-in standard sets pair
// each generator with its inverse; user-supplied sets are allowed as long
// as they are symmetric and avoid the identity.
struct GeneratingSet {
  std::vector<GroupElement> elements;

  static GeneratingSet standard(const GroupSpec& g);

  std::size_t size() const { return elements.size(); }

  friend bool operator==(const GeneratingSet& a, const GeneratingSet& b) {
    return a.elements == b.elements;
  }
};

inline GeneratingSet GeneratingSet::standard(const GroupSpec& g) {
  GeneratingSet s;
  switch (g.kind()) {
    case GroupKind::FreeAbelian: {
      for (std::int64_t i = 0; i < g.param(); ++i) {
        GroupElement::Data plus(static_cast<std::size_t>(g.param()), 0);
        plus[static_cast<std::size_t>(i)] = 1;
        GroupElement::Data minus(static_cast<std::size_t>(g.param()), 0);
        minus[static_cast<std::size_t>(i)] = -1;
        s.elements.emplace_back(std::move(plus));
        s.elements.emplace_back(std::move(minus));
      }
      break;
    }
    case GroupKind::Free: {
      for (std::int64_t i = 1; i <= g.param(); ++i) {
        GroupElement::Data plus;
        plus.push_back(i);
        GroupElement::Data minus;
        minus.push_back(-i);
        s.elements.emplace_back(std::move(plus));
        s.elements.emplace_back(std::move(minus));
      }
      break;
    }
    case GroupKind::FiniteCyclic: {
      std::int64_t m = g.param();
      if (m >= 2) {
        GroupElement::Data one;
        one.assign(1, 1);
        s.elements.emplace_back(std::move(one));
        if (m > 2) {
          GroupElement::Data minus_one;
          minus_one.assign(1, m - 1);
          s.elements.emplace_back(std::move(minus_one));
        }
      }
      break;
    }
    case GroupKind::DirectProduct: {
      // Mixed moves: every tuple with each slot the identity or a standard
      // generator of its factor, except the all-identity tuple. This is the
      // standard set for which the max-over-factors metric is the word
      // metric and |B_R| factors as a product.
      std::vector<std::vector<GroupElement>> options;
      for (const auto& f : g.factors()) {
        std::vector<GroupElement> opts;
        opts.push_back(identity(f));
        auto sub = GeneratingSet::standard(f);
        for (auto& e : sub.elements) opts.push_back(std::move(e));
        options.push_back(std::move(opts));
      }
      std::vector<std::size_t> idx(options.size(), 0);
      while (true) {
        bool all_id = true;
        for (std::size_t i = 0; i < idx.size(); ++i)
          if (idx[i] != 0) all_id = false;
        if (!all_id) {
          std::vector<GroupElement> parts;
          for (std::size_t i = 0; i < idx.size(); ++i)
            parts.push_back(options[i][idx[i]]);
          s.elements.push_back(compose_parts(g, parts));
        }
        std::size_t i = idx.size();
        while (i > 0) {
          --i;
          if (++idx[i] < options[i].size()) break;
          idx[i] = 0;
          if (i == 0) return s;
        }
      }
    }
  }
  return s;
}

inline bool is_symmetric(const GroupSpec& g, const GeneratingSet& s) {
  std::unordered_set<GroupElement, GroupElementHash> set(s.elements.begin(),
                                                         s.elements.end());
  for (const auto& e : s.elements)
    if (!set.count(inv(g, e))) return false;
  return true;
}

inline bool contains_identity(const GroupSpec& g, const GeneratingSet& s) {
  GroupElement e = identity(g);
  for (const auto& x : s.elements)
    if (x == e) return true;
  return false;
}

// Word length with respect to the standard set, by normal form: sum of
// |coordinates| on Z^d, reduced word length on F_k, min(r, m-r) on C_m,
// max over factors on products.
inline std::int64_t standard_word_length(const GroupSpec& g,
                                         const GroupElement& x) {
  const auto& a = x.data();
  switch (g.kind()) {
    case GroupKind::FreeAbelian: {
      std::int64_t n = 0;
      for (auto v : a) n += v < 0 ? -v : v;
      return n;
    }
    case GroupKind::Free:
      return static_cast<std::int64_t>(a.size());
    case GroupKind::FiniteCyclic:
      return std::min(a[0], g.param() - a[0]);
    case GroupKind::DirectProduct: {
      std::int64_t n = 0;
      auto parts = factor_parts(g, x);
      for (std::size_t i = 0; i < parts.size(); ++i)
        n = std::max(n, standard_word_length(g.factors()[i], parts[i]));
      return n;
    }
  }
  return 0;
}

// Cayley distance from the identity. Closed form for the standard set,
// breadth-first search (capped) otherwise.
inline std::int64_t word_length(const GroupSpec& g, const GeneratingSet& s,
                                const GroupElement& x,
                                std::size_t bfs_cap = 1u << 22) {
  if (s == GeneratingSet::standard(g)) return standard_word_length(g, x);
  if (!is_symmetric(g, s)) throw DomainError("generating set not symmetric");
  GroupElement e = identity(g);
  if (x == e) return 0;
  std::unordered_map<GroupElement, std::int64_t, GroupElementHash> dist;
  dist.emplace(e, 0);
  std::vector<GroupElement> frontier{e};
  std::int64_t d = 0;
  while (!frontier.empty()) {
    ++d;
    std::vector<GroupElement> next;
    for (const auto& v : frontier) {
      for (const auto& gen : s.elements) {
        GroupElement u = mul(g, v, gen);
        if (dist.emplace(u, d).second) {
          if (u == x) return d;
          next.push_back(std::move(u));
        }
      }
    }
    if (dist.size() > bfs_cap)
      throw ResourceLimitError("word_length: BFS cap exceeded");
    frontier = std::move(next);
  }
  throw DomainError("element not generated by the given set");
}

}  // namespace lplab
