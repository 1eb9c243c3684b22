#pragma once

#include <algorithm>
#include <memory>
#include <unordered_map>
#include <vector>

#include "lplab/gens.hpp"
#include "lplab/group.hpp"

namespace lplab {

// Cayley-graph ball of radius R: all elements of word length <= R,
// breadth-first layer by layer, each layer sorted lexicographically so the
// vertex indexing (and everything downstream of it) is reproducible.
// Interior = word length < R, frontier = word length == R.
class CayleyBall {
 public:
  CayleyBall(GroupSpec group, GeneratingSet gens, std::int64_t radius,
             std::size_t vertex_cap = 1u << 21)
      : group_(std::move(group)), gens_(std::move(gens)), radius_(radius) {
    if (radius_ < 0) throw DomainError("ball radius must be >= 0");
    if (!is_symmetric(group_, gens_))
      throw DomainError("generating set not symmetric");
    if (contains_identity(group_, gens_))
      throw DomainError("generating set contains the identity");

    std::unordered_map<GroupElement, std::int32_t, GroupElementHash> seen;
    std::vector<GroupElement> layer{identity(group_)};
    seen.emplace(layer[0], 0);
    vertices_ = layer;
    layer_of_.push_back(0);
    for (std::int64_t r = 1; r <= radius_ && !layer.empty(); ++r) {
      std::vector<GroupElement> next;
      for (const auto& v : layer) {
        for (const auto& s : gens_.elements) {
          GroupElement u = mul(group_, v, s);
          if (seen.emplace(u, 0).second) next.push_back(std::move(u));
        }
      }
      std::sort(next.begin(), next.end());
      if (vertices_.size() + next.size() > vertex_cap)
        throw ResourceLimitError("ball vertex cap exceeded");
      for (auto& u : next) {
        vertices_.push_back(u);
        layer_of_.push_back(r);
      }
      layer = std::move(next);
    }
    index_.reserve(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      index_.emplace(vertices_[i], static_cast<std::int32_t>(i));
    interior_count_ = 0;
    while (interior_count_ < vertices_.size() &&
           layer_of_[interior_count_] < radius_)
      ++interior_count_;

    neighbor_.assign(vertices_.size() * gens_.size(), -1);
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      for (std::size_t j = 0; j < gens_.size(); ++j) {
        GroupElement u = mul(group_, vertices_[i], gens_.elements[j]);
        auto it = index_.find(u);
        if (it != index_.end()) neighbor_[i * gens_.size() + j] = it->second;
      }
    }
  }

  const GroupSpec& group() const { return group_; }
  const GeneratingSet& gens() const { return gens_; }
  std::int64_t radius() const { return radius_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<GroupElement>& vertices() const { return vertices_; }
  const GroupElement& vertex(std::size_t i) const { return vertices_[i]; }
  std::int64_t layer(std::size_t i) const { return layer_of_[i]; }
  std::size_t interior_count() const { return interior_count_; }
  bool is_interior(std::size_t i) const { return layer_of_[i] < radius_; }
  bool frontier_empty() const { return interior_count_ == vertices_.size(); }

  std::int32_t index_of(const GroupElement& v) const {
    auto it = index_.find(v);
    return it == index_.end() ? -1 : it->second;
  }

  // Index of v*gens[j], or -1 when it lies outside the ball.
  std::int32_t neighbor(std::size_t i, std::size_t j) const {
    return neighbor_[i * gens_.size() + j];
  }

  // True when every generator move from vertex i stays inside. Interior
  // vertices always qualify; so do all vertices of a full finite ball.
  bool all_neighbors_inside(std::size_t i) const {
    for (std::size_t j = 0; j < gens_.size(); ++j)
      if (neighbor(i, j) < 0) return false;
    return true;
  }

 private:
  GroupSpec group_;
  GeneratingSet gens_;
  std::int64_t radius_;
  std::vector<GroupElement> vertices_;
  std::vector<std::int64_t> layer_of_;
  std::unordered_map<GroupElement, std::int32_t, GroupElementHash> index_;
  std::vector<std::int32_t> neighbor_;
  std::size_t interior_count_ = 0;
};

inline CayleyBall ball(const GroupSpec& g, const GeneratingSet& s,
                       std::int64_t radius,
                       std::size_t vertex_cap = 1u << 21) {
  return CayleyBall(g, s, radius, vertex_cap);
}

inline CayleyBall ball(const GroupSpec& g, std::int64_t radius,
                       std::size_t vertex_cap = 1u << 21) {
  return CayleyBall(g, GeneratingSet::standard(g), radius, vertex_cap);
}

struct NeighborEntry {
  GroupElement s;
  GroupElement target;  // v*s
  bool inside;
  std::int32_t index;  // ball index of target, -1 if outside
};

inline std::vector<NeighborEntry> neighbors(const CayleyBall& b,
                                            const GroupElement& v) {
  std::int32_t i = b.index_of(v);
  if (i < 0) throw DomainError("neighbors: vertex not in ball");
  std::vector<NeighborEntry> out;
  out.reserve(b.gens().size());
  for (std::size_t j = 0; j < b.gens().size(); ++j) {
    NeighborEntry e;
    e.s = b.gens().elements[j];
    e.target = mul(b.group(), v, e.s);
    e.index = b.neighbor(static_cast<std::size_t>(i), j);
    e.inside = e.index >= 0;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace lplab
