#pragma once

// Explicit adjacency-list model of the finite tree region, for checking the
// closed-form geometry of TreeMasure by breadth-first search.

#include <cstdint>
#include <deque>
#include <map>
#include <vector>

#include "masurelab/tree_masure.hpp"

namespace oracle {

class TreeGraph {
public:
  TreeGraph(std::int64_t q, std::int64_t depth) : q_(q), depth_(depth) {
    for (std::int64_t p = -depth; p <= depth; ++p) {
      int id = add({p, 0, 0});
      if (p > -depth) link(id, index_.at({p - 1, 0, 0}));
    }
    for (std::int64_t p = -depth; p <= depth; ++p) {
      int root = index_.at({p, 0, 0});
      for (std::int64_t c = 0; c + 1 < q; ++c) grow(root, {p, 1, static_cast<std::uint64_t>(c)});
    }
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<masurelab::Vertex>& labels() const { return labels_; }
  const std::vector<int>& neighbors(int id) const { return adj_[static_cast<std::size_t>(id)]; }
  int id(const masurelab::Vertex& v) const { return index_.at(v); }

  std::vector<std::int64_t> distances(int from) const {
    std::vector<std::int64_t> d(labels_.size(), -1);
    std::deque<int> queue{from};
    d[static_cast<std::size_t>(from)] = 0;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : adj_[static_cast<std::size_t>(v)])
        if (d[static_cast<std::size_t>(w)] < 0) {
          d[static_cast<std::size_t>(w)] = d[static_cast<std::size_t>(v)] + 1;
          queue.push_back(w);
        }
    }
    return d;
  }

  // Busemann values toward the two ends, read from the far apartment vertices.
  std::vector<std::int64_t> rho_minus() const {
    auto d = distances(index_.at({-depth_, 0, 0}));
    for (auto& x : d) x -= depth_;
    return d;
  }
  std::vector<std::int64_t> rho_plus() const {
    auto d = distances(index_.at({depth_, 0, 0}));
    for (auto& x : d) x = depth_ - x;
    return d;
  }

private:
  int add(const masurelab::Vertex& v) {
    int id = static_cast<int>(labels_.size());
    labels_.push_back(v);
    adj_.emplace_back();
    index_[v] = id;
    return id;
  }

  void link(int a, int b) {
    adj_[static_cast<std::size_t>(a)].push_back(b);
    adj_[static_cast<std::size_t>(b)].push_back(a);
  }

  void grow(int parent, masurelab::Vertex v) {
    if (v.depth > depth_) return;
    int id = add(v);
    link(parent, id);
    for (std::int64_t c = 0; c < q_; ++c)
      grow(id, {v.gate, v.depth + 1, v.code * static_cast<std::uint64_t>(q_) + static_cast<std::uint64_t>(c)});
  }

  std::int64_t q_, depth_;
  std::vector<masurelab::Vertex> labels_;
  std::vector<std::vector<int>> adj_;
  std::map<masurelab::Vertex, int> index_;
};

}  // namespace oracle
