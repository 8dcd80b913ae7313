#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "maxcut/error.hpp"

namespace maxcut {

using Vertex = std::size_t;
using Weight = std::int64_t;

/// Per-vertex side label: 1 = in S, 0 = in V \ S.
using Assignment = std::vector<std::uint8_t>;

struct Edge {
  Vertex u;
  Vertex v;
  Weight w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex vertex;
  Weight weight;
};

/**
 * Immutable weighted undirected graph.
 *
 * Edges are stored once with u < v, sorted by (u, v), and mirrored into a
 * compressed adjacency array. Construction drops zero-weight edges and rejects
 * self-loops, out-of-range endpoints and duplicate pairs.
 */
class Graph {
public:
  Graph() = default;

  Graph(std::size_t n, std::vector<Edge> edges, std::string name = {})
      : n_(n), name_(std::move(name)) {
    edges_.reserve(edges.size());
    for (auto e : edges) {
      if (e.u >= n || e.v >= n) {
        throw InvalidInput("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           ") out of range for n=" + std::to_string(n));
      }
      if (e.u == e.v) throw InvalidInput("self-loop on vertex " + std::to_string(e.u));
      if (e.w == 0) continue;
      if (e.u > e.v) std::swap(e.u, e.v);
      edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
      return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
        throw InvalidInput("duplicate edge (" + std::to_string(edges_[i].u) + "," +
                           std::to_string(edges_[i].v) + ")");
      }
    }
    build_adjacency();
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  std::span<const Neighbor> neighbors(Vertex v) const noexcept {
    return std::span<const Neighbor>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
  }

  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  // Structural equality; the name is a label and does not participate.
  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
  void build_adjacency() {
    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
    adjacency_.resize(offsets_[n_]);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
      adjacency_[cursor[e.u]++] = {e.v, e.w};
      adjacency_[cursor[e.v]++] = {e.u, e.w};
    }
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::string name_;
};

}  // namespace maxcut
