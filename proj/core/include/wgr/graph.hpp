#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace wgr {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u = 0;  // always u < v
  Vertex v = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct AdjEntry {
  Vertex to;
  double weight;
};

// Immutable undirected graph with positive real edge weights >= 1.
// Vertex ids are dense 0..n-1. Self loops and parallel edges are rejected.
class WeightedGraph {
public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }

  // Edges in canonical order: u < v, sorted by (u, v).
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const AdjEntry> neighbors(Vertex u) const;
  std::size_t degree(Vertex u) const { return neighbors(u).size(); }

  // 0.0 when the pair is not an edge.
  double edge_weight(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const { return edge_weight(u, v) != 0.0; }

  std::size_t max_degree() const { return max_degree_; }

  // Largest edge weight; an edgeless graph reports 1.0.
  double max_weight() const { return max_weight_; }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<AdjEntry> adj_;          // CSR payload
  std::vector<std::uint32_t> offsets_; // CSR offsets, size n_+1
  std::size_t max_degree_ = 0;
  double max_weight_ = 1.0;
};

// Read-only view of the subgraph keeping edges with weight >= threshold.
// All vertices are kept. Thresholds below 1 are invalid.
class LayerView {
public:
  LayerView(const WeightedGraph& g, double threshold);

  const WeightedGraph& graph() const { return *graph_; }
  double threshold() const { return threshold_; }
  bool keeps(double w) const { return w >= threshold_; }

  std::size_t vertex_count() const { return graph_->vertex_count(); }
  std::size_t edge_count() const;

  template <typename F>
  void for_each_neighbor(Vertex u, F&& f) const {
    for (const AdjEntry& e : graph_->neighbors(u)) {
      if (e.weight >= threshold_) f(e.to, e.weight);
    }
  }

private:
  const WeightedGraph* graph_;
  double threshold_;
};

inline LayerView layer(const WeightedGraph& g, double threshold) {
  return LayerView(g, threshold);
}

inline std::uint64_t edge_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (std::uint64_t(u) << 32) | std::uint64_t(v);
}

// Weighted edge accumulator with canonical (u < v) keys. Re-adding an edge
// with a different weight is a hard error: the sources we merge from all
// report the stored weight verbatim.
class EdgeSet {
public:
  void add(Vertex u, Vertex v, double w);
  void merge(const EdgeSet& other);

  bool contains(Vertex u, Vertex v) const {
    return map_.find(edge_key(u, v)) != map_.end();
  }
  double weight(Vertex u, Vertex v) const;
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }

  std::vector<Edge> sorted_edges() const;

private:
  std::unordered_map<std::uint64_t, double> map_;
};

}  // namespace wgr
