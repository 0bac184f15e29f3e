#include "wgr/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wgr {

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  for (Edge& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v) {
      throw std::invalid_argument("not-an-edge: self loop at vertex " +
                                  std::to_string(e.u));
    }
    if (e.v >= n_) {
      throw std::invalid_argument("not-an-edge: vertex id " +
                                  std::to_string(e.v) + " out of range");
    }
    if (!(e.weight >= 1.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("invalid-threshold: edge weight " +
                                  std::to_string(e.weight) +
                                  " outside [1, inf)");
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v) {
      throw std::invalid_argument("not-an-edge: parallel edge (" +
                                  std::to_string(edges_[i].u) + ", " +
                                  std::to_string(edges_[i].v) + ")");
    }
  }

  std::vector<std::uint32_t> degree(n_, 0);
  for (const Edge& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adj_.resize(2 * edges_.size());
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adj_[cursor[e.u]++] = {e.v, e.weight};
    adj_[cursor[e.v]++] = {e.u, e.weight};
  }

  max_degree_ = 0;
  for (std::size_t v = 0; v < n_; ++v)
    max_degree_ = std::max<std::size_t>(max_degree_, degree[v]);
  max_weight_ = 1.0;
  for (const Edge& e : edges_) max_weight_ = std::max(max_weight_, e.weight);
}

std::span<const AdjEntry> WeightedGraph::neighbors(Vertex u) const {
  if (u >= n_) {
    throw std::invalid_argument("invalid-pair: vertex id " +
                                std::to_string(u) + " out of range");
  }
  return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
}

double WeightedGraph::edge_weight(Vertex u, Vertex v) const {
  for (const AdjEntry& e : neighbors(u)) {
    if (e.to == v) return e.weight;
  }
  if (v >= n_) {
    throw std::invalid_argument("invalid-pair: vertex id " +
                                std::to_string(v) + " out of range");
  }
  return 0.0;
}

LayerView::LayerView(const WeightedGraph& g, double threshold)
    : graph_(&g), threshold_(threshold) {
  if (!(threshold >= 1.0)) {
    throw std::invalid_argument("invalid-threshold: " +
                                std::to_string(threshold) + " below 1");
  }
}

std::size_t LayerView::edge_count() const {
  std::size_t count = 0;
  for (const Edge& e : graph_->edges()) {
    if (e.weight >= threshold_) ++count;
  }
  return count;
}

void EdgeSet::add(Vertex u, Vertex v, double w) {
  auto [it, inserted] = map_.emplace(edge_key(u, v), w);
  if (!inserted && it->second != w) {
    throw std::logic_error("edge re-added with a different weight");
  }
}

void EdgeSet::merge(const EdgeSet& other) {
  for (const auto& [key, w] : other.map_) {
    auto [it, inserted] = map_.emplace(key, w);
    if (!inserted && it->second != w) {
      throw std::logic_error("edge re-added with a different weight");
    }
  }
}

double EdgeSet::weight(Vertex u, Vertex v) const {
  auto it = map_.find(edge_key(u, v));
  return it == map_.end() ? 0.0 : it->second;
}

std::vector<Edge> EdgeSet::sorted_edges() const {
  std::vector<Edge> out;
  out.reserve(map_.size());
  for (const auto& [key, w] : map_) {
    out.push_back({Vertex(key >> 32), Vertex(key & 0xffffffffu), w});
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  return out;
}

}  // namespace wgr
