#include "wgr/shortest_paths.hpp"

#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

namespace wgr {

DistanceMap shortest_paths(const LayerView& view, Vertex source) {
  const std::size_t n = view.vertex_count();
  if (source >= n) {
    throw std::invalid_argument("invalid-pair: source " +
                                std::to_string(source) + " out of range");
  }
  DistanceMap out;
  out.source = source;
  out.dist.assign(n, kInfDist);
  out.hops.assign(n, kUnreachableHops);

  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  out.dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > out.dist[u]) continue;
    view.for_each_neighbor(u, [&](Vertex v, double w) {
      double nd = d + w;
      if (nd < out.dist[v]) {
        out.dist[v] = nd;
        heap.push({nd, v});
      }
    });
  }

  std::queue<Vertex> q;
  out.hops[source] = 0;
  q.push(source);
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    view.for_each_neighbor(u, [&](Vertex v, double) {
      if (out.hops[v] == kUnreachableHops) {
        out.hops[v] = out.hops[u] + 1;
        q.push(v);
      }
    });
  }
  return out;
}

bool is_transitive_edge(const WeightedGraph& g, Vertex u, Vertex v) {
  const double w = g.edge_weight(u, v);
  if (w == 0.0) {
    throw std::invalid_argument("not-an-edge: (" + std::to_string(u) + ", " +
                                std::to_string(v) + ")");
  }
  // Dijkstra from u with the direct edge masked, cut off above w.
  const std::size_t n = g.vertex_count();
  std::vector<double> dist(n, kInfDist);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[u] = 0.0;
  heap.push({0.0, u});
  while (!heap.empty()) {
    auto [d, at] = heap.top();
    heap.pop();
    if (d > dist[at]) continue;
    if (d > w) break;  // nothing reachable at or under w remains
    for (const AdjEntry& e : g.neighbors(at)) {
      if (at == u && e.to == v) continue;
      if (at == v && e.to == u) continue;
      double nd = d + e.weight;
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        heap.push({nd, e.to});
      }
    }
  }
  return dist[v] <= w;
}

}  // namespace wgr
