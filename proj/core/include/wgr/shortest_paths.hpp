#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "wgr/graph.hpp"

namespace wgr {

inline constexpr double kInfDist = std::numeric_limits<double>::infinity();
inline constexpr std::uint32_t kUnreachableHops =
    std::numeric_limits<std::uint32_t>::max();

// Single-source results on one layer. dist carries weighted shortest-path
// distances (+inf when unreachable); hops carries unweighted BFS distances
// in the same layer.
struct DistanceMap {
  Vertex source = 0;
  std::vector<double> dist;
  std::vector<std::uint32_t> hops;
};

// Dijkstra plus BFS from source on the layer. Allocates its own state, so
// concurrent calls on distinct outputs are safe.
DistanceMap shortest_paths(const LayerView& view, Vertex source);

// True when some path between the edge's endpoints, other than the edge
// itself, has total weight <= the edge's weight. The pair must be an edge.
bool is_transitive_edge(const WeightedGraph& g, Vertex u, Vertex v);

}  // namespace wgr
