#pragma once

#include <vector>

#include "wgr/graph.hpp"

namespace wgr {

// Connected components of the layer. Every vertex appears exactly once.
// Components are ordered by their smallest vertex id and each component's
// vertex list is ascending.
std::vector<std::vector<Vertex>> components(const LayerView& view);

// Per-vertex component label in [0, #components), labels assigned in the
// same smallest-vertex order as components().
std::vector<std::uint32_t> component_labels(const LayerView& view);

}  // namespace wgr
