#include "wgr/components.hpp"

#include <vector>

namespace wgr {

std::vector<std::uint32_t> component_labels(const LayerView& view) {
  const std::size_t n = view.vertex_count();
  constexpr std::uint32_t kNone = 0xffffffffu;
  std::vector<std::uint32_t> label(n, kNone);
  std::vector<Vertex> stack;
  std::uint32_t next = 0;
  for (Vertex start = 0; start < n; ++start) {
    if (label[start] != kNone) continue;
    label[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      view.for_each_neighbor(u, [&](Vertex v, double) {
        if (label[v] == kNone) {
          label[v] = next;
          stack.push_back(v);
        }
      });
    }
    ++next;
  }
  return label;
}

std::vector<std::vector<Vertex>> components(const LayerView& view) {
  auto labels = component_labels(view);
  std::uint32_t count = 0;
  for (std::uint32_t l : labels) count = std::max(count, l + 1);
  std::vector<std::vector<Vertex>> out(count);
  for (Vertex v = 0; v < labels.size(); ++v) out[labels[v]].push_back(v);
  return out;
}

}  // namespace wgr
