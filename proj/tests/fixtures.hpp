#pragma once

// Hand-built networks shared by the test suites.

#include <string>
#include <vector>

#include "covfail/complex.hpp"
#include "covfail/graph.hpp"

namespace covfail::fixtures {

inline std::string fence_label(std::size_t i) { return "v" + std::to_string(i); }

/// Fence cycle v1..vk and nothing else.
inline CommunicationGraph fence_graph(std::size_t k) {
  CommunicationGraph g;
  for (std::size_t i = 1; i <= k; ++i) {
    g.nodes.push_back({fence_label(i), true, std::nullopt, std::nullopt});
    g.fence_order.push_back(fence_label(i));
  }
  for (std::size_t i = 1; i <= k; ++i) g.edges.emplace_back(fence_label(i), fence_label(i % k + 1));
  return g;
}

/// Fence plus a hub h adjacent to every fence vertex.
inline CommunicationGraph wheel_graph(std::size_t k) {
  auto g = fence_graph(k);
  g.nodes.push_back({"h", false, std::nullopt, std::nullopt});
  for (std::size_t i = 1; i <= k; ++i) g.edges.emplace_back("h", fence_label(i));
  return g;
}

/// Hexagon with interior a (v1..v4, b) and b (v4..v6, v1, a).
inline CommunicationGraph twin_graph() {
  auto g = fence_graph(6);
  g.nodes.push_back({"a", false, std::nullopt, std::nullopt});
  g.nodes.push_back({"b", false, std::nullopt, std::nullopt});
  for (auto v : {"v1", "v2", "v3", "v4"}) g.edges.emplace_back("a", v);
  for (auto v : {"v4", "v5", "v6", "v1"}) g.edges.emplace_back("b", v);
  g.edges.emplace_back("a", "b");
  return g;
}

/// Hexagon with interior a and b each adjacent to the whole fence and to
/// each other.
inline CommunicationGraph pair_graph() {
  auto g = fence_graph(6);
  g.nodes.push_back({"a", false, std::nullopt, std::nullopt});
  g.nodes.push_back({"b", false, std::nullopt, std::nullopt});
  for (std::size_t i = 1; i <= 6; ++i) {
    g.edges.emplace_back("a", fence_label(i));
    g.edges.emplace_back("b", fence_label(i));
  }
  g.edges.emplace_back("a", "b");
  return g;
}

/// Bare fence cycle with no triangles, even for k = 3 (so not a Rips complex
/// in that case).
inline SimplicialComplex2 fence(std::size_t k) {
  std::vector<VertexLabel> labels;
  std::vector<VertexIndex> order;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < k; ++i) {
    labels.push_back(fence_label(i + 1));
    order.push_back(static_cast<VertexIndex>(i));
    edges.push_back(make_edge(static_cast<VertexIndex>(i), static_cast<VertexIndex>((i + 1) % k)));
  }
  return SimplicialComplex2::from_parts(std::move(labels), std::move(order), std::move(edges), {},
                                        k > 3);
}
inline SimplicialComplex2 wheel(std::size_t k) { return build_rips_2skeleton(wheel_graph(k)); }
inline SimplicialComplex2 twin() { return build_rips_2skeleton(twin_graph()); }
inline SimplicialComplex2 pair() { return build_rips_2skeleton(pair_graph()); }

}  // namespace covfail::fixtures
