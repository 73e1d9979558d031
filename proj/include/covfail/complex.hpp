#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "covfail/graph.hpp"

namespace covfail {

using VertexIndex = std::uint32_t;
using Edge = std::array<VertexIndex, 2>;      ///< sorted ascending
using Triangle = std::array<VertexIndex, 3>;  ///< sorted ascending

/// Abstract 2-dimensional simplicial complex with a fence cycle.
///
/// Vertices are densely indexed in input order; every query that leaves the
/// complex maps back to the input labels. Immutable once built.
class SimplicialComplex2 {
 public:
  SimplicialComplex2() = default;

  /// Assembles a complex from explicit parts. Edges and triangles are
  /// normalised and deduplicated; throws FenceInvalid when a simplex misses
  /// a face or the fence order is not a cycle of edges.
  static SimplicialComplex2 from_parts(std::vector<VertexLabel> labels,
                                       std::vector<VertexIndex> fence_order,
                                       std::vector<Edge> edges, std::vector<Triangle> triangles,
                                       bool clique_complete,
                                       std::vector<std::optional<Point>> positions = {});

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  const VertexLabel& label(VertexIndex v) const { return labels_.at(v); }
  const std::vector<VertexLabel>& labels() const noexcept { return labels_; }
  std::optional<VertexIndex> find(const VertexLabel& label) const;
  VertexIndex index_of(const VertexLabel& label) const;  ///< throws UnknownVertex

  bool is_fence(VertexIndex v) const { return fence_flag_.at(v); }
  const std::vector<VertexIndex>& fence_order() const noexcept { return fence_order_; }
  std::vector<VertexIndex> interior_vertices() const;

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  bool has_edge(VertexIndex a, VertexIndex b) const;
  bool has_triangle(VertexIndex a, VertexIndex b, VertexIndex c) const;
  /// True when the edge is one of the consecutive fence pairs.
  bool is_fence_edge(const Edge& e) const;
  std::size_t edge_index(const Edge& e) const;  ///< position in edges(); edge must exist

  const std::optional<Point>& position(VertexIndex v) const { return positions_.at(v); }

  /// Set when triangles are exactly the 3-cliques of the edge set.
  bool clique_complete() const noexcept { return clique_complete_; }

  /// Label-level equality: same labelled simplices and the same fence cycle.
  friend bool operator==(const SimplicialComplex2& a, const SimplicialComplex2& b);

 private:
  std::vector<VertexLabel> labels_;
  std::unordered_map<VertexLabel, VertexIndex> index_;
  std::vector<bool> fence_flag_;
  std::vector<VertexIndex> fence_order_;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
  std::vector<std::optional<Point>> positions_;
  bool clique_complete_ = false;
};

Edge make_edge(VertexIndex a, VertexIndex b);
Triangle make_triangle(VertexIndex a, VertexIndex b, VertexIndex c);

/// Rips 2-skeleton: every 3-clique of the graph becomes a triangle.
/// Throws FenceInvalid when validate_fence rejects the graph.
SimplicialComplex2 build_rips_2skeleton(const CommunicationGraph& g);

/// Largest subcomplex avoiding `removed`. Only interior vertices may be
/// removed (FenceRemovalError otherwise).
SimplicialComplex2 remove_vertices(const SimplicialComplex2& k,
                                   std::span<const VertexLabel> removed);
SimplicialComplex2 remove_vertices(const SimplicialComplex2& k,
                                   std::span<const VertexIndex> removed);

/// A 1-complex in label space. Vertices sorted; each edge stored with its
/// endpoints ordered, edge list sorted.
struct LinkGraph {
  std::vector<VertexLabel> vertices;
  std::vector<std::pair<VertexLabel, VertexLabel>> edges;

  bool contains_vertex(const VertexLabel& v) const;
  /// Drops `v` and every edge touching it. Returns true if anything changed.
  bool erase_vertex(const VertexLabel& v);

  friend bool operator==(const LinkGraph&, const LinkGraph&) = default;
};

LinkGraph link(const SimplicialComplex2& k, const VertexLabel& w);

struct GraphBetti {
  std::size_t beta0 = 0;
  std::size_t beta1 = 0;
  friend bool operator==(const GraphBetti&, const GraphBetti&) = default;
};

GraphBetti graph_betti(const LinkGraph& g);

/// Z2 Betti numbers of the whole complex.
struct ComplexBetti {
  std::size_t beta0 = 0;
  std::size_t beta1 = 0;
  std::size_t beta2 = 0;
};

ComplexBetti complex_betti(const SimplicialComplex2& k);

/// Scans every simplex for missing faces.
bool is_downward_closed(const SimplicialComplex2& k);

}  // namespace covfail
