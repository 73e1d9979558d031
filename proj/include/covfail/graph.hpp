#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace covfail {

using VertexLabel = std::string;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Per-node failure-time distributions.
struct Exponential {
  double rate = 1.0;
  friend bool operator==(const Exponential&, const Exponential&) = default;
};

struct Weibull {
  double shape = 1.0;
  double scale = 1.0;
  friend bool operator==(const Weibull&, const Weibull&) = default;
};

/// Time-independent failure probability.
struct FixedProbability {
  double p = 0.0;
  friend bool operator==(const FixedProbability&, const FixedProbability&) = default;
};

using FailureSpec = std::variant<Exponential, Weibull, FixedProbability>;

struct NodeSpec {
  VertexLabel id;
  bool fence = false;
  std::optional<Point> position;
  std::optional<FailureSpec> failure;

  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

/// Connectivity data as reported by the network: who hears whom, plus the
/// cyclic order of the boundary sensors.
struct CommunicationGraph {
  std::vector<NodeSpec> nodes;
  std::vector<std::pair<VertexLabel, VertexLabel>> edges;
  std::vector<VertexLabel> fence_order;

  const NodeSpec* find(const VertexLabel& id) const;

  friend bool operator==(const CommunicationGraph&, const CommunicationGraph&) = default;
};

struct FenceDiagnostics {
  bool ok = true;
  std::vector<std::string> problems;
  /// Consecutive fence pairs with no edge between them.
  std::vector<std::pair<VertexLabel, VertexLabel>> missing_edges;

  std::string summary() const;
};

/// Structural checks on the input graph and its fence. Never throws.
FenceDiagnostics validate_fence(const CommunicationGraph& g);

struct LabeledPoint {
  VertexLabel id;
  Point position;
};

/// Geometric Rips graph: an edge joins two points strictly closer than
/// `broadcast_radius`. Points named in `fence_order` become fence nodes.
CommunicationGraph rips_graph_from_points(const std::vector<LabeledPoint>& points,
                                          double broadcast_radius,
                                          const std::vector<VertexLabel>& fence_order);

double distance(const Point& a, const Point& b);

}  // namespace covfail
