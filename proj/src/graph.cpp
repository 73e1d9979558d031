#include "covfail/graph.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "covfail/error.hpp"

namespace covfail {

const NodeSpec* CommunicationGraph::find(const VertexLabel& id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::string FenceDiagnostics::summary() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    if (i) out << "; ";
    out << problems[i];
  }
  return out.str();
}

FenceDiagnostics validate_fence(const CommunicationGraph& g) {
  FenceDiagnostics d;
  auto fail = [&d](std::string msg) {
    d.ok = false;
    d.problems.push_back(std::move(msg));
  };

  std::unordered_map<VertexLabel, const NodeSpec*> by_id;
  for (const auto& n : g.nodes) {
    if (!by_id.emplace(n.id, &n).second) fail("duplicate node id '" + n.id + "'");
  }

  std::set<std::pair<VertexLabel, VertexLabel>> adjacent;
  for (const auto& [a, b] : g.edges) {
    if (!by_id.count(a) || !by_id.count(b)) {
      fail("edge (" + a + "," + b + ") references an undeclared node");
      continue;
    }
    if (a == b) {
      fail("self-loop on '" + a + "'");
      continue;
    }
    adjacent.emplace(a, b);
    adjacent.emplace(b, a);
  }

  const auto& fence = g.fence_order;
  if (fence.size() < 3) {
    fail("fence cycle too short: " + std::to_string(fence.size()) + " node(s), need at least 3");
  }

  std::unordered_set<VertexLabel> on_fence;
  for (const auto& id : fence) {
    if (!by_id.count(id)) fail("fence node '" + id + "' is not declared");
    if (!on_fence.insert(id).second) fail("fence visits '" + id + "' twice; not a simple cycle");
  }
  for (const auto& n : g.nodes) {
    if (n.fence != (on_fence.count(n.id) > 0)) {
      fail("fence flag of '" + n.id + "' disagrees with the fence order");
    }
  }

  if (fence.size() >= 2) {
    const std::size_t pairs = fence.size() == 2 ? 1 : fence.size();
    for (std::size_t i = 0; i < pairs; ++i) {
      const auto& a = fence[i];
      const auto& b = fence[(i + 1) % fence.size()];
      if (!adjacent.count({a, b})) {
        d.missing_edges.emplace_back(a, b);
        fail("consecutive fence nodes (" + a + "," + b + ") are not adjacent");
      }
    }
  }
  return d;
}

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

CommunicationGraph rips_graph_from_points(const std::vector<LabeledPoint>& points,
                                          double broadcast_radius,
                                          const std::vector<VertexLabel>& fence_order) {
  if (!(broadcast_radius > 0.0)) throw Error("broadcast radius must be positive");
  if (fence_order.size() < 3) {
    throw FenceInvalid("fence cycle too short: " + std::to_string(fence_order.size()) +
                       " node(s), need at least 3");
  }

  std::unordered_map<VertexLabel, Point> where;
  for (const auto& p : points) {
    if (!where.emplace(p.id, p.position).second) throw Error("duplicate point id '" + p.id + "'");
  }
  std::unordered_set<VertexLabel> fence_set;
  for (const auto& id : fence_order) {
    if (!where.count(id)) throw FenceInvalid("fence node '" + id + "' has no position");
    if (!fence_set.insert(id).second) throw FenceInvalid("fence visits '" + id + "' twice");
  }
  for (std::size_t i = 0; i < fence_order.size(); ++i) {
    const auto& a = fence_order[i];
    const auto& b = fence_order[(i + 1) % fence_order.size()];
    if (!(distance(where[a], where[b]) < broadcast_radius)) {
      throw FenceGapError("fence neighbours (" + a + "," + b + ") are not within broadcast radius");
    }
  }

  CommunicationGraph g;
  g.fence_order = fence_order;
  g.nodes.reserve(points.size());
  for (const auto& p : points) {
    g.nodes.push_back(NodeSpec{p.id, fence_set.count(p.id) > 0, p.position, std::nullopt});
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (distance(points[i].position, points[j].position) < broadcast_radius) {
        g.edges.emplace_back(points[i].id, points[j].id);
      }
    }
  }
  return g;
}

}  // namespace covfail
