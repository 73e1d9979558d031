#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covfail/graph.hpp"

namespace covfail {

/// Synthetic sensor field: fence sensors along the boundary of a convex
/// polygon, interior sensors uniform inside it.
struct GeneratorSpec {
  std::vector<Point> polygon;            ///< convex, either orientation
  std::size_t interior_count = 0;
  double broadcast_radius = 1.0;         ///< r_b
  std::optional<double> cover_radius;    ///< r_c, defaults to r_b / sqrt(3)
  std::optional<double> fence_spacing;   ///< defaults to r_b / 2
  std::uint64_t seed = 0;
  bool allow_small_cover_radius = false;
};

struct GeneratedInstance {
  CommunicationGraph graph;
  double cover_radius = 0.0;
  std::vector<std::string> warnings;
};

std::vector<Point> square_domain(double side);

bool is_convex_polygon(std::span<const Point> polygon);
/// Inclusive point-in-convex-polygon test.
bool inside_convex_polygon(std::span<const Point> polygon, const Point& p, double tolerance = 1e-12);
double polygon_area(std::span<const Point> polygon);

GeneratedInstance generate_instance(const GeneratorSpec& spec);

struct CoverageResult {
  bool covered = true;
  std::size_t samples = 0;
  std::optional<Point> worst_uncovered;  ///< uncovered sample farthest from every node
  double worst_gap = 0.0;                ///< its distance to the nearest node
};

/// Samples the polygon on a square grid of step `grid_step` and checks each
/// sample lies within `cover_radius` of some node.
CoverageResult coverage_oracle(std::span<const Point> nodes, double cover_radius,
                               std::span<const Point> polygon, double grid_step);

}  // namespace covfail
