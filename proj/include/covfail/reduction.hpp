#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "covfail/complex.hpp"

namespace covfail {

struct ReliabilityEdge {
  VertexLabel a;
  VertexLabel b;
  double p = 0.0;  ///< failure probability
};

/// Two-terminal network reliability: does a working s-t path exist?
struct ReliabilityInstance {
  std::vector<VertexLabel> vertices;  ///< input order fixes the level map
  std::vector<ReliabilityEdge> edges;
  VertexLabel s;
  VertexLabel t;
  double q = 1.0;
};

/// One square of the product, split around its barycenter.
struct Rectangle {
  VertexLabel barycenter;
  std::size_t source_edge = 0;  ///< index into the instance's edges
  int level = 0;                ///< lower level of the subedge
};

/// The 2-dimensional instance. The cycle Y is stored as the fence of
/// `complex`; only non-Y vertices carry a failure probability.
struct Reduced2DInstance {
  SimplicialComplex2 complex;
  std::map<VertexLabel, double> failure;
  std::vector<Rectangle> rectangles;
  std::map<VertexLabel, int> level;  ///< level of each vertex of the input graph
};

/// Builds the product complex of the subdivided graph with an interval,
/// top and bottom collapsed level by level. Throws DegenerateGraph on
/// malformed input.
Reduced2DInstance reduce_instance(const ReliabilityInstance& inst);

/// Number of triangle chains whose boundary is exactly Y. Throws TooLarge
/// beyond 10000 triangles or 63 free dimensions.
std::uint64_t count_fundamental_classes(const Reduced2DInstance& x);

/// Probability that s and t stay connected. Edges with probability 0 or 1
/// are fixed; at most 20 others are enumerated, else TooLarge.
double reliability_bruteforce_1d(const ReliabilityInstance& inst);

/// Probability that a chain bounding Y survives. Same enumeration limits
/// over the non-Y vertices.
double reliability_bruteforce_2d(const Reduced2DInstance& x);

}  // namespace covfail
