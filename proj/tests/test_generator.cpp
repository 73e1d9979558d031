#include <cmath>

#include "covfail/complex.hpp"
#include "covfail/error.hpp"
#include "covfail/generator.hpp"
#include "covfail/persistence.hpp"
#include "doctest.h"

using namespace covfail;

namespace {

std::vector<Point> positions(const CommunicationGraph& g) {
  std::vector<Point> out;
  for (const auto& n : g.nodes) out.push_back(*n.position);
  return out;
}

}  // namespace

TEST_CASE("polygon helpers") {
  const auto sq = square_domain(2.0);
  CHECK(is_convex_polygon(sq));
  CHECK(polygon_area(sq) == doctest::Approx(4.0));
  std::vector<Point> reversed(sq.rbegin(), sq.rend());
  CHECK(is_convex_polygon(reversed));
  CHECK(inside_convex_polygon(reversed, {1.0, 1.0}));
  CHECK(inside_convex_polygon(sq, {2.0, 1.0}));
  CHECK_FALSE(inside_convex_polygon(sq, {2.1, 1.0}));
  const std::vector<Point> dart = {{0, 0}, {2, 0}, {1, 0.5}, {1, 2}};
  CHECK_FALSE(is_convex_polygon(dart));
  CHECK_FALSE(is_convex_polygon(std::vector<Point>{{0, 0}, {1, 1}}));
}

TEST_CASE("fence sensors are evenly spaced and interior sensors inside") {
  GeneratorSpec spec;
  spec.polygon = square_domain(1.0);
  spec.broadcast_radius = 0.3;
  spec.fence_spacing = 0.25;
  spec.interior_count = 40;
  spec.seed = 3;
  const auto inst = generate_instance(spec);
  const auto& g = inst.graph;
  CHECK(inst.cover_radius == doctest::Approx(0.3 / std::sqrt(3.0)));
  CHECK(inst.warnings.empty());
  REQUIRE(g.fence_order.size() == 16);
  CHECK(g.nodes.size() == 56);
  CHECK(validate_fence(g).ok);
  for (std::size_t i = 0; i < g.fence_order.size(); ++i) {
    const auto a = *g.find(g.fence_order[i])->position;
    const auto b = *g.find(g.fence_order[(i + 1) % g.fence_order.size()])->position;
    CHECK(distance(a, b) == doctest::Approx(0.25));
  }
  for (const auto& n : g.nodes) {
    CHECK(inside_convex_polygon(spec.polygon, *n.position));
  }
  for (const auto& [a, b] : g.edges) {
    CHECK(distance(*g.find(a)->position, *g.find(b)->position) < 0.3);
  }
}

TEST_CASE("generation is deterministic in the seed") {
  GeneratorSpec spec;
  spec.polygon = {{0, 0}, {2, 0}, {2.5, 1.5}, {0.5, 2}};
  spec.broadcast_radius = 0.5;
  spec.interior_count = 30;
  spec.seed = 11;
  CHECK(generate_instance(spec).graph == generate_instance(spec).graph);
  auto other = spec;
  other.seed = 12;
  CHECK_FALSE(generate_instance(spec).graph == generate_instance(other).graph);
}

TEST_CASE("generator rejects bad parameters") {
  GeneratorSpec spec;
  spec.polygon = square_domain(1.0);
  spec.broadcast_radius = 0.3;
  auto bad = spec;
  bad.polygon = {{0, 0}, {2, 0}, {1, 0.5}, {1, 2}};
  CHECK_THROWS_AS(generate_instance(bad), Error);
  bad = spec;
  bad.broadcast_radius = 0.0;
  CHECK_THROWS_AS(generate_instance(bad), Error);
  bad = spec;
  bad.fence_spacing = 0.3;
  CHECK_THROWS_AS(generate_instance(bad), Error);
  bad = spec;
  bad.cover_radius = 0.1;
  CHECK_THROWS_AS(generate_instance(bad), Error);
  bad.allow_small_cover_radius = true;
  const auto inst = generate_instance(bad);
  REQUIRE(inst.warnings.size() == 1);
  CHECK(inst.cover_radius == doctest::Approx(0.1));
}

TEST_CASE("coverage oracle") {
  const auto sq = square_domain(1.0);
  // One node at the centre covers the square once the radius reaches the
  // half diagonal.
  const std::vector<Point> centre = {{0.5, 0.5}};
  CHECK(coverage_oracle(centre, std::sqrt(0.5) + 1e-9, sq, 0.01).covered);
  const auto miss = coverage_oracle(centre, 0.6, sq, 0.01);
  CHECK_FALSE(miss.covered);
  REQUIRE(miss.worst_uncovered.has_value());
  CHECK(miss.worst_gap == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
  CHECK_FALSE(coverage_oracle({}, 1.0, sq, 0.1).covered);
  CHECK(coverage_oracle(centre, 1.0, sq, 0.1).samples > 100);
  CHECK_THROWS_AS(coverage_oracle(centre, 1.0, sq, 0.0), Error);
}

TEST_CASE("a passing generated field is covered") {
  std::size_t passing = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GeneratorSpec spec;
    spec.polygon = square_domain(1.0);
    spec.interior_count = 50 + seed % 40;
    spec.broadcast_radius = 0.35;
    spec.seed = seed;
    const auto inst = generate_instance(spec);
    if (!check_dsg(reduce_complex(build_rips_2skeleton(inst.graph))).pass) continue;
    ++passing;
    CHECK(coverage_oracle(positions(inst.graph), inst.cover_radius, spec.polygon, inst.cover_radius / 50).covered);
  }
  CHECK(passing > 5);
}
