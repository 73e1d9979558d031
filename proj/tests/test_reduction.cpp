#include <cmath>

#include "covfail/error.hpp"
#include "covfail/persistence.hpp"
#include "covfail/reduction.hpp"
#include "doctest.h"
#include "reliability_graphs.hpp"

using namespace covfail;
using namespace covfail::testing;

namespace {

ReliabilityInstance single_edge() { return make_reliability({"s", "t"}, {{"s", "t"}}, 0.3); }

ReliabilityInstance two_paths() {
  return make_reliability({"s", "u", "w", "t"}, {{"s", "u"}, {"u", "t"}, {"s", "w"}, {"w", "t"}}, 0.5);
}

ReliabilityInstance no_path() { return make_reliability({"s", "u", "t"}, {{"s", "u"}}, 0.5); }

}  // namespace

TEST_CASE("single edge") {
  const auto x = reduce_instance(single_edge());
  CHECK(x.rectangles.size() == 1);
  CHECK(x.complex.triangles().size() == 4);
  CHECK(x.complex.fence_order().size() == 4);
  CHECK(x.failure.size() == 1);
  CHECK(x.failure.begin()->second == 0.3);
  CHECK(count_fundamental_classes(x) == 1);
  CHECK(reliability_bruteforce_1d(single_edge()) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(reliability_bruteforce_2d(x) == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("two parallel paths") {
  const auto inst = two_paths();
  const auto x = reduce_instance(inst);
  CHECK(count_fundamental_classes(x) == 2);
  CHECK(reliability_bruteforce_1d(inst) == doctest::Approx(0.4375).epsilon(1e-15));
  CHECK(reliability_bruteforce_2d(x) == doctest::Approx(0.4375).epsilon(1e-15));
  // Only the lowest piece of each subdivided edge can fail.
  std::size_t uncertain = 0;
  for (const auto& [v, p] : x.failure) uncertain += p > 0.0 ? 1 : 0;
  CHECK(uncertain == inst.edges.size());
}

TEST_CASE("no path") {
  const auto x = reduce_instance(no_path());
  CHECK(count_fundamental_classes(x) == 0);
  CHECK(reliability_bruteforce_1d(no_path()) == 0.0);
  CHECK(reliability_bruteforce_2d(x) == 0.0);
}

TEST_CASE("three parallel paths give four classes") {
  // The sum of all three paths also bounds Y over Z2.
  const auto inst = make_reliability(
      {"s", "a", "b", "c", "t"}, {{"s", "a"}, {"a", "t"}, {"s", "b"}, {"b", "t"}, {"s", "c"}, {"c", "t"}}, 0.5);
  CHECK(simple_path_count(inst) == 3);
  CHECK(count_fundamental_classes(reduce_instance(inst)) == 4);
}

TEST_CASE("malformed instances") {
  ReliabilityInstance empty;
  CHECK_THROWS_AS(reduce_instance(empty), DegenerateGraph);
  auto same = single_edge();
  same.t = "s";
  CHECK_THROWS_AS(reduce_instance(same), DegenerateGraph);
  auto unknown = single_edge();
  unknown.edges.push_back({"s", "zz", 0.1});
  CHECK_THROWS_AS(reduce_instance(unknown), DegenerateGraph);
  auto dup = single_edge();
  dup.edges.push_back({"t", "s", 0.1});
  CHECK_THROWS_AS(reduce_instance(dup), DegenerateGraph);
  auto bad_p = single_edge();
  bad_p.edges[0].p = 1.5;
  CHECK_THROWS_AS(reliability_bruteforce_1d(bad_p), DegenerateGraph);
  auto bad_q = single_edge();
  bad_q.q = 0.0;
  CHECK_THROWS_AS(reduce_instance(bad_q), DegenerateGraph);

  ReliabilityInstance big;
  for (int i = 0; i < 8; ++i) big.vertices.push_back("k" + std::to_string(i));
  big.s = "k0";
  big.t = "k7";
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) big.edges.push_back({big.vertices[i], big.vertices[j], 0.5});
  CHECK_THROWS_AS(reliability_bruteforce_1d(big), TooLarge);
}

TEST_CASE("construction shape") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto inst = random_reliability(seed, 3 + seed % 5, 10);
    const auto x = reduce_instance(inst);
    const auto& k = x.complex;
    const auto n = inst.vertices.size();
    CHECK(k.fence_order().size() == 2 * n);
    CHECK(is_downward_closed(k));
    CHECK(x.level.at(inst.s) == 1);
    CHECK(x.level.at(inst.t) == static_cast<int>(n));
    std::size_t subedges = 0;
    for (const auto& e : inst.edges) subedges += std::abs(x.level.at(e.a) - x.level.at(e.b));
    CHECK(x.rectangles.size() == subedges);
    // Each rectangle is a cone over a 4- to 6-gon.
    CHECK(k.triangles().size() >= 4 * subedges);
    CHECK(k.triangles().size() <= 6 * subedges);
    // Polynomial size.
    const auto simplices = k.vertex_count() + k.edges().size() + k.triangles().size();
    CHECK(simplices <= 20 * (inst.edges.size() + 1) * n);
    // Every non-Y vertex has a probability and no Y vertex does.
    for (VertexIndex v = 0; v < k.vertex_count(); ++v) CHECK(x.failure.count(k.label(v)) == !k.is_fence(v));
  }
}

TEST_CASE("the reduction preserves reliability") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const auto inst = random_reliability(seed, 2 + seed % 6, 12);
    const auto x = reduce_instance(inst);
    CHECK(std::abs(reliability_bruteforce_2d(x) - reliability_bruteforce_1d(inst)) <= 1e-12);
    CHECK(count_fundamental_classes(x) == st_chain_count(inst));
    ++checked;
  }
  CHECK(checked == 80);
}

TEST_CASE("class count equals path count where every chain is a path") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto layered = layered_reliability(seed, 2 + seed % 7);
    CHECK(count_fundamental_classes(reduce_instance(layered)) == simple_path_count(layered));
    const auto cactus = cactus_reliability(seed, 1 + seed % 4);
    CHECK(count_fundamental_classes(reduce_instance(cactus)) == simple_path_count(cactus));
  }
}
