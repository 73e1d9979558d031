#include <random>
#include <sstream>

#include "covfail/error.hpp"
#include "covfail/generator.hpp"
#include "covfail/graph_io.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace covfail;
namespace fx = covfail::fixtures;

namespace {

CommunicationGraph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse a small network") {
  const auto g = parse(
      "format=1\n"
      "# a wheel\n"
      "fence v1 v2 v3 v4\n"
      "node v1 0 0\n"
      "node h 0.5 0.5 fail=weibull:2:3  # hub\n"
      "edge v1 v2\nedge v2 v3\nedge v3 v4\nedge v4 v1\n"
      "\n"
      "edge h v1\nedge h v2\nedge h v3\nedge h v4\n");
  REQUIRE(g.nodes.size() == 5);
  CHECK(g.fence_order == std::vector<VertexLabel>{"v1", "v2", "v3", "v4"});
  CHECK(g.nodes[0].fence);
  CHECK(g.nodes[0].position == Point{0, 0});
  CHECK(!g.nodes[1].position);
  const auto* h = g.find("h");
  REQUIRE(h);
  CHECK(!h->fence);
  CHECK(h->failure == FailureSpec{Weibull{2.0, 3.0}});
  CHECK(g.edges.size() == 8);
  CHECK(validate_fence(g).ok);
}

TEST_CASE("node lines may precede the fence line") {
  const auto g = parse("node a fail=fixed:0.5\nnode v1 1 2\nfence v1 v2 v3\nedge a v1\n");
  CHECK(g.nodes.size() == 4);
  CHECK(g.find("v1")->position == Point{1, 2});
  CHECK(g.find("a")->failure == FailureSpec{FixedProbability{0.5}});
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(error_line("fence a b c\nedge a\n") == 2);
  CHECK(error_line("fence a b c\nedge a zz\n") == 2);
  CHECK(error_line("fence a b c\n\nfence a b c\n") == 3);
  CHECK(error_line("fence a b c\nnode x fail=exp:-1\n") == 2);
  CHECK(error_line("fence a b c\nnode x fail=gamma:1\n") == 2);
  CHECK(error_line("fence a b c\nnode a fail=fixed:0.1\n") == 2);
  CHECK(error_line("fence a b c\nnode x 1 nope\n") == 2);
  CHECK(error_line("fence a b c\nnode x\nnode x\n") == 3);
  CHECK(error_line("fence a b c\nlink a b\n") == 2);
  CHECK(error_line("fence a b a\n") == 1);
  CHECK(error_line("fence a b c\nformat=1\n") == 2);
  CHECK(error_line("format=2\nfence a b c\n") == 1);
  CHECK(error_line("node x\n") == 1);
  CHECK_THROWS_AS(parse_graph_file("/nonexistent/graph.txt"), Error);
}

TEST_CASE("failure specs") {
  CHECK(parse_failure_spec("exp:0.25") == FailureSpec{Exponential{0.25}});
  CHECK(parse_failure_spec("fixed:1") == FailureSpec{FixedProbability{1.0}});
  CHECK_THROWS_AS(parse_failure_spec("fixed:1.5"), Error);
  CHECK_THROWS_AS(parse_failure_spec("weibull:1"), Error);
  CHECK_THROWS_AS(parse_failure_spec("exp:abc"), Error);
  CHECK(format_failure_spec(Weibull{1.5, 0.1}) == "weibull:1.5:0.1");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("emit then parse is the identity") {
  CHECK(parse(graph_to_string(fx::twin_graph())) == fx::twin_graph());
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GeneratorSpec spec;
    spec.polygon = seed % 2 ? square_domain(1.0 + seed * 0.01)
                            : std::vector<Point>{{0, 0}, {2.3, 0.1}, {1.7, 1.9}, {-0.2, 1.2}};
    spec.interior_count = seed % 25;
    spec.broadcast_radius = 0.35 + 0.01 * static_cast<double>(seed % 7);
    spec.seed = seed;
    auto g = generate_instance(spec).graph;
    for (auto& n : g.nodes) {
      if (n.fence) continue;
      switch (rng() % 4) {
        case 0: n.failure = Exponential{std::uniform_real_distribution<double>(0.01, 5)(rng)}; break;
        case 1: n.failure = Weibull{std::uniform_real_distribution<double>(0.5, 3)(rng), 1.0 / 7.0}; break;
        case 2: n.failure = FixedProbability{std::uniform_real_distribution<double>(0, 1)(rng)}; break;
        default: break;
      }
    }
    const auto text = graph_to_string(g);
    CHECK(parse(text) == g);
    CHECK(graph_to_string(parse(text)) == text);
  }
}

TEST_CASE("event files") {
  std::istringstream in("# stream\nfail 0 a\nfail 1.5 b  # late\n\nfail 1.5 v1\n");
  const auto ev = parse_events(in);
  REQUIRE(ev.size() == 3);
  CHECK(ev[1].time == 1.5);
  CHECK(ev[1].vertex == "b");

  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream s(text);
    try {
      parse_events(s);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("fail 1 a\nfail x b\n") == 2);
  CHECK(line_of("fail -1 a\n") == 1);
  CHECK(line_of("die 1 a\n") == 1);
  CHECK(line_of("fail 1\n") == 1);
}
