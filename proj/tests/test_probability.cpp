#include <cmath>
#include <random>

#include "covfail/deathsets.hpp"
#include "covfail/error.hpp"
#include "covfail/persistence.hpp"
#include "covfail/probability.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "instances.hpp"

using namespace covfail;
namespace fx = covfail::fixtures;

namespace {

MinimalSets sets_of(const DeathSetReport& r) {
  MinimalSets out;
  for (const auto& d : r.minimal_death_sets) out.push_back(d.members);
  return out;
}

FailureModel fixed_model(std::initializer_list<const char*> nodes, double p) {
  std::map<VertexLabel, FailureSpec> m;
  for (auto v : nodes) m.emplace(v, FixedProbability{p});
  return FailureModel(std::move(m));
}

double exact_at(const MinimalSets& s, const FailureModel& m, double t, std::size_t cap = 20) {
  const double times[] = {t};
  return prob_failure_exact(s, m, times, cap).front().probability;
}

}  // namespace

TEST_CASE("cdf closed forms") {
  CHECK(cdf(Exponential{std::log(2.0)}, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cdf(Exponential{3.0}, 0.0) == 0.0);
  CHECK(cdf(Weibull{2.0, 1.5}, 0.0) == 0.0);
  CHECK(cdf(FixedProbability{0.3}, 0.0) == 0.3);
  for (double t : {0.0, 0.1, 0.7, 2.0, 13.0}) {
    CHECK(cdf(Weibull{1.0, 1.0 / 2.5}, t) == doctest::Approx(cdf(Exponential{2.5}, t)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(cdf(Exponential{1.0}, -1.0), Error);
}

TEST_CASE("failure model construction") {
  CHECK_THROWS_AS(FailureModel({{"a", Exponential{0.0}}}), Error);
  CHECK_THROWS_AS(FailureModel({{"a", Weibull{1.0, -1.0}}}), Error);
  CHECK_THROWS_AS(FailureModel({{"a", FixedProbability{1.5}}}), Error);

  auto g = fx::twin_graph();
  CHECK_THROWS_WITH_AS(FailureModel::from_graph(g), doctest::Contains("'a'"), Error);
  for (auto& n : g.nodes)
    if (!n.fence) n.failure = Exponential{1.0};
  const auto m = FailureModel::from_graph(g);
  CHECK(m.specs().size() == 2);
  CHECK_THROWS_AS(m.cdf("v1", 1.0), UnknownVertex);
  g.nodes.front().failure = FixedProbability{0.1};
  CHECK_THROWS_WITH_AS(FailureModel::from_graph(g), doctest::Contains("fence"), Error);

  const auto u = FailureModel::uniform(fx::pair(), FixedProbability{0.2});
  CHECK(u.specs().size() == 2);
  CHECK(u.cdf("b", 9.0) == 0.2);
}

TEST_CASE("inclusion-exclusion on hand examples") {
  const auto m = fixed_model({"a", "b", "c"}, 0.5);
  CHECK(exact_at({{"a"}, {"b"}}, m, 1.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(exact_at({{"a", "b"}}, m, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(exact_at({{"a", "b"}, {"b", "c"}}, m, 1.0) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(exact_at({}, m, 1.0) == 0.0);

  const double times[] = {0.0, 1.0};
  const auto curve = prob_failure_exact({{"a"}, {"b"}, {"c"}}, m, times);
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].method == "ie");
  CHECK(curve[0].terms == 7u);
  CHECK(!curve[0].stderr_est);

  MinimalSets many;
  for (int i = 0; i < 21; ++i) many.push_back({"a"});
  CHECK_THROWS_AS(prob_failure_exact(many, m, times), BudgetExceeded);
}

TEST_CASE("fixture probabilities from the death-set search") {
  const auto twin = fx::twin();
  const auto pair = fx::pair();
  const auto wheel = fx::wheel(6);
  const auto half = FixedProbability{0.5};

  CHECK(exact_at(sets_of(cake_or_death(twin)), FailureModel::uniform(twin, half), 0.0) ==
        doctest::Approx(0.75).epsilon(1e-15));
  CHECK(exact_at(sets_of(cake_or_death(pair)), FailureModel::uniform(pair, half), 0.0) ==
        doctest::Approx(0.25).epsilon(1e-15));

  CHECK(prob_failure_bruteforce(wheel, FailureModel::uniform(wheel, FixedProbability{0.3}), 0.0) ==
        doctest::Approx(0.3).epsilon(1e-15));
  CHECK(prob_failure_bruteforce(pair, FailureModel::uniform(pair, half), 0.0) ==
        doctest::Approx(0.25).epsilon(1e-15));
  CHECK(prob_failure_bruteforce(twin, FailureModel::uniform(twin, Exponential{std::log(2.0)}), 1.0) ==
        doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("Monte Carlo estimator") {
  const auto m = fixed_model({"a", "b", "c"}, 0.5);
  const double times[] = {0.0, 5.0};

  const auto none = prob_failure_mc({}, m, times, 1000, 7);
  for (const auto& pt : none) CHECK(pt.probability == 0.0);

  const auto sure = prob_failure_mc({{"a", "b", "c"}}, fixed_model({"a", "b", "c"}, 1.0), times, 1000, 7);
  for (const auto& pt : sure) CHECK(pt.probability == 1.0);

  CHECK_THROWS_AS(prob_failure_mc({{"a"}}, m, times, 0, 1), Error);

  const MinimalSets twin{{"a"}, {"b"}};
  const auto one = prob_failure_mc(twin, m, times, 100000, 42, 1);
  const auto four = prob_failure_mc(twin, m, times, 100000, 42, 4);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].probability == four[i].probability);
    CHECK(one[i].method == "mc");
    REQUIRE(one[i].stderr_est);
    CHECK(std::abs(one[i].probability - 0.75) <= 3.0 * *one[i].stderr_est);
  }
  // A different seed gives a different stream.
  CHECK(prob_failure_mc(twin, m, times, 100000, 43).front().probability != one.front().probability);
}

TEST_CASE("Monte Carlo agrees with inclusion-exclusion on the fixtures") {
  const std::vector<SimplicialComplex2> ks = {fx::wheel(6), fx::twin(), fx::pair(), fx::fence(6)};
  const double times[] = {0.2, 1.0, 3.0};
  for (const auto& k : ks) {
    const auto model = FailureModel::uniform(k, Weibull{1.5, 1.2});
    const auto sets = sets_of(cake_or_death(k));
    const auto exact = prob_failure_exact(sets, model, times);
    const auto mc = prob_failure_mc(sets, model, times, 100000, 2024, 2);
    for (std::size_t i = 0; i < exact.size(); ++i) {
      const double tol = 3.0 * *mc[i].stderr_est;
      CHECK(std::abs(mc[i].probability - exact[i].probability) <= std::max(tol, 1e-12));
    }
  }
}

TEST_CASE("exact equals brute force on random instances") {
  const double times[] = {0.05, 0.3, 1.0, 2.5, 8.0};
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto k = (seed % 2) ? testing::geometric_instance(seed, 2 + seed % 7)
                              : testing::abstract_instance(seed, 4 + seed % 3, 2 + seed % 6, 0.5);
    const auto report = cake_or_death(k);
    if (report.minimal_death_sets.size() > 20) continue;
    std::map<VertexLabel, FailureSpec> specs;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> rate(0.2, 3.0);
    for (auto v : k.interior_vertices()) {
      if (rng() % 2) {
        specs.emplace(k.label(v), Exponential{rate(rng)});
      } else {
        specs.emplace(k.label(v), Weibull{rate(rng), rate(rng)});
      }
    }
    const FailureModel model(specs);
    const auto exact = prob_failure_exact(sets_of(report), model, times);
    const auto brute = prob_failure_bruteforce(k, model, times);
    for (std::size_t i = 0; i < exact.size(); ++i) {
      CHECK(std::abs(exact[i].probability - brute[i].probability) <= 1e-12);
      if (i > 0) CHECK(exact[i].probability >= exact[i - 1].probability - 1e-15);
      CHECK(exact[i].probability >= 0.0);
      CHECK(exact[i].probability <= 1.0);
    }
    ++checked;
  }
  CHECK(checked >= 30);
}

TEST_CASE("redundant death sets do not change the result") {
  const double times[] = {0.4, 1.7};
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const auto k = testing::abstract_instance(seed, 5, 2 + seed % 3, 0.55);
    const auto interior = k.interior_vertices();
    MinimalSets all;
    for (std::uint32_t mask = 0; mask < (1u << interior.size()); ++mask) {
      std::vector<VertexIndex> dead;
      std::vector<VertexLabel> labels;
      for (std::size_t i = 0; i < interior.size(); ++i) {
        if (mask >> i & 1u) {
          dead.push_back(interior[i]);
          labels.push_back(k.label(interior[i]));
        }
      }
      if (!dsg_oracle(remove_vertices(k, dead)).pass) all.push_back(labels);
    }
    const auto model = FailureModel::uniform(k, Exponential{0.8});
    const auto full = prob_failure_exact(all, model, times, 16);
    const auto minimal = prob_failure_exact(sets_of(cake_or_death(k)), model, times);
    for (std::size_t i = 0; i < full.size(); ++i) {
      CHECK(std::abs(full[i].probability - minimal[i].probability) <= 1e-12);
    }
  }
}

TEST_CASE("brute force limits") {
  const auto k = testing::abstract_instance(5, 4, 15, 0.1);
  CHECK_THROWS_AS(prob_failure_bruteforce(k, FailureModel::uniform(k, FixedProbability{0.5}), 1.0), TooLarge);
}
