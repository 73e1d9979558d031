#include "covfail/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "covfail/error.hpp"
#include "covfail/persistence.hpp"

namespace covfail {

namespace {

constexpr std::size_t kMaxEnumerated = 20;

void check_instance(const ReliabilityInstance& inst) {
  if (inst.vertices.empty()) throw DegenerateGraph("the graph has no vertices");
  std::set<VertexLabel> seen;
  for (const auto& v : inst.vertices) {
    if (!seen.insert(v).second) throw DegenerateGraph("duplicate vertex '" + v + "'");
  }
  if (!seen.count(inst.s) || !seen.count(inst.t)) throw DegenerateGraph("terminals must be vertices of the graph");
  if (inst.s == inst.t) throw DegenerateGraph("terminals must differ");
  if (!(inst.q > 0.0 && inst.q <= 1.0)) throw DegenerateGraph("threshold must lie in (0,1]");
  std::set<std::pair<VertexLabel, VertexLabel>> pairs;
  for (const auto& e : inst.edges) {
    if (!seen.count(e.a) || !seen.count(e.b)) throw DegenerateGraph("edge " + e.a + "-" + e.b + " has an unknown end");
    if (e.a == e.b) throw DegenerateGraph("self-loop at '" + e.a + "'");
    if (!pairs.insert(std::minmax(e.a, e.b)).second) {
      throw DegenerateGraph("duplicate edge " + e.a + "-" + e.b);
    }
    if (!(e.p >= 0.0 && e.p <= 1.0)) throw DegenerateGraph("edge probability must lie in [0,1]");
  }
}

std::string level_name(char side, int j) { return std::string(1, side) + std::to_string(j); }

// Sums the probability of every pattern of the uncertain elements for which
// `survives` holds. Elements with probability 0 never fail, 1 always fail.
template <typename Survives>
double enumerate(const std::vector<double>& probs, Survives survives) {
  std::vector<std::size_t> uncertain;
  std::vector<bool> failed(probs.size(), false);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] >= 1.0) failed[i] = true;
    if (probs[i] > 0.0 && probs[i] < 1.0) uncertain.push_back(i);
  }
  if (uncertain.size() > kMaxEnumerated) {
    throw TooLarge(std::to_string(uncertain.size()) + " uncertain elements exceed the enumeration limit of " +
                   std::to_string(kMaxEnumerated));
  }
  double total = 0.0;
  const std::uint32_t patterns = std::uint32_t{1} << uncertain.size();
  for (std::uint32_t mask = 0; mask < patterns; ++mask) {
    double w = 1.0;
    for (std::size_t i = 0; i < uncertain.size(); ++i) {
      const bool f = mask >> i & 1u;
      failed[uncertain[i]] = f;
      w *= f ? probs[uncertain[i]] : 1.0 - probs[uncertain[i]];
    }
    if (w > 0.0 && survives(failed)) total += w;
  }
  return total;
}

}  // namespace

Reduced2DInstance reduce_instance(const ReliabilityInstance& inst) {
  check_instance(inst);
  const int n = static_cast<int>(inst.vertices.size());

  Reduced2DInstance x;
  // s first, t last, the rest in input order.
  int next = 2;
  for (const auto& v : inst.vertices) {
    if (v == inst.s) {
      x.level[v] = 1;
    } else if (v == inst.t) {
      x.level[v] = n;
    } else {
      x.level[v] = next++;
    }
  }

  std::vector<VertexLabel> labels;
  std::map<VertexLabel, VertexIndex> index;
  auto vertex = [&](const VertexLabel& l) {
    auto [it, fresh] = index.emplace(l, static_cast<VertexIndex>(labels.size()));
    if (fresh) labels.push_back(l);
    return it->second;
  };

  // Y: the bottom path, t x I, the top path back, s x I.
  std::vector<VertexIndex> fence;
  for (int j = 1; j <= n; ++j) fence.push_back(vertex(level_name('B', j)));
  for (int j = n; j >= 1; --j) fence.push_back(vertex(level_name('T', j)));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < fence.size(); ++i) edges.push_back(make_edge(fence[i], fence[(i + 1) % fence.size()]));
  std::vector<Triangle> triangles;

  // Vertical segment over a point of the subdivided graph, as the list of
  // vertices from bottom to top. Terminals use the Y edge directly.
  auto vertical = [&](const VertexLabel& point, int level) {
    std::vector<VertexIndex> path{vertex(level_name('B', level))};
    if (level != 1 && level != n) {
      const auto m = vertex("M[" + point + "]");
      path.push_back(m);
    }
    path.push_back(vertex(level_name('T', level)));
    return path;
  };

  for (std::size_t ei = 0; ei < inst.edges.size(); ++ei) {
    const auto& e = inst.edges[ei];
    auto lo = e.a;
    auto hi = e.b;
    if (x.level[lo] > x.level[hi]) std::swap(lo, hi);
    const int a = x.level[lo];
    const int b = x.level[hi];
    auto point_at = [&](int j) {
      if (j == a) return lo;
      if (j == b) return hi;
      return lo + "~" + hi + "@" + std::to_string(j);
    };
    for (int j = a; j < b; ++j) {
      const auto p = point_at(j);
      const auto q = point_at(j + 1);
      const auto left = vertical(p, j);
      const auto right = vertical(q, j + 1);
      // Boundary of the rectangle, walked once around.
      std::vector<VertexIndex> ring(left.begin(), left.end());
      ring.insert(ring.end(), right.rbegin(), right.rend());
      const auto c = vertex("C[" + p + "|" + q + "]");
      for (std::size_t i = 0; i < ring.size(); ++i) {
        const auto u = ring[i];
        const auto w = ring[(i + 1) % ring.size()];
        edges.push_back(make_edge(u, w));
        edges.push_back(make_edge(c, u));
        triangles.push_back(make_triangle(c, u, w));
      }
      x.rectangles.push_back({labels[c], ei, j});
      x.failure[labels[c]] = j == a ? e.p : 0.0;
    }
  }
  for (const auto& l : labels) {
    if (l.rfind("M[", 0) == 0) x.failure.emplace(l, 0.0);
  }

  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  x.complex = SimplicialComplex2::from_parts(std::move(labels), std::move(fence), std::move(edges),
                                             std::move(triangles), false);
  return x;
}

std::uint64_t count_fundamental_classes(const Reduced2DInstance& x) {
  if (x.complex.triangles().size() > 10000) throw TooLarge("more than 10000 triangles");
  const auto v = dsg_oracle(x.complex);
  if (!v.pass) return 0;
  if (v.nullity >= 64) throw TooLarge("2^" + std::to_string(v.nullity) + " classes do not fit in 64 bits");
  return std::uint64_t{1} << v.nullity;
}

double reliability_bruteforce_1d(const ReliabilityInstance& inst) {
  check_instance(inst);
  std::map<VertexLabel, std::size_t> idx;
  for (std::size_t i = 0; i < inst.vertices.size(); ++i) idx[inst.vertices[i]] = i;
  std::vector<double> probs;
  for (const auto& e : inst.edges) probs.push_back(e.p);
  const auto s = idx.at(inst.s);
  const auto t = idx.at(inst.t);
  return enumerate(probs, [&](const std::vector<bool>& failed) {
    std::vector<std::size_t> parent(inst.vertices.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto root = [&parent](std::size_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
      if (failed[i]) continue;
      parent[root(idx.at(inst.edges[i].a))] = root(idx.at(inst.edges[i].b));
    }
    return root(s) == root(t);
  });
}

double reliability_bruteforce_2d(const Reduced2DInstance& x) {
  std::vector<VertexLabel> names;
  std::vector<double> probs;
  for (const auto& [label, p] : x.failure) {
    names.push_back(label);
    probs.push_back(p);
  }
  return enumerate(probs, [&](const std::vector<bool>& failed) {
    std::vector<VertexLabel> dead;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (failed[i]) dead.push_back(names[i]);
    return dsg_oracle(remove_vertices(x.complex, dead)).pass;
  });
}

}  // namespace covfail
