#include "covfail/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "covfail/error.hpp"
#include "covfail/gf2.hpp"

namespace covfail {

namespace {

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n), rank_(n, 0), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    --sets_;
  }

  std::size_t sets() const noexcept { return sets_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
  std::size_t sets_;
};

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Edge make_edge(VertexIndex a, VertexIndex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

Triangle make_triangle(VertexIndex a, VertexIndex b, VertexIndex c) {
  Triangle t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

SimplicialComplex2 SimplicialComplex2::from_parts(std::vector<VertexLabel> labels,
                                                  std::vector<VertexIndex> fence_order,
                                                  std::vector<Edge> edges,
                                                  std::vector<Triangle> triangles,
                                                  bool clique_complete,
                                                  std::vector<std::optional<Point>> positions) {
  SimplicialComplex2 k;
  k.labels_ = std::move(labels);
  const auto n = k.labels_.size();
  for (VertexIndex v = 0; v < n; ++v) {
    if (!k.index_.emplace(k.labels_[v], v).second) {
      throw Error("duplicate vertex label '" + k.labels_[v] + "'");
    }
  }
  k.positions_ = std::move(positions);
  k.positions_.resize(n);
  k.clique_complete_ = clique_complete;

  for (auto& e : edges) {
    if (e[0] == e[1] || e[0] >= n || e[1] >= n) throw Error("malformed edge");
    e = make_edge(e[0], e[1]);
  }
  sort_unique(edges);
  k.edges_ = std::move(edges);

  for (auto& t : triangles) {
    t = make_triangle(t[0], t[1], t[2]);
    if (t[0] == t[1] || t[1] == t[2] || t[2] >= n) throw Error("malformed triangle");
  }
  sort_unique(triangles);
  k.triangles_ = std::move(triangles);
  for (const auto& t : k.triangles_) {
    if (!k.has_edge(t[0], t[1]) || !k.has_edge(t[0], t[2]) || !k.has_edge(t[1], t[2])) {
      throw FenceInvalid("triangle (" + k.labels_[t[0]] + "," + k.labels_[t[1]] + "," +
                         k.labels_[t[2]] + ") is missing an edge");
    }
  }

  if (fence_order.size() < 3) throw FenceInvalid("fence cycle needs at least 3 vertices");
  k.fence_flag_.assign(n, false);
  for (auto v : fence_order) {
    if (v >= n) throw FenceInvalid("fence vertex out of range");
    if (k.fence_flag_[v]) throw FenceInvalid("fence visits '" + k.labels_[v] + "' twice");
    k.fence_flag_[v] = true;
  }
  k.fence_order_ = std::move(fence_order);
  for (std::size_t i = 0; i < k.fence_order_.size(); ++i) {
    const auto a = k.fence_order_[i];
    const auto b = k.fence_order_[(i + 1) % k.fence_order_.size()];
    if (!k.has_edge(a, b)) {
      throw FenceInvalid("consecutive fence nodes (" + k.labels_[a] + "," + k.labels_[b] +
                         ") are not adjacent");
    }
  }
  return k;
}

std::optional<VertexIndex> SimplicialComplex2::find(const VertexLabel& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexIndex SimplicialComplex2::index_of(const VertexLabel& label) const {
  auto v = find(label);
  if (!v) throw UnknownVertex("unknown vertex '" + label + "'");
  return *v;
}

std::vector<VertexIndex> SimplicialComplex2::interior_vertices() const {
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < labels_.size(); ++v)
    if (!fence_flag_[v]) out.push_back(v);
  return out;
}

bool SimplicialComplex2::has_edge(VertexIndex a, VertexIndex b) const {
  return std::binary_search(edges_.begin(), edges_.end(), make_edge(a, b));
}

bool SimplicialComplex2::has_triangle(VertexIndex a, VertexIndex b, VertexIndex c) const {
  return std::binary_search(triangles_.begin(), triangles_.end(), make_triangle(a, b, c));
}

bool SimplicialComplex2::is_fence_edge(const Edge& e) const {
  if (!fence_flag_[e[0]] || !fence_flag_[e[1]]) return false;
  const auto k = fence_order_.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (make_edge(fence_order_[i], fence_order_[(i + 1) % k]) == e) return true;
  }
  return false;
}

std::size_t SimplicialComplex2::edge_index(const Edge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) throw Error("edge not in complex");
  return static_cast<std::size_t>(it - edges_.begin());
}

bool operator==(const SimplicialComplex2& a, const SimplicialComplex2& b) {
  if (a.vertex_count() != b.vertex_count()) return false;
  if (a.edges_.size() != b.edges_.size() || a.triangles_.size() != b.triangles_.size()) {
    return false;
  }
  if (a.fence_order_.size() != b.fence_order_.size()) return false;
  for (std::size_t i = 0; i < a.fence_order_.size(); ++i) {
    if (a.labels_[a.fence_order_[i]] != b.labels_[b.fence_order_[i]]) return false;
  }
  std::set<VertexLabel> la(a.labels_.begin(), a.labels_.end());
  std::set<VertexLabel> lb(b.labels_.begin(), b.labels_.end());
  if (la != lb) return false;

  using LEdge = std::pair<VertexLabel, VertexLabel>;
  auto edge_labels = [](const SimplicialComplex2& k) {
    std::set<LEdge> out;
    for (const auto& e : k.edges_) out.emplace(std::minmax(k.labels_[e[0]], k.labels_[e[1]]));
    return out;
  };
  if (edge_labels(a) != edge_labels(b)) return false;

  using LTri = std::array<VertexLabel, 3>;
  auto tri_labels = [](const SimplicialComplex2& k) {
    std::set<LTri> out;
    for (const auto& t : k.triangles_) {
      LTri l{k.labels_[t[0]], k.labels_[t[1]], k.labels_[t[2]]};
      std::sort(l.begin(), l.end());
      out.insert(l);
    }
    return out;
  };
  return tri_labels(a) == tri_labels(b);
}

SimplicialComplex2 build_rips_2skeleton(const CommunicationGraph& g) {
  const auto diag = validate_fence(g);
  if (!diag.ok) throw FenceInvalid(diag.summary());

  std::vector<VertexLabel> labels;
  std::vector<std::optional<Point>> positions;
  std::unordered_map<VertexLabel, VertexIndex> index;
  for (const auto& n : g.nodes) {
    index.emplace(n.id, static_cast<VertexIndex>(labels.size()));
    labels.push_back(n.id);
    positions.push_back(n.position);
  }

  std::vector<Edge> edges;
  edges.reserve(g.edges.size());
  for (const auto& [a, b] : g.edges) edges.push_back(make_edge(index.at(a), index.at(b)));
  sort_unique(edges);

  // 3-cliques: for each edge (a,b) with a<b, common neighbours c>b.
  std::vector<std::vector<VertexIndex>> adj(labels.size());
  for (const auto& e : edges) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  std::vector<Triangle> triangles;
  for (const auto& e : edges) {
    const auto& na = adj[e[0]];
    const auto& nb = adj[e[1]];
    auto ia = std::upper_bound(na.begin(), na.end(), e[1]);
    auto ib = std::upper_bound(nb.begin(), nb.end(), e[1]);
    while (ia != na.end() && ib != nb.end()) {
      if (*ia < *ib) {
        ++ia;
      } else if (*ib < *ia) {
        ++ib;
      } else {
        triangles.push_back({e[0], e[1], *ia});
        ++ia;
        ++ib;
      }
    }
  }

  std::vector<VertexIndex> fence;
  for (const auto& id : g.fence_order) fence.push_back(index.at(id));
  return SimplicialComplex2::from_parts(std::move(labels), std::move(fence), std::move(edges),
                                        std::move(triangles), true, std::move(positions));
}

SimplicialComplex2 remove_vertices(const SimplicialComplex2& k,
                                   std::span<const VertexIndex> removed) {
  std::vector<bool> gone(k.vertex_count(), false);
  for (auto v : removed) {
    if (v >= k.vertex_count()) throw UnknownVertex("vertex index out of range");
    if (k.is_fence(v)) {
      throw FenceRemovalError("cannot remove fence vertex '" + k.label(v) + "'");
    }
    gone[v] = true;
  }

  std::vector<VertexIndex> remap(k.vertex_count(), 0);
  std::vector<VertexLabel> labels;
  std::vector<std::optional<Point>> positions;
  for (VertexIndex v = 0; v < k.vertex_count(); ++v) {
    if (gone[v]) continue;
    remap[v] = static_cast<VertexIndex>(labels.size());
    labels.push_back(k.label(v));
    positions.push_back(k.position(v));
  }

  std::vector<Edge> edges;
  for (const auto& e : k.edges()) {
    if (!gone[e[0]] && !gone[e[1]]) edges.push_back({remap[e[0]], remap[e[1]]});
  }
  std::vector<Triangle> triangles;
  for (const auto& t : k.triangles()) {
    if (!gone[t[0]] && !gone[t[1]] && !gone[t[2]]) {
      triangles.push_back({remap[t[0]], remap[t[1]], remap[t[2]]});
    }
  }
  std::vector<VertexIndex> fence;
  for (auto v : k.fence_order()) fence.push_back(remap[v]);

  return SimplicialComplex2::from_parts(std::move(labels), std::move(fence), std::move(edges),
                                        std::move(triangles), k.clique_complete(),
                                        std::move(positions));
}

SimplicialComplex2 remove_vertices(const SimplicialComplex2& k,
                                   std::span<const VertexLabel> removed) {
  std::vector<VertexIndex> idx;
  idx.reserve(removed.size());
  for (const auto& l : removed) idx.push_back(k.index_of(l));
  return remove_vertices(k, std::span<const VertexIndex>(idx));
}

bool LinkGraph::contains_vertex(const VertexLabel& v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool LinkGraph::erase_vertex(const VertexLabel& v) {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) return false;
  vertices.erase(it);
  std::erase_if(edges, [&v](const auto& e) { return e.first == v || e.second == v; });
  return true;
}

LinkGraph link(const SimplicialComplex2& k, const VertexLabel& w) {
  const auto wi = k.index_of(w);
  LinkGraph out;
  for (const auto& e : k.edges()) {
    if (e[0] == wi) out.vertices.push_back(k.label(e[1]));
    if (e[1] == wi) out.vertices.push_back(k.label(e[0]));
  }
  for (const auto& t : k.triangles()) {
    if (t[0] != wi && t[1] != wi && t[2] != wi) continue;
    std::array<VertexIndex, 2> rest{};
    std::size_t r = 0;
    for (auto v : t)
      if (v != wi) rest[r++] = v;
    out.edges.emplace_back(std::minmax(k.label(rest[0]), k.label(rest[1])));
  }
  sort_unique(out.vertices);
  sort_unique(out.edges);
  return out;
}

GraphBetti graph_betti(const LinkGraph& g) {
  DisjointSet ds(g.vertices.size());
  auto at = [&g](const VertexLabel& v) {
    return static_cast<std::size_t>(
        std::lower_bound(g.vertices.begin(), g.vertices.end(), v) - g.vertices.begin());
  };
  for (const auto& [a, b] : g.edges) ds.unite(at(a), at(b));
  GraphBetti out;
  out.beta0 = ds.sets();
  out.beta1 = g.edges.size() + out.beta0 - g.vertices.size();
  return out;
}

ComplexBetti complex_betti(const SimplicialComplex2& k) {
  DisjointSet ds(k.vertex_count());
  for (const auto& e : k.edges()) ds.unite(e[0], e[1]);
  const std::size_t rank1 = k.vertex_count() - ds.sets();

  std::vector<BitVector> rows;
  rows.reserve(k.triangles().size());
  for (const auto& t : k.triangles()) {
    BitVector row(k.edges().size());
    row.set(k.edge_index({t[0], t[1]}));
    row.set(k.edge_index({t[0], t[2]}));
    row.set(k.edge_index({t[1], t[2]}));
    rows.push_back(std::move(row));
  }
  const std::size_t rank2 = rank_gf2(std::move(rows));

  ComplexBetti b;
  b.beta0 = ds.sets();
  b.beta1 = k.edges().size() - rank1 - rank2;
  b.beta2 = k.triangles().size() - rank2;
  return b;
}

bool is_downward_closed(const SimplicialComplex2& k) {
  for (const auto& e : k.edges()) {
    if (e[0] >= k.vertex_count() || e[1] >= k.vertex_count()) return false;
  }
  for (const auto& t : k.triangles()) {
    if (!k.has_edge(t[0], t[1]) || !k.has_edge(t[0], t[2]) || !k.has_edge(t[1], t[2])) {
      return false;
    }
  }
  for (std::size_t i = 0; i < k.fence_order().size(); ++i) {
    if (!k.has_edge(k.fence_order()[i], k.fence_order()[(i + 1) % k.fence_order().size()])) {
      return false;
    }
  }
  return true;
}

}  // namespace covfail
