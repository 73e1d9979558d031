#include "covfail/persistence.hpp"

#include <algorithm>
#include <string>

#include "covfail/error.hpp"
#include "covfail/gf2.hpp"

namespace covfail {

namespace {

// Symmetric difference of two sorted columns, written into `dst`.
void xor_into(Column& dst, const Column& src, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(dst.begin(), dst.end(), src.begin(), src.end(),
                                std::back_inserter(scratch));
  dst.swap(scratch);
}

bool column_has(const Column& c, Position row) {
  return std::binary_search(c.begin(), c.end(), row);
}

void toggle(Column& c, Position row) {
  auto it = std::lower_bound(c.begin(), c.end(), row);
  if (it != c.end() && *it == row) {
    c.erase(it);
  } else {
    c.insert(it, row);
  }
}

// Renames rows i and i+1 inside a sorted column.
void swap_rows_in(Column& c, Position i) {
  auto it = std::lower_bound(c.begin(), c.end(), i);
  if (it == c.end()) return;
  const bool has_i = *it == i;
  const bool has_next = has_i ? (it + 1 != c.end() && *(it + 1) == i + 1) : *it == i + 1;
  if (has_i && !has_next) {
    *it = i + 1;
  } else if (!has_i && has_next) {
    *it = i;
  }
}

}  // namespace

bool Simplex::contains_vertex(VertexIndex v) const {
  for (std::size_t i = 0; i <= dim; ++i)
    if (vertices[i] == v) return true;
  return false;
}

FiltrationOrder::FiltrationOrder(const SimplicialComplex2& k) {
  const auto nv = k.vertex_count();
  const auto& edges = k.edges();
  const auto& tris = k.triangles();
  vertex_ids_.assign(nv, 0);
  edge_ids_.assign(edges.size(), 0);
  triangle_ids_.assign(tris.size(), 0);
  simplices_.reserve(nv + edges.size() + tris.size());

  auto push_vertex = [&](VertexIndex v, Block b) {
    Simplex s;
    s.dim = 0;
    s.vertices[0] = v;
    s.block = b;
    vertex_ids_[v] = static_cast<SimplexId>(simplices_.size());
    simplices_.push_back(s);
  };
  auto push_edge = [&](std::size_t e, Block b) {
    Simplex s;
    s.dim = 1;
    s.vertices = {edges[e][0], edges[e][1], 0};
    s.faces = {vertex_ids_[edges[e][0]], vertex_ids_[edges[e][1]], 0};
    s.block = b;
    edge_ids_[e] = static_cast<SimplexId>(simplices_.size());
    simplices_.push_back(s);
  };

  std::vector<bool> fence_edge(edges.size(), false);
  const auto& fence = k.fence_order();
  for (std::size_t i = 0; i < fence.size(); ++i) {
    fence_edge[k.edge_index(make_edge(fence[i], fence[(i + 1) % fence.size()]))] = true;
  }

  for (auto v : fence) push_vertex(v, Block::Fence);
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (fence_edge[e]) push_edge(e, Block::Fence);
  for (VertexIndex v = 0; v < nv; ++v)
    if (!k.is_fence(v)) push_vertex(v, Block::Skeleton);
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (!fence_edge[e]) push_edge(e, Block::Skeleton);

  triangle_begin_ = simplices_.size();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& tri = tris[t];
    Simplex s;
    s.dim = 2;
    s.vertices = tri;
    s.faces = {edge_ids_[k.edge_index({tri[0], tri[1]})], edge_ids_[k.edge_index({tri[0], tri[2]})],
               edge_ids_[k.edge_index({tri[1], tri[2]})]};
    s.block = Block::Triangles;
    triangle_ids_[t] = static_cast<SimplexId>(simplices_.size());
    simplices_.push_back(s);
  }
}

bool FiltrationOrder::is_face(SimplexId face, SimplexId coface) const {
  const auto& f = simplices_.at(face);
  const auto& c = simplices_.at(coface);
  if (f.dim >= c.dim) return false;
  for (auto v : f.vertex_span())
    if (!c.contains_vertex(v)) return false;
  return true;
}

std::vector<SimplexId> FiltrationOrder::triangles_meeting(std::span<const VertexIndex> dead) const {
  std::vector<SimplexId> out;
  for (SimplexId id = static_cast<SimplexId>(triangle_begin_); id < simplices_.size(); ++id) {
    const auto& s = simplices_[id];
    for (auto v : dead) {
      if (s.contains_vertex(v)) {
        out.push_back(id);
        break;
      }
    }
  }
  return out;
}

SparseBoundaryMatrix permuted_boundary_matrix(const FiltrationOrder& order,
                                              std::span<const SimplexId> order_by_position) {
  std::vector<Position> where(order.size());
  for (Position p = 0; p < order_by_position.size(); ++p) where.at(order_by_position[p]) = p;
  SparseBoundaryMatrix d;
  d.columns.resize(order.size());
  for (Position p = 0; p < order_by_position.size(); ++p) {
    auto& col = d.columns[p];
    for (auto f : order[order_by_position[p]].face_span()) col.push_back(where[f]);
    std::sort(col.begin(), col.end());
  }
  return d;
}

SparseBoundaryMatrix build_boundary_matrix(const FiltrationOrder& order) {
  std::vector<SimplexId> identity(order.size());
  for (SimplexId i = 0; i < identity.size(); ++i) identity[i] = i;
  return permuted_boundary_matrix(order, identity);
}

RUState reduce(std::shared_ptr<const FiltrationOrder> order, const SparseBoundaryMatrix& d) {
  const auto n = d.columns.size();
  if (order->size() != n) throw Error("boundary matrix does not match the filtration");

  RUState s;
  s.filtration_ = std::move(order);
  s.r_ = d.columns;
  s.u_.resize(n);
  s.low_owner_.assign(n, -1);
  s.perm_.resize(n);
  s.where_.resize(n);
  Column scratch;
  for (Position j = 0; j < n; ++j) {
    s.perm_[j] = j;
    s.where_[j] = j;
    auto& col = s.r_[j];
    auto& ucol = s.u_[j];
    while (!col.empty() && s.low_owner_[col.back()] >= 0) {
      const auto k = static_cast<Position>(s.low_owner_[col.back()]);
      xor_into(col, s.r_[k], scratch);
      // R <- R E with E adding column k to j; then U <- E U toggles U[k, j].
      ucol.push_back(k);
    }
    ucol.push_back(j);
    std::sort(ucol.begin(), ucol.end());
    if (!col.empty()) s.low_owner_[col.back()] = j;
  }
  s.r_rows_.resize(n);
  s.u_rows_.resize(n);
  for (Position j = 0; j < n; ++j) {
    for (auto row : s.r_[j]) s.r_rows_[row].push_back(j);
    for (auto row : s.u_[j]) s.u_rows_[row].push_back(j);
  }
  return s;
}

RUState reduce_complex(const SimplicialComplex2& k) {
  auto order = std::make_shared<const FiltrationOrder>(k);
  const auto d = build_boundary_matrix(*order);
  return reduce(std::move(order), d);
}

std::optional<Position> RUState::low(Position p) const {
  const auto& c = r_.at(p);
  if (c.empty()) return std::nullopt;
  return c.back();
}

std::optional<Position> RUState::column_with_low(Position row) const {
  const auto owner = low_owner_.at(row);
  if (owner < 0) return std::nullopt;
  return static_cast<Position>(owner);
}

void RUState::toggle_r(Position row, Position column) {
  toggle(r_[column], row);
  toggle(r_rows_[row], column);
}

void RUState::toggle_u(Position row, Position column) {
  toggle(u_[column], row);
  toggle(u_rows_[row], column);
}

void RUState::add_r_column(Position src, Position dst) {
  for (auto row : Column(r_[src])) toggle_r(row, dst);
}

void RUState::add_u_row(Position dst, Position src) {
  // U[dst, c] += U[src, c] for every column with a one in row src.
  for (auto c : Column(u_rows_[src])) toggle_u(dst, c);
}

void RUState::swap_adjacent(Position i) {
  // P R P and P U P: rename rows i, i+1 in the columns holding them, then
  // rename columns i, i+1 in the rows those two columns touch.
  auto rename_rows = [i](std::vector<Column>& cols, std::vector<Column>& rows) {
    Column hit;
    std::set_union(rows[i].begin(), rows[i].end(), rows[i + 1].begin(), rows[i + 1].end(),
                   std::back_inserter(hit));
    for (auto c : hit) swap_rows_in(cols[c], i);
    std::swap(rows[i], rows[i + 1]);
    Column touched;
    std::set_union(cols[i].begin(), cols[i].end(), cols[i + 1].begin(), cols[i + 1].end(),
                   std::back_inserter(touched));
    for (auto r : touched) swap_rows_in(rows[r], i);
    std::swap(cols[i], cols[i + 1]);
  };
  rename_rows(r_, r_rows_);
  rename_rows(u_, u_rows_);
  std::swap(perm_[i], perm_[i + 1]);
  where_[perm_[i]] = i;
  where_[perm_[i + 1]] = i + 1;
}

void RUState::register_low(Position column) {
  const auto& c = r_[column];
  if (c.empty()) return;
  auto& owner = low_owner_[c.back()];
  if (owner >= 0 && static_cast<Position>(owner) != column) {
    throw InvariantBreach("columns " + std::to_string(owner) + " and " + std::to_string(column) +
                          " share a lowest one after transposition");
  }
  owner = column;
}

void RUState::transpose(Position i) {
  if (static_cast<std::size_t>(i) + 1 >= r_.size()) {
    throw IncidenceError("transposition position " + std::to_string(i) + " out of range");
  }
  const auto a = perm_[i];
  const auto b = perm_[i + 1];
  const auto& fo = *filtration_;
  if (fo[a].block != fo[b].block) {
    throw IncidenceError("transposition at " + std::to_string(i) + " crosses a filtration block");
  }
  if (fo.is_face(a, b)) {
    throw IncidenceError("transposition at " + std::to_string(i) + " moves a face past its coface");
  }

  const bool pos_i = r_[i].empty();
  const bool pos_next = r_[i + 1].empty();
  const auto killer_i = column_with_low(i);
  const auto killer_next = column_with_low(i + 1);

  std::vector<Position> touched{i, i + 1};
  if (killer_i) touched.push_back(*killer_i);
  if (killer_next) touched.push_back(*killer_next);
  for (auto c : touched) {
    if (!r_[c].empty()) low_owner_[r_[c].back()] = -1;
  }

  const bool u_link = column_has(u_[i + 1], i);

  if (pos_i && pos_next) {
    // R columns i and i+1 are zero, so U[i, i+1] does not contribute to R U.
    if (u_link) toggle_u(i, i + 1);
    const bool tangled = killer_i && killer_next && column_has(r_[*killer_next], i);
    swap_adjacent(i);
    if (tangled) {
      if (fo[a].dim == 2) {
        throw InvariantBreach("two positive triangles with paired killers in a 2-complex");
      }
      const auto k = *killer_i;
      const auto l = *killer_next;
      if (k < l) {
        add_r_column(k, l);
        add_u_row(k, l);
      } else {
        add_r_column(l, k);
        add_u_row(l, k);
      }
    }
  } else if (!pos_i && !pos_next) {
    if (u_link) {
      const bool i_lower = r_[i].back() < r_[i + 1].back();
      add_r_column(i, i + 1);
      add_u_row(i, i + 1);
      swap_adjacent(i);
      if (!i_lower) {
        add_r_column(i, i + 1);
        add_u_row(i, i + 1);
      }
    } else {
      swap_adjacent(i);
    }
  } else if (!pos_i && pos_next) {
    if (u_link) {
      add_r_column(i, i + 1);
      add_u_row(i, i + 1);
      swap_adjacent(i);
      add_r_column(i, i + 1);
      add_u_row(i, i + 1);
    } else {
      swap_adjacent(i);
    }
  } else {
    // R column i is zero; clearing U[i, i+1] leaves R U unchanged.
    if (u_link) toggle_u(i, i + 1);
    swap_adjacent(i);
  }

  for (auto& c : touched) {
    if (c == i) {
      c = i + 1;
    } else if (c == i + 1) {
      c = i;
    }
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (auto c : touched) register_low(c);
}

void RUState::move_triangles_to_end(std::span<const SimplexId> doomed) {
  std::vector<Position> positions;
  positions.reserve(doomed.size());
  for (auto s : doomed) {
    if (filtration_->operator[](s).dim != 2) throw Error("only triangles can be moved to the end");
    positions.push_back(where_.at(s));
  }
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());

  auto target = static_cast<Position>(r_.size());
  for (auto it = positions.rbegin(); it != positions.rend(); ++it) {
    --target;
    for (Position p = *it; p < target; ++p) transpose(p);
  }
}

std::vector<std::pair<SimplexId, SimplexId>> RUState::pairing() const {
  std::vector<std::pair<SimplexId, SimplexId>> out;
  for (Position j = 0; j < r_.size(); ++j) {
    if (!r_[j].empty()) out.emplace_back(perm_[r_[j].back()], perm_[j]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

DsgVerdict check_dsg_prefix(const RUState& s, std::size_t live_count) {
  const auto& fo = s.filtration();
  const auto limit = std::min(live_count, s.size());
  DsgVerdict v;
  for (Position p = 0; p < limit; ++p) {
    const auto& simplex = fo[s.simplex_at(p)];
    if (simplex.dim != 2) continue;
    const auto lo = s.low(p);
    if (!lo || *lo >= limit) continue;
    const auto& row = fo[s.simplex_at(*lo)];
    if (row.dim == 1 && row.is_fence()) {
      v.pass = true;
      v.witness = s.simplex_at(p);
      for (auto r : s.r_column(p)) v.witness_boundary.push_back(s.simplex_at(r));
      return v;
    }
  }
  return v;
}

DsgVerdict check_dsg(const RUState& s) { return check_dsg_prefix(s, s.size()); }

std::vector<SimplexId> witness_chain(const RUState& s, Position column) {
  // Back substitution on U x = e_column, U unit upper triangular.
  std::vector<bool> acc(s.size(), false);
  std::vector<SimplexId> chain;
  for (std::int64_t m = column; m >= 0; --m) {
    const auto pm = static_cast<Position>(m);
    const bool x = (pm == column) != acc[pm];
    if (!x) continue;
    chain.push_back(s.simplex_at(pm));
    for (auto r : s.u_column(pm)) {
      if (r != pm) acc[r] = !acc[r];
    }
  }
  std::sort(chain.begin(), chain.end());
  return chain;
}

OracleVerdict dsg_oracle(const SimplicialComplex2& k) {
  const auto& edges = k.edges();
  const auto& tris = k.triangles();
  std::vector<BitVector> rows(edges.size(), BitVector(tris.size()));
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& tri = tris[t];
    rows[k.edge_index({tri[0], tri[1]})].set(t);
    rows[k.edge_index({tri[0], tri[2]})].set(t);
    rows[k.edge_index({tri[1], tri[2]})].set(t);
  }
  BitVector fence_cycle(edges.size());
  const auto& fence = k.fence_order();
  for (std::size_t i = 0; i < fence.size(); ++i) {
    fence_cycle.set(k.edge_index(make_edge(fence[i], fence[(i + 1) % fence.size()])));
  }

  const auto sol = solve_gf2(std::move(rows), fence_cycle, tris.size());
  OracleVerdict v;
  v.pass = sol.solvable;
  if (sol.solvable) {
    v.nullity = sol.nullity;
    for (auto t : sol.particular.ones()) v.chain.push_back(tris[t]);
  }
  return v;
}

}  // namespace covfail
