#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "covfail/complex.hpp"

namespace covfail {

/// Identity of a simplex: its position in the initial filtration order.
using SimplexId = std::uint32_t;
/// Current position of a column (and row) in the permuted matrix.
using Position = std::uint32_t;

enum class Block : std::uint8_t { Fence, Skeleton, Triangles };

struct Simplex {
  std::uint8_t dim = 0;
  std::array<VertexIndex, 3> vertices{};  ///< first dim+1 entries used
  std::array<SimplexId, 3> faces{};       ///< codimension-1 faces, first dim+1 used (none for vertices)
  Block block = Block::Skeleton;

  std::span<const VertexIndex> vertex_span() const { return {vertices.data(), std::size_t{dim} + 1u}; }
  std::span<const SimplexId> face_span() const {
    return {faces.data(), dim == 0 ? std::size_t{0} : std::size_t{dim} + 1u};
  }
  bool is_fence() const noexcept { return block == Block::Fence; }
  bool contains_vertex(VertexIndex v) const;
};

/// Fence vertices and edges first, then the remaining 1-skeleton, then all
/// triangles.
class FiltrationOrder {
 public:
  explicit FiltrationOrder(const SimplicialComplex2& k);

  std::size_t size() const noexcept { return simplices_.size(); }
  const Simplex& operator[](SimplexId id) const { return simplices_.at(id); }
  std::size_t triangle_begin() const noexcept { return triangle_begin_; }

  SimplexId vertex_id(VertexIndex v) const { return vertex_ids_.at(v); }
  SimplexId edge_id(std::size_t edge_index) const { return edge_ids_.at(edge_index); }
  SimplexId triangle_id(std::size_t triangle_index) const { return triangle_ids_.at(triangle_index); }

  /// True when `face` is a proper face of `coface`.
  bool is_face(SimplexId face, SimplexId coface) const;

  /// Triangles with at least one vertex in `dead`.
  std::vector<SimplexId> triangles_meeting(std::span<const VertexIndex> dead) const;

 private:
  std::vector<Simplex> simplices_;
  std::size_t triangle_begin_ = 0;
  std::vector<SimplexId> vertex_ids_;
  std::vector<SimplexId> edge_ids_;
  std::vector<SimplexId> triangle_ids_;
};

/// Sorted row positions per column.
using Column = std::vector<Position>;

struct SparseBoundaryMatrix {
  std::vector<Column> columns;
  friend bool operator==(const SparseBoundaryMatrix&, const SparseBoundaryMatrix&) = default;
};

/// Boundary matrix in the initial filtration order.
SparseBoundaryMatrix build_boundary_matrix(const FiltrationOrder& order);

/// Boundary matrix with simplex `order_by_position[p]` at position p.
SparseBoundaryMatrix permuted_boundary_matrix(const FiltrationOrder& order,
                                              std::span<const SimplexId> order_by_position);

/// Z2 decomposition D = R U of a permuted boundary matrix, with R reduced
/// and U unit upper triangular, kept valid under adjacent transpositions.
class RUState {
 public:
  std::size_t size() const noexcept { return r_.size(); }

  const Column& r_column(Position p) const { return r_.at(p); }
  const Column& u_column(Position p) const { return u_.at(p); }
  std::optional<Position> low(Position p) const;
  /// Column whose lowest one sits in `row`, if any.
  std::optional<Position> column_with_low(Position row) const;
  bool is_positive(Position p) const { return r_.at(p).empty(); }

  SimplexId simplex_at(Position p) const { return perm_.at(p); }
  Position position_of(SimplexId s) const { return where_.at(s); }
  const std::vector<SimplexId>& order() const noexcept { return perm_; }
  const FiltrationOrder& filtration() const noexcept { return *filtration_; }
  std::shared_ptr<const FiltrationOrder> filtration_ptr() const noexcept { return filtration_; }

  /// Swaps the simplices at positions i and i+1 and repairs R and U.
  void transpose(Position i);

  /// Bubbles the listed triangles to the final positions, survivors keeping
  /// their relative order.
  void move_triangles_to_end(std::span<const SimplexId> doomed);

  /// Persistence pairs as (birth simplex, death simplex), sorted.
  std::vector<std::pair<SimplexId, SimplexId>> pairing() const;

  friend RUState reduce(std::shared_ptr<const FiltrationOrder> order, const SparseBoundaryMatrix& d);

 private:
  void toggle_r(Position row, Position column);
  void toggle_u(Position row, Position column);
  void add_r_column(Position src, Position dst);
  void add_u_row(Position dst, Position src);
  void swap_adjacent(Position i);
  void register_low(Position column);

  std::shared_ptr<const FiltrationOrder> filtration_;
  std::vector<Column> r_;
  std::vector<Column> u_;
  std::vector<Column> r_rows_;  ///< row -> sorted columns of R holding a one there
  std::vector<Column> u_rows_;
  std::vector<std::int64_t> low_owner_;  ///< row -> column with that low, or -1
  std::vector<SimplexId> perm_;
  std::vector<Position> where_;
};

/// Left-to-right column reduction of `d`, which must be the boundary matrix
/// of `order` in its initial arrangement.
RUState reduce(std::shared_ptr<const FiltrationOrder> order, const SparseBoundaryMatrix& d);

/// Builds the filtration and reduces it.
RUState reduce_complex(const SimplicialComplex2& k);

struct DsgVerdict {
  bool pass = false;
  std::optional<SimplexId> witness;       ///< triangle whose column certifies the pass
  std::vector<SimplexId> witness_boundary;  ///< simplices in that R column
};

/// Pass iff some triangle column of R is nonzero with its lowest one in a
/// fence-edge row.
DsgVerdict check_dsg(const RUState& s);

/// Same test restricted to the first `live_count` positions.
DsgVerdict check_dsg_prefix(const RUState& s, std::size_t live_count);

/// Triangle chain whose boundary is the R column at `column`, obtained by
/// solving U x = e_column.
std::vector<SimplexId> witness_chain(const RUState& s, Position column);

struct OracleVerdict {
  bool pass = false;
  std::vector<Triangle> chain;  ///< one solution when pass
  std::size_t nullity = 0;      ///< solutions number 2^nullity when pass
};

/// Decides the criterion by solving boundary(x) = fence cycle over triangle
/// chains with dense Gaussian elimination.
OracleVerdict dsg_oracle(const SimplicialComplex2& k);

}  // namespace covfail
