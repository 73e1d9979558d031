#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "covfail/complex.hpp"
#include "covfail/gf2.hpp"
#include "covfail/persistence.hpp"

namespace covfail {

/// Subset of the interior vertices as a bit set over their interior rank
/// (the order of SimplicialComplex2::interior_vertices()).
struct SubsetKey {
  BitVector bits;

  std::size_t size() const { return bits.count(); }
  friend bool operator==(const SubsetKey&, const SubsetKey&) = default;
};

struct SubsetKeyHash {
  std::size_t operator()(const SubsetKey& k) const noexcept { return BitVectorHash{}(k.bits); }
};

enum class SubsetClass { Cake, Death };

/// One reduction of the full complex, reused for every subset: each query
/// copies the reduced snapshot, parks the triangles that meet the subset at
/// the end of the matrix and checks the live prefix.
class SubsetClassifier {
 public:
  explicit SubsetClassifier(const SimplicialComplex2& k);

  SubsetClass classify(const SubsetKey& subset) const;

  const SimplicialComplex2& complex() const noexcept { return *complex_; }
  const std::vector<VertexIndex>& interior() const noexcept { return interior_; }
  const RUState& snapshot() const noexcept { return snapshot_; }

  SubsetKey empty_key() const { return SubsetKey{BitVector(interior_.size())}; }
  SubsetKey key_of(std::span<const VertexLabel> members) const;
  std::vector<VertexIndex> vertices_of(const SubsetKey& subset) const;
  std::vector<VertexLabel> labels_of(const SubsetKey& subset) const;

 private:
  const SimplicialComplex2* complex_;
  std::vector<VertexIndex> interior_;
  std::vector<std::size_t> interior_rank_;  ///< vertex -> rank, or npos for fence
  RUState snapshot_;
};

/// Classification of one subset against an already reduced state of `k`.
SubsetClass classify_subset(const SimplicialComplex2& k, const RUState& reduced,
                            std::span<const VertexIndex> removed);

struct DeathSet {
  SubsetKey key;
  std::vector<VertexLabel> members;
};

struct DeathSetReport {
  std::vector<DeathSet> minimal_death_sets;  ///< sorted by size, then members
  std::vector<VertexLabel> interior;
  std::size_t explored_cake_count = 0;
  std::size_t explored_total = 0;
  /// Set when the search stopped at a size cap with cake sets still
  /// extendable: death sets larger than this were not searched.
  std::optional<std::size_t> truncated_at_size;
  bool baseline_failure = false;  ///< the intact complex already fails
  bool budget_exceeded = false;
};

struct DeathSetOptions {
  std::optional<std::size_t> max_size;
  bool parallel = false;
  unsigned threads = 0;  ///< 0: hardware concurrency
  std::size_t budget = 1u << 22;  ///< maximum number of subsets classified
};

/// Breadth-first search of the subset lattice. A subset is examined only
/// when every subset one smaller is a cake set, so every death set found is
/// minimal.
DeathSetReport cake_or_death(const SimplicialComplex2& k, const DeathSetOptions& options = {});

/// Exhaustive reference: classifies all 2^n interior subsets with
/// dsg_oracle and keeps the minimal failing ones. Throws TooLarge beyond
/// `max_interior` interior vertices.
DeathSetReport brute_force_death_sets(const SimplicialComplex2& k, std::size_t max_interior = 14);

}  // namespace covfail
