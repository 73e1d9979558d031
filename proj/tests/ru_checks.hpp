#pragma once

// Independent checks on an RU decomposition, written without touching the
// reduction code paths.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "covfail/persistence.hpp"

namespace covfail::testing {

/// Column reduction on a dense 0/1 matrix; returns the low row per column.
inline std::vector<std::optional<std::size_t>> dense_lows(const SparseBoundaryMatrix& d) {
  const auto n = d.columns.size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t j = 0; j < n; ++j)
    for (auto r : d.columns[j]) m[j][r] = true;
  auto low = [&](std::size_t j) -> std::optional<std::size_t> {
    for (std::size_t r = n; r-- > 0;)
      if (m[j][r]) return r;
    return std::nullopt;
  };
  std::vector<std::optional<std::size_t>> lows(n);
  for (std::size_t j = 0; j < n; ++j) {
    bool changed = true;
    while (changed) {
      changed = false;
      const auto lj = low(j);
      if (!lj) break;
      for (std::size_t k = 0; k < j; ++k) {
        if (lows[k] == lj) {
          for (std::size_t r = 0; r < n; ++r) m[j][r] = m[j][r] != m[k][r];
          changed = true;
          break;
        }
      }
    }
    lows[j] = low(j);
  }
  return lows;
}

inline bool is_reduced(const RUState& s) {
  std::vector<bool> seen(s.size(), false);
  for (Position j = 0; j < s.size(); ++j) {
    const auto& c = s.r_column(j);
    if (!std::is_sorted(c.begin(), c.end())) return false;
    if (c.empty()) continue;
    if (seen[c.back()]) return false;
    seen[c.back()] = true;
    if (s.column_with_low(c.back()) != j) return false;
  }
  return true;
}

inline bool is_unit_upper(const RUState& s) {
  for (Position j = 0; j < s.size(); ++j) {
    const auto& c = s.u_column(j);
    if (c.empty() || c.back() != j) return false;
    if (!std::is_sorted(c.begin(), c.end())) return false;
  }
  return true;
}

/// R U over Z2, column by column.
inline SparseBoundaryMatrix product(const RUState& s) {
  SparseBoundaryMatrix out;
  out.columns.resize(s.size());
  for (Position j = 0; j < s.size(); ++j) {
    std::vector<bool> acc(s.size(), false);
    for (auto k : s.u_column(j))
      for (auto r : s.r_column(k)) acc[r] = !acc[r];
    for (Position r = 0; r < s.size(); ++r)
      if (acc[r]) out.columns[j].push_back(r);
  }
  return out;
}

inline bool factorization_holds(const RUState& s) {
  return product(s) == permuted_boundary_matrix(s.filtration(), s.order());
}

/// Empty string when every RU invariant holds, otherwise the first failure.
inline std::string ru_violation(const RUState& s) {
  if (!is_reduced(s)) return "R not reduced";
  if (!is_unit_upper(s)) return "U not unit upper triangular";
  if (!factorization_holds(s)) return "R U differs from the permuted boundary matrix";
  const auto fresh = reduce(s.filtration_ptr(), permuted_boundary_matrix(s.filtration(), s.order()));
  // A fresh reduce on the permuted matrix reports positions relative to the
  // permuted order; map them back to simplex ids.
  std::vector<std::pair<SimplexId, SimplexId>> fresh_pairs;
  for (Position j = 0; j < fresh.size(); ++j) {
    if (auto lo = fresh.low(j)) fresh_pairs.emplace_back(s.order()[*lo], s.order()[j]);
  }
  std::sort(fresh_pairs.begin(), fresh_pairs.end());
  if (fresh_pairs != s.pairing()) return "pairing differs from a fresh reduction";
  return {};
}

/// Adjacent positions that may legally be swapped: same block, no incidence.
inline std::vector<Position> legal_swaps(const RUState& s) {
  std::vector<Position> out;
  const auto& fo = s.filtration();
  for (Position i = 0; i + 1 < s.size(); ++i) {
    const auto a = s.simplex_at(i), b = s.simplex_at(i + 1);
    if (fo[a].block == fo[b].block && !fo.is_face(a, b)) out.push_back(i);
  }
  return out;
}

}  // namespace covfail::testing
