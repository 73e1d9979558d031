#include "covfail/gf2.hpp"

#include <utility>

namespace covfail {

namespace {

// Forward elimination in place; returns the pivot column of each pivot row.
std::vector<std::size_t> eliminate(std::vector<BitVector>& rows, std::vector<bool>* rhs,
                                   std::size_t unknowns) {
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t col = 0; col < unknowns && next < rows.size(); ++col) {
    std::size_t r = next;
    while (r < rows.size() && !rows[r].test(col)) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[r], rows[next]);
    if (rhs) std::swap((*rhs)[r], (*rhs)[next]);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k != next && rows[k].test(col)) {
        rows[k] ^= rows[next];
        if (rhs) (*rhs)[k] = (*rhs)[k] != (*rhs)[next];
      }
    }
    pivots.push_back(col);
    ++next;
  }
  return pivots;
}

}  // namespace

Gf2Solution solve_gf2(std::vector<BitVector> rows, const BitVector& rhs, std::size_t unknowns) {
  std::vector<bool> b(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) b[r] = rhs.test(r);

  const auto pivots = eliminate(rows, &b, unknowns);

  Gf2Solution out;
  out.rank = pivots.size();
  out.nullity = unknowns - out.rank;
  out.particular = BitVector(unknowns);
  for (std::size_t r = out.rank; r < rows.size(); ++r) {
    if (b[r]) return out;
  }
  out.solvable = true;
  // Reduced row echelon form: free variables at zero, pivots read off directly.
  for (std::size_t r = 0; r < out.rank; ++r) {
    if (b[r]) out.particular.set(pivots[r]);
  }
  return out;
}

std::size_t rank_gf2(std::vector<BitVector> rows) {
  if (rows.empty()) return 0;
  return eliminate(rows, nullptr, rows.front().size()).size();
}

}  // namespace covfail
