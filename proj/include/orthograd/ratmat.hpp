#pragma once

// Dense rational elimination, enough for rank and membership questions.

#include <cstddef>
#include <vector>

#include "orthograd/common.hpp"

namespace orthograd {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

// Gaussian elimination in place; returns the rank.
inline std::size_t rref_rank(RatMat& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    const Rat inv = Rat(1) / m[rank][col];
    for (std::size_t j = col; j < cols; ++j) m[rank][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || m[i][col] == 0) continue;
      const Rat f = m[i][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank_of(RatMat m) { return rref_rank(m); }

// Every row of `vectors` lies in the row span of `span`?
inline bool span_contains(const RatMat& span, const RatMat& vectors) {
  std::size_t base = rank_of(span);
  for (const auto& v : vectors) {
    RatMat joined = span;
    joined.push_back(v);
    if (rank_of(std::move(joined)) != base) return false;
  }
  return true;
}

inline bool is_invertible(RatMat m) {
  if (m.empty()) return true;
  if (m.size() != m.front().size()) return false;
  const std::size_t n = m.size();
  return rref_rank(m) == n;
}

}  // namespace orthograd
