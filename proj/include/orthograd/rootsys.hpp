#pragma once

// The root system of type D_n in the epsilon coordinates: roots are
// +/- e_i +/- e_j with i < j, written as integer vectors of length n.

#include <cstddef>
#include <optional>
#include <vector>

#include "orthograd/lattice.hpp"

namespace orthograd {

struct Root {
  std::vector<int> coords;
  std::size_t i = 0, j = 0;  // support positions, i < j
  int si = 0, sj = 0;        // signs at i and j

  bool operator==(const Root&) const = default;
};

inline bool is_root(const std::vector<int>& v) {
  int nonzero = 0;
  for (int x : v) {
    if (x == 0) continue;
    if (x != 1 && x != -1) return false;
    ++nonzero;
  }
  return nonzero == 2;
}

inline int inner(const Root& a, const Root& b) {
  int acc = 0;
  acc += a.si * (b.i == a.i ? b.si : b.j == a.i ? b.sj : 0);
  acc += a.sj * (b.i == a.j ? b.si : b.j == a.j ? b.sj : 0);
  return acc;
}

inline IntVec to_intvec(const std::vector<int>& v) {
  IntVec out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k];
  return out;
}

// Coefficients of v in the simple-root basis of D_n; nullopt when v is
// outside the root lattice (odd coordinate sum).
inline std::optional<IntVec> simple_root_coordinates(int n, const IntVec& v) {
  const std::size_t un = static_cast<std::size_t>(n);
  if (n < 2 || v.size() != un)
    throw precondition_error("simple_root_coordinates: length mismatch");
  IntVec c(un);
  Int prev = 0;
  for (std::size_t j = 0; j + 2 < un; ++j) {
    c[j] = v[j] + prev;
    prev = c[j];
  }
  Int s = v[un - 2] + prev;
  Int t = s + v[un - 1];
  if (t % 2 != 0) return std::nullopt;
  c[un - 1] = t / 2;
  c[un - 2] = (s - v[un - 1]) / 2;
  return c;
}

class RootSystemD {
 public:
  explicit RootSystemD(int n) : n_(n) {
    if (n < 2) throw precondition_error("RootSystemD: rank must be at least 2");
    const std::size_t un = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = i + 1; j < un; ++j)
        positives_.push_back(make(i, j, 1, -1));
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = i + 1; j < un; ++j)
        positives_.push_back(make(i, j, 1, 1));
    for (std::size_t k = 0; k + 1 < un; ++k) simples_.push_back(make(k, k + 1, 1, -1));
    simples_.push_back(make(un - 2, un - 1, 1, 1));
  }

  int rank() const { return n_; }
  const std::vector<Root>& positive_roots() const { return positives_; }
  const std::vector<Root>& simple_roots() const { return simples_; }

  // Position of e_i - e_j (sum = false) or e_i + e_j (sum = true)
  // in the positive-root enumeration.
  std::size_t positive_index(std::size_t i, std::size_t j, bool sum) const {
    const std::size_t un = static_cast<std::size_t>(n_);
    std::size_t pair_pos = i * un - i * (i + 1) / 2 + (j - i - 1);
    return sum ? un * (un - 1) / 2 + pair_pos : pair_pos;
  }

  // For any root vector: (index into positive_roots, +1 or -1).
  std::optional<std::pair<std::size_t, int>> classify(const std::vector<int>& v) const {
    if (v.size() != static_cast<std::size_t>(n_) || !is_root(v)) return std::nullopt;
    std::size_t i = 0;
    while (v[i] == 0) ++i;
    std::size_t j = i + 1;
    while (v[j] == 0) ++j;
    int sign = v[i] > 0 ? 1 : -1;
    return std::make_pair(positive_index(i, j, v[i] == v[j]), sign);
  }

  std::optional<IntVec> simple_coordinates(const IntVec& v) const {
    return simple_root_coordinates(n_, v);
  }

 private:
  Root make(std::size_t i, std::size_t j, int si, int sj) const {
    Root r;
    r.coords.assign(static_cast<std::size_t>(n_), 0);
    r.coords[i] = si;
    r.coords[j] = sj;
    r.i = i;
    r.j = j;
    r.si = si;
    r.sj = sj;
    return r;
  }

  int n_;
  std::vector<Root> positives_;
  std::vector<Root> simples_;
};

// Q: vectors with even coordinate sum, spanned by the simple roots.
inline Lattice root_lattice(int n) {
  RootSystemD rs(n);
  std::vector<IntVec> rows;
  for (const Root& a : rs.simple_roots()) rows.push_back(to_intvec(a.coords));
  return Lattice::from_rows(rows, static_cast<std::size_t>(n));
}

// W: all of Z^n in these coordinates.
inline Lattice weight_lattice(int n) {
  return Lattice::full(static_cast<std::size_t>(n));
}

// 2Q, the base subgroup every admissible fine subgroup contains.
inline Lattice doubled_root_lattice(int n) {
  RootSystemD rs(n);
  std::vector<IntVec> rows;
  for (const Root& a : rs.simple_roots()) {
    IntVec r = to_intvec(a.coords);
    for (auto& x : r) x *= 2;
    rows.push_back(std::move(r));
  }
  return Lattice::from_rows(rows, static_cast<std::size_t>(n));
}

}  // namespace orthograd
