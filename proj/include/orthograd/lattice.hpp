#pragma once

// Sublattices of Z^n held in row Hermite normal form, plus quotient
// invariants computed through the Smith form.

#include <cstdint>
#include <optional>
#include <vector>

#include "orthograd/intmat.hpp"

namespace orthograd {

using SparseIntVec = std::vector<std::pair<std::uint32_t, Int>>;

// Incremental row-echelon accumulator. Rows are kept sorted by leading
// column with positive leading entry; finalize() reduces above the pivots,
// which makes the basis canonical for the lattice.
class HnfBuilder {
 public:
  explicit HnfBuilder(std::size_t ambient) : n_(ambient) {}

  void insert(IntVec v) {
    if (v.size() != n_) throw precondition_error("HnfBuilder: row length mismatch");
    for (;;) {
      std::size_t l = 0;
      while (l < n_ && v[l] == 0) ++l;
      if (l == n_) return;
      std::size_t pos = 0;
      while (pos < rows_.size() && leads_[pos] < l) ++pos;
      if (pos == rows_.size() || leads_[pos] != l) {
        if (v[l] < 0)
          for (auto& x : v) x = -x;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
        leads_.insert(leads_.begin() + static_cast<std::ptrdiff_t>(pos), l);
        return;
      }
      IntVec& b = rows_[pos];
      if (v[l] % b[l] == 0) {
        Int q = v[l] / b[l];
        for (std::size_t k = l; k < n_; ++k) v[k] -= q * b[k];
      } else {
        Xgcd e = xgcd(b[l], v[l]);
        Int bl_g = b[l] / e.g, vl_g = v[l] / e.g;
        IntVec nb(n_), nv(n_);
        for (std::size_t k = l; k < n_; ++k) {
          nb[k] = e.s * b[k] + e.t * v[k];
          nv[k] = bl_g * v[k] - vl_g * b[k];
        }
        b = std::move(nb);
        v = std::move(nv);
      }
    }
  }

  void insert_sparse(const SparseIntVec& entries) {
    IntVec v(n_);
    for (const auto& [idx, val] : entries) v[idx] = val;
    insert(std::move(v));
  }

  std::size_t rank() const { return rows_.size(); }

  // Canonical basis: entries above each pivot reduced into [0, pivot).
  IntMatrix finalize() const {
    std::vector<IntVec> rows = rows_;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = i + 1; j < rows.size(); ++j) {
        std::size_t l = leads_[j];
        Int q = floor_div(rows[i][l], rows[j][l]);
        if (q == 0) continue;
        for (std::size_t k = l; k < n_; ++k) rows[i][k] -= q * rows[j][k];
      }
    IntMatrix m(rows.size(), n_);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t k = 0; k < n_; ++k) m(i, k) = std::move(rows[i][k]);
    return m;
  }

 private:
  std::size_t n_;
  std::vector<IntVec> rows_;
  std::vector<std::size_t> leads_;
};

class Lattice {
 public:
  Lattice() = default;

  static Lattice zero(std::size_t ambient) {
    Lattice l;
    l.ambient_ = ambient;
    l.basis_ = IntMatrix(0, ambient);
    return l;
  }

  static Lattice full(std::size_t ambient) {
    Lattice l;
    l.ambient_ = ambient;
    l.basis_ = IntMatrix::identity(ambient);
    return l;
  }

  static Lattice from_rows(const std::vector<IntVec>& rows, std::size_t ambient) {
    HnfBuilder b(ambient);
    for (const auto& r : rows) b.insert(r);
    return from_builder(b, ambient);
  }

  static Lattice from_builder(const HnfBuilder& b, std::size_t ambient) {
    Lattice l;
    l.ambient_ = ambient;
    l.basis_ = b.finalize();
    return l;
  }

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }

  // Coefficients of v in the basis rows; nullopt when v is outside.
  std::optional<IntVec> coordinates(const IntVec& v) const {
    if (v.size() != ambient_)
      throw precondition_error("Lattice::coordinates: length mismatch");
    IntVec w = v;
    IntVec coeffs(rank());
    std::size_t col = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      std::size_t l = col;
      while (l < ambient_ && basis_(i, l) == 0) ++l;
      // leading column of row i
      for (std::size_t cchk = col; cchk < l; ++cchk)
        if (w[cchk] != 0) return std::nullopt;
      if (w[l] % basis_(i, l) != 0) return std::nullopt;
      Int q = w[l] / basis_(i, l);
      if (q != 0)
        for (std::size_t k = l; k < ambient_; ++k) w[k] -= q * basis_(i, k);
      coeffs[i] = std::move(q);
      col = l + 1;
    }
    for (std::size_t k = col; k < ambient_; ++k)
      if (w[k] != 0) return std::nullopt;
    return coeffs;
  }

  bool contains(const IntVec& v) const { return coordinates(v).has_value(); }

  bool contains_lattice(const Lattice& other) const {
    if (other.ambient_ != ambient_)
      throw precondition_error("contains_lattice: ambient mismatch");
    for (std::size_t i = 0; i < other.rank(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  bool operator==(const Lattice&) const = default;

 private:
  std::size_t ambient_ = 0;
  IntMatrix basis_{0, 0};
};

inline Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw precondition_error("lattice_sum: ambient mismatch");
  HnfBuilder builder(a.ambient_rank());
  for (std::size_t i = 0; i < a.rank(); ++i) builder.insert(a.basis().row(i));
  for (std::size_t i = 0; i < b.rank(); ++i) builder.insert(b.basis().row(i));
  return Lattice::from_builder(builder, a.ambient_rank());
}

struct QuotientInvariants {
  std::vector<Int> factors;  // invariant factors > 1, each dividing the next
  std::size_t free_rank = 0;

  bool is_finite() const { return free_rank == 0; }
  Int order() const {
    Int o = 1;
    for (const auto& f : factors) o *= f;
    return o;
  }
};

// sup/sub plus the map sending elements of sup to canonical coordinates
// in (Z/d_1) x ... x (Z/d_k) x Z^free (torsion coordinates first).
class QuotientMap {
 public:
  QuotientMap(const Lattice& sub, const Lattice& sup) : sup_(sup) {
    if (sub.ambient_rank() != sup.ambient_rank())
      throw precondition_error("QuotientMap: ambient mismatch");
    IntMatrix rel(sub.rank(), sup.rank());
    for (std::size_t i = 0; i < sub.rank(); ++i) {
      auto coords = sup.coordinates(sub.basis().row(i));
      if (!coords) throw precondition_error("QuotientMap: sub not inside sup");
      for (std::size_t j = 0; j < sup.rank(); ++j) rel(i, j) = (*coords)[j];
    }
    SmithDecomposition s = smith_normal_form(rel);
    v_ = std::move(s.v);
    std::size_t nz = 0;
    std::size_t m = std::min(s.d.rows(), s.d.cols());
    for (std::size_t i = 0; i < m; ++i)
      if (s.d(i, i) != 0) ++nz;
    for (std::size_t i = 0; i < nz; ++i)
      if (s.d(i, i) > 1) {
        torsion_.push_back(s.d(i, i));
        torsion_cols_.push_back(i);
      }
    for (std::size_t i = nz; i < sup.rank(); ++i) free_cols_.push_back(i);
  }

  const std::vector<Int>& torsion() const { return torsion_; }
  std::size_t free_rank() const { return free_cols_.size(); }

  QuotientInvariants invariants() const {
    return {torsion_, free_cols_.size()};
  }

  // Canonical coordinates of v mod sub; v must lie in sup.
  IntVec image(const IntVec& v) const {
    auto coords = sup_.coordinates(v);
    if (!coords) throw precondition_error("QuotientMap::image: vector outside sup");
    IntVec out;
    out.reserve(torsion_cols_.size() + free_cols_.size());
    auto dot_col = [&](std::size_t j) {
      Int acc = 0;
      for (std::size_t k = 0; k < coords->size(); ++k)
        acc += (*coords)[k] * v_(k, j);
      return acc;
    };
    for (std::size_t t = 0; t < torsion_cols_.size(); ++t) {
      Int x = dot_col(torsion_cols_[t]) % torsion_[t];
      if (x < 0) x += torsion_[t];
      out.push_back(std::move(x));
    }
    for (std::size_t j : free_cols_) out.push_back(dot_col(j));
    return out;
  }

 private:
  Lattice sup_;
  std::vector<Int> torsion_;
  std::vector<std::size_t> torsion_cols_;
  std::vector<std::size_t> free_cols_;
  IntMatrix v_;
};

inline QuotientInvariants quotient_invariants(const Lattice& sub, const Lattice& sup) {
  return QuotientMap(sub, sup).invariants();
}

// [sup : sub]; nullopt when the quotient is infinite.
inline std::optional<Int> lattice_index(const Lattice& sub, const Lattice& sup) {
  QuotientInvariants q = quotient_invariants(sub, sup);
  if (!q.is_finite()) return std::nullopt;
  return q.order();
}

}  // namespace orthograd
