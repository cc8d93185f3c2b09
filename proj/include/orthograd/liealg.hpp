#pragma once

// The split orthogonal algebra so(2n) realized as 2n x 2n matrices X with
// X^t S + S X = 0 for S = [[0, I], [I, 0]].  In the block form
// X = [[A, B], [C, -A^t]] this forces B and C to be skew-symmetric.
//
// Basis (N = n + 2 * #positive roots = n(2n-1) elements):
//   h_i            = E_{ii} - E_{n+i,n+i}
//   x_{e_i - e_j}  = E_{ij} - E_{n+j,n+i}          (any i != j)
//   x_{e_i + e_j}  = E_{i,n+j} - E_{j,n+i}         (i < j)
//   x_{-e_i - e_j} = E_{n+i,j} - E_{n+j,i}         (i < j)
// using 0-based indices throughout.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "orthograd/ratmat.hpp"
#include "orthograd/rootsys.hpp"

namespace orthograd {

using SparseRat = std::vector<std::pair<std::uint32_t, Rat>>;

class OrthoElement {
 public:
  struct Entry {
    std::uint32_t r, c;
    Rat v;
    bool operator==(const Entry&) const = default;
  };

  static OrthoElement zero(int n) { return OrthoElement(n, {}); }

  // Validates the defining invariant; use for externally supplied data.
  static OrthoElement from_entries(int n, std::vector<Entry> entries) {
    OrthoElement x(n, std::move(entries));
    if (!x.satisfies_invariant())
      throw precondition_error("OrthoElement: X^t S + S X != 0");
    return x;
  }

  int n() const { return n_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  Rat entry(std::uint32_t r, std::uint32_t c) const {
    for (const Entry& e : entries_)
      if (e.r == r && e.c == c) return e.v;
    return Rat(0);
  }

  bool satisfies_invariant() const {
    const std::uint32_t un = static_cast<std::uint32_t>(n_);
    for (const Entry& e : entries_) {
      std::uint32_t pr = (e.c + un) % (2 * un), pc = (e.r + un) % (2 * un);
      if (entry(pr, pc) != -e.v) return false;
    }
    return true;
  }

  OrthoElement transposed() const {
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const Entry& e : entries_) out.push_back({e.c, e.r, e.v});
    return OrthoElement(n_, std::move(out));
  }

  bool operator==(const OrthoElement& o) const {
    return n_ == o.n_ && entries_ == o.entries_;
  }

  friend OrthoElement combine(const Rat& a, const OrthoElement& x, const Rat& b,
                              const OrthoElement& y) {
    if (x.n_ != y.n_) throw precondition_error("combine: rank mismatch");
    std::vector<Entry> out;
    out.reserve(x.entries_.size() + y.entries_.size());
    for (const Entry& e : x.entries_)
      if (a != 0) out.push_back({e.r, e.c, a * e.v});
    for (const Entry& e : y.entries_)
      if (b != 0) out.push_back({e.r, e.c, b * e.v});
    return OrthoElement(x.n_, std::move(out));
  }

  friend OrthoElement operator+(const OrthoElement& x, const OrthoElement& y) {
    return combine(Rat(1), x, Rat(1), y);
  }
  friend OrthoElement operator-(const OrthoElement& x, const OrthoElement& y) {
    return combine(Rat(1), x, Rat(-1), y);
  }
  friend OrthoElement operator*(const Rat& a, const OrthoElement& x) {
    return combine(a, x, Rat(0), x);
  }

  friend OrthoElement matmul(const OrthoElement& x, const OrthoElement& y) {
    if (x.n_ != y.n_) throw precondition_error("matmul: rank mismatch");
    std::vector<Entry> out;
    for (const Entry& a : x.entries_)
      for (const Entry& b : y.entries_)
        if (a.c == b.r) out.push_back({a.r, b.c, a.v * b.v});
    return OrthoElement(x.n_, std::move(out));
  }

  // Entries in (row, col) order with duplicates merged; internal trusted path.
  OrthoElement(int n, std::vector<Entry> raw) : n_(n) {
    std::sort(raw.begin(), raw.end(), [](const Entry& a, const Entry& b) {
      return a.r != b.r ? a.r < b.r : a.c < b.c;
    });
    for (Entry& e : raw) {
      if (e.r >= 2 * static_cast<std::uint32_t>(n_) ||
          e.c >= 2 * static_cast<std::uint32_t>(n_))
        throw precondition_error("OrthoElement: entry out of range");
      if (!entries_.empty() && entries_.back().r == e.r && entries_.back().c == e.c)
        entries_.back().v += e.v;
      else
        entries_.push_back(std::move(e));
    }
    std::erase_if(entries_, [](const Entry& e) { return e.v == 0; });
  }

 private:
  int n_;
  std::vector<Entry> entries_;
};

inline OrthoElement bracket(const OrthoElement& x, const OrthoElement& y) {
  return matmul(x, y) - matmul(y, x);
}

// sigma: X -> -X^t, an order-2 automorphism acting as -1 on the Cartan.
inline OrthoElement sigma_auto(const OrthoElement& x) {
  return Rat(-1) * x.transposed();
}

// tau: fixes the diagonal blocks, negates the off-diagonal ones.
inline OrthoElement tau_auto(const OrthoElement& x) {
  const std::uint32_t un = static_cast<std::uint32_t>(x.n());
  std::vector<OrthoElement::Entry> out;
  out.reserve(x.entries().size());
  for (const auto& e : x.entries()) {
    bool off = (e.r < un) != (e.c < un);
    out.push_back({e.r, e.c, off ? -e.v : e.v});
  }
  return OrthoElement(x.n(), std::move(out));
}

class AlgebraBasis {
 public:
  explicit AlgebraBasis(int n) : n_(n), roots_(n) {
    const std::size_t un = static_cast<std::size_t>(n);
    const auto& pos = roots_.positive_roots();
    elements_.reserve(un + 2 * pos.size());
    for (std::size_t i = 0; i < un; ++i)
      elements_.push_back(OrthoElement(
          n, {{u32(i), u32(i), Rat(1)}, {u32(un + i), u32(un + i), Rat(-1)}}));
    for (const Root& a : pos) elements_.push_back(root_vector_element(a.i, a.j, a.sj, false));
    for (const Root& a : pos) elements_.push_back(root_vector_element(a.i, a.j, a.sj, true));
  }

  int rank() const { return n_; }
  std::size_t dimension() const { return elements_.size(); }
  const RootSystemD& roots() const { return roots_; }
  std::size_t positive_count() const { return roots_.positive_roots().size(); }

  std::size_t h_index(std::size_t i) const { return i; }
  // x_{a} for the k-th positive root a, or x_{-a} when negative.
  std::size_t x_index(std::size_t k, bool negative) const {
    return static_cast<std::size_t>(n_) + (negative ? positive_count() : 0) + k;
  }

  const OrthoElement& element(std::size_t idx) const { return elements_[idx]; }

  bool is_cartan_index(std::size_t idx) const {
    return idx < static_cast<std::size_t>(n_);
  }

  // sigma(x_a) = sign * x_{-a}: -1 on difference roots, +1 on sum roots.
  int sigma_sign(std::size_t k) const {
    return k < positive_count() / 2 ? -1 : 1;
  }

  // The root of a non-Cartan basis index, as (positive index, sign).
  std::pair<std::size_t, int> root_of(std::size_t idx) const {
    std::size_t k = idx - static_cast<std::size_t>(n_);
    return k < positive_count() ? std::make_pair(k, 1)
                                : std::make_pair(k - positive_count(), -1);
  }

  // Exact coordinates in this basis; rejects anything outside the span.
  SparseRat coordinates(const OrthoElement& x) const {
    if (x.n() != n_) throw precondition_error("coordinates: rank mismatch");
    const std::uint32_t un = static_cast<std::uint32_t>(n_);
    SparseRat coords;
    for (const auto& e : x.entries()) {
      if (e.r == e.c) {
        if (e.r < un) coords.emplace_back(u32(h_index(e.r)), e.v);
      } else if (e.r < un && e.c < un) {
        bool pos = e.r < e.c;
        std::size_t i = pos ? e.r : e.c, j = pos ? e.c : e.r;
        coords.emplace_back(u32(x_index(roots_.positive_index(i, j, false), !pos)), e.v);
      } else if (e.r < un && e.c >= un) {
        std::size_t j = e.c - un;
        if (e.r < j)
          coords.emplace_back(u32(x_index(roots_.positive_index(e.r, j, true), false)), e.v);
      } else if (e.r >= un && e.c < un) {
        std::size_t i = e.r - un;
        if (i < e.c)
          coords.emplace_back(u32(x_index(roots_.positive_index(i, e.c, true), true)), e.v);
      }
    }
    std::sort(coords.begin(), coords.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!(from_coordinates(coords) == x))
      throw precondition_error("coordinates: element not in the algebra");
    return coords;
  }

  OrthoElement from_coordinates(const SparseRat& coords) const {
    std::vector<OrthoElement::Entry> out;
    for (const auto& [idx, coef] : coords)
      for (const auto& e : elements_[idx].entries())
        out.push_back({e.r, e.c, coef * e.v});
    return OrthoElement(n_, std::move(out));
  }

 private:
  static std::uint32_t u32(std::size_t v) { return static_cast<std::uint32_t>(v); }

  OrthoElement root_vector_element(std::size_t i, std::size_t j, int sj,
                                   bool negative) const {
    const std::uint32_t un = static_cast<std::uint32_t>(n_);
    std::uint32_t ui = u32(i), uj = u32(j);
    if (sj < 0) {
      // e_i - e_j and its negative e_j - e_i
      if (!negative)
        return OrthoElement(n_, {{ui, uj, Rat(1)}, {un + uj, un + ui, Rat(-1)}});
      return OrthoElement(n_, {{uj, ui, Rat(1)}, {un + ui, un + uj, Rat(-1)}});
    }
    // e_i + e_j and -(e_i + e_j)
    if (!negative)
      return OrthoElement(n_, {{ui, un + uj, Rat(1)}, {uj, un + ui, Rat(-1)}});
    return OrthoElement(n_, {{un + ui, uj, Rat(1)}, {un + uj, ui, Rat(-1)}});
  }

  int n_;
  RootSystemD roots_;
  std::vector<OrthoElement> elements_;
};

// A {+1,-1}-valued character of the root lattice, given on the simple roots.
class Character {
 public:
  static Character on_simple_roots(int n, std::vector<int> signs) {
    if (signs.size() != static_cast<std::size_t>(n))
      throw precondition_error("Character: need one sign per simple root");
    for (int s : signs)
      if (s != 1 && s != -1) throw precondition_error("Character: signs must be +-1");
    return Character(n, std::move(signs));
  }

  // One value per positive root, in enumeration order; rejected when the
  // table is not multiplicative.
  static Character from_root_values(const RootSystemD& rs, const std::vector<int>& values) {
    const auto& pos = rs.positive_roots();
    if (values.size() != pos.size())
      throw input_error("character table: need one value per positive root");
    for (int s : values)
      if (s != 1 && s != -1) throw input_error("character table: values must be +-1");
    const int n = rs.rank();
    std::vector<int> signs;
    const std::size_t un = static_cast<std::size_t>(n);
    for (std::size_t k = 0; k + 1 < un; ++k)
      signs.push_back(values[rs.positive_index(k, k + 1, false)]);
    signs.push_back(values[rs.positive_index(un - 2, un - 1, true)]);
    Character chi(n, std::move(signs));
    for (std::size_t k = 0; k < pos.size(); ++k)
      if (chi.eval(to_intvec(pos[k].coords)) != values[k])
        throw input_error("character table: values do not extend to a character");
    return chi;
  }

  int rank() const { return n_; }
  const std::vector<int>& simple_signs() const { return signs_; }

  // Value at any root-lattice vector.
  int eval(const IntVec& v) const {
    auto coords = simple_root_coordinates(n_, v);
    if (!coords) throw precondition_error("Character::eval: vector outside the root lattice");
    int out = 1;
    for (std::size_t k = 0; k < coords->size(); ++k)
      if ((*coords)[k] % 2 != 0 && signs_[k] == -1) out = -out;
    return out;
  }

 private:
  Character(int n, std::vector<int> signs) : n_(n), signs_(std::move(signs)) {}
  int n_;
  std::vector<int> signs_;
};

// tau_chi: identity on the Cartan, multiplication by chi(a) on each root
// space.  Defined on (linear combinations of) basis elements.
inline OrthoElement tau_chi(const AlgebraBasis& basis, const Character& chi,
                            const OrthoElement& x) {
  SparseRat coords = basis.coordinates(x);
  for (auto& [idx, coef] : coords) {
    if (basis.is_cartan_index(idx)) continue;
    auto [k, sign] = basis.root_of(idx);
    const Root& a = basis.roots().positive_roots()[k];
    if (chi.eval(to_intvec(a.coords)) == -1) coef = -coef;
  }
  return basis.from_coordinates(coords);
}

// Checks that phi is an invertible linear map with
// phi([x, y]) = [phi(x), phi(y)] across all basis pairs.  phi is evaluated
// on basis elements only and extended linearly.
inline bool check_automorphism(
    const AlgebraBasis& basis,
    const std::function<OrthoElement(const OrthoElement&)>& phi) {
  const std::size_t dim = basis.dimension();
  std::vector<OrthoElement> images;
  std::vector<SparseRat> image_coords;
  images.reserve(dim);
  image_coords.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    images.push_back(phi(basis.element(i)));
    image_coords.push_back(basis.coordinates(images.back()));
  }

  RatMat m(dim, RatVec(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (const auto& [j, coef] : image_coords[i]) m[i][j] = coef;
  if (!is_invertible(std::move(m))) return false;

  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      OrthoElement lhs = OrthoElement::zero(basis.rank());
      for (const auto& [k, coef] :
           basis.coordinates(bracket(basis.element(i), basis.element(j))))
        lhs = combine(Rat(1), lhs, coef, images[k]);
      if (!(lhs == bracket(images[i], images[j]))) return false;
    }
  return true;
}

}  // namespace orthograd
