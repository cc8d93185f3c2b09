#pragma once

// Group realizability through the universal grading group.  For a simple
// algebra the universal group of a set grading can be replaced by its
// abelianization, presented by one generator per component and one
// relation e_a + e_b - e_c per nonzero bracket [G_a, G_b] <= G_c.  The
// grading is a group grading for some relabeling iff the generators map to
// pairwise distinct elements there.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "orthograd/gradings.hpp"

namespace orthograd {

struct AbelianPresentation {
  std::size_t generators = 0;
  std::vector<SparseIntVec> relations;  // deduplicated, entries sorted by index

  IntMatrix dense_relations() const {
    IntMatrix m(relations.size(), generators);
    for (std::size_t r = 0; r < relations.size(); ++r)
      for (const auto& [idx, val] : relations[r]) m(r, idx) = val;
    return m;
  }
};

// Walks every component pair once; a bracket that straddles two components
// means the input was not a set grading, which is a caller error here.
inline AbelianPresentation relations_from_grading(const SetGrading& g) {
  const AdaptedBasis& basis = g.basis();
  std::vector<std::int64_t> owner(basis.dimension(), -1);
  for (std::size_t c = 0; c < g.components().size(); ++c)
    for (std::uint32_t idx : g.components()[c]) owner[idx] = static_cast<std::int64_t>(c);

  std::set<SparseIntVec> rows;
  for (std::size_t a = 0; a < g.components().size(); ++a)
    for (std::size_t b = a; b < g.components().size(); ++b) {
      std::int64_t target = -1;
      for (std::uint32_t i : g.components()[a])
        for (std::uint32_t j : g.components()[b]) {
          if (a == b && j <= i) continue;
          for (std::uint32_t idx : basis.bracket_support(i, j)) {
            if (target == -1) target = owner[idx];
            if (owner[idx] != target)
              throw precondition_error(
                  "relations_from_grading: input is not a set grading");
          }
        }
      if (target == -1) continue;
      std::map<std::uint32_t, Int> row;
      row[static_cast<std::uint32_t>(a)] += 1;
      row[static_cast<std::uint32_t>(b)] += 1;
      row[static_cast<std::uint32_t>(target)] -= 1;
      SparseIntVec sparse;
      for (const auto& [idx, val] : row)
        if (val != 0) sparse.emplace_back(idx, val);
      if (!sparse.empty()) rows.insert(std::move(sparse));
    }
  AbelianPresentation p;
  p.generators = g.components().size();
  p.relations.assign(rows.begin(), rows.end());
  return p;
}

struct UniversalAbelianGroup {
  std::vector<Int> torsion;  // invariant factors > 1
  std::size_t free_rank = 0;
  std::vector<IntVec> images;  // canonical coordinates per generator:
                               // torsion coordinates first, then free ones

  std::vector<Int> moduli() const {
    std::vector<Int> m = torsion;
    m.resize(m.size() + free_rank, Int(0));
    return m;
  }
};

inline QuotientInvariants abelian_invariants(const AbelianPresentation& p) {
  HnfBuilder b(p.generators);
  for (const auto& row : p.relations) b.insert_sparse(row);
  IntMatrix h = b.finalize();
  if (h.rows() == 0) return {{}, p.generators};
  std::vector<Int> divisors = elementary_divisors(h);
  QuotientInvariants out;
  std::size_t nonzero = 0;
  for (Int& d : divisors)
    if (d != 0) {
      ++nonzero;
      if (d > 1) out.factors.push_back(std::move(d));
    }
  out.free_rank = p.generators - nonzero;
  return out;
}

// Images of the generators in the presented group.  With U R V = D in
// Smith form, the coordinate change x -> x V turns the relation lattice
// into <d_i e_i>, so generator g maps to row g of V, read modulo d_i on
// torsion coordinates and freely past the rank.
inline UniversalAbelianGroup generator_images(const AbelianPresentation& p) {
  HnfBuilder b(p.generators);
  for (const auto& row : p.relations) b.insert_sparse(row);
  IntMatrix h = b.finalize();

  UniversalAbelianGroup out;
  if (h.rows() == 0) {
    out.free_rank = p.generators;
    out.images.reserve(p.generators);
    for (std::size_t g = 0; g < p.generators; ++g) {
      IntVec img(p.generators, Int(0));
      img[g] = 1;
      out.images.push_back(std::move(img));
    }
    return out;
  }

  SmithDecomposition s = smith_normal_form(h);
  std::vector<Int> diag = s.diagonal();
  std::vector<std::size_t> torsion_cols;
  std::size_t rank = 0;
  for (std::size_t i = 0; i < diag.size(); ++i)
    if (diag[i] != 0) {
      ++rank;
      if (diag[i] > 1) {
        torsion_cols.push_back(i);
        out.torsion.push_back(diag[i]);
      }
    }
  out.free_rank = p.generators - rank;

  out.images.reserve(p.generators);
  for (std::size_t g = 0; g < p.generators; ++g) {
    IntVec img;
    img.reserve(torsion_cols.size() + out.free_rank);
    for (std::size_t t = 0; t < torsion_cols.size(); ++t) {
      Int x = s.v(g, torsion_cols[t]) % out.torsion[t];
      if (x < 0) x += out.torsion[t];
      img.push_back(std::move(x));
    }
    for (std::size_t j = rank; j < p.generators; ++j) img.push_back(s.v(g, j));
    out.images.push_back(std::move(img));
  }
  return out;
}

struct CollisionCertificate {
  std::uint32_t comp_a = 0, comp_b = 0;  // distinct components, equal images
  IntVec image;
};

struct RealizabilityResult {
  bool realizable = false;
  UniversalAbelianGroup group;
  std::optional<CollisionCertificate> collision;  // set when not realizable
  std::optional<GroupGrading> induced;            // set when realizable
};

// Lexicographically first collision pair, if any.
inline std::optional<CollisionCertificate> first_collision(
    const std::vector<IntVec>& images) {
  std::map<IntVec, std::vector<std::uint32_t>> groups;
  for (std::size_t g = 0; g < images.size(); ++g)
    groups[images[g]].push_back(static_cast<std::uint32_t>(g));
  std::optional<CollisionCertificate> best;
  for (const auto& [img, comps] : groups) {
    if (comps.size() < 2) continue;
    CollisionCertificate c{comps[0], comps[1], img};
    if (!best || c.comp_a < best->comp_a ||
        (c.comp_a == best->comp_a && c.comp_b < best->comp_b))
      best = std::move(c);
  }
  return best;
}

inline RealizabilityResult realizability_verdict(const SetGrading& g) {
  if (g.basis().rank() < 3)
    throw precondition_error(
        "realizability_verdict: so(2n) is simple only for n >= 3");
  AbelianPresentation p = relations_from_grading(g);
  RealizabilityResult out;
  out.group = generator_images(p);
  out.collision = first_collision(out.group.images);
  out.realizable = !out.collision.has_value();
  if (out.realizable) {
    out.induced = GroupGrading(g, out.group.moduli(), out.group.images);
    if (verify_group_grading(*out.induced))
      throw std::logic_error(
          "realizability_verdict: induced labeling failed verification");
  }
  return out;
}

}  // namespace orthograd
