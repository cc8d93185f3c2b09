#pragma once

// Gradings of so(2n) refining the eigenspace decomposition of sigma.
//
// The adapted basis keeps the Cartan h_1..h_n and replaces each pair
// x_a, x_{-a} by y+_a = x_a + sigma(x_a) and y-_a = x_a - sigma(x_a).
// Set gradings here are partitions of that basis into coordinate
// subspaces; group gradings additionally carry abelian-group labels.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "orthograd/designs.hpp"
#include "orthograd/liealg.hpp"

namespace orthograd {

inline std::string root_name(const Root& a) {
  std::ostringstream out;
  out << 'e' << a.i + 1 << (a.sj > 0 ? '+' : '-') << 'e' << a.j + 1;
  return out.str();
}

// Index layout: 0..n-1 the Cartan, then for the k-th positive root
// y+ at n+2k and y- at n+2k+1.
class AdaptedBasis {
 public:
  explicit AdaptedBasis(int n) : algebra_(n) {
    const std::size_t un = static_cast<std::size_t>(n);
    const std::size_t pos = algebra_.positive_count();
    vectors_.reserve(un + 2 * pos);
    for (std::size_t i = 0; i < un; ++i) vectors_.push_back(algebra_.element(i));
    for (std::size_t k = 0; k < pos; ++k) {
      const OrthoElement& x = algebra_.element(algebra_.x_index(k, false));
      const OrthoElement sx = sigma_auto(x);
      vectors_.push_back(x + sx);
      vectors_.push_back(x - sx);
    }
    build_table();
  }

  const AlgebraBasis& algebra() const { return algebra_; }
  const RootSystemD& roots() const { return algebra_.roots(); }
  int rank() const { return algebra_.rank(); }
  std::size_t dimension() const { return vectors_.size(); }

  std::size_t plus_index(std::size_t k) const {
    return static_cast<std::size_t>(rank()) + 2 * k;
  }
  std::size_t minus_index(std::size_t k) const { return plus_index(k) + 1; }
  bool is_cartan_index(std::size_t idx) const {
    return idx < static_cast<std::size_t>(rank());
  }
  bool is_plus_index(std::size_t idx) const {
    return !is_cartan_index(idx) && (idx - static_cast<std::size_t>(rank())) % 2 == 0;
  }
  std::size_t pos_root_of(std::size_t idx) const {
    return (idx - static_cast<std::size_t>(rank())) / 2;
  }

  const OrthoElement& vector(std::size_t idx) const { return vectors_[idx]; }

  std::string vector_name(std::size_t idx) const {
    if (is_cartan_index(idx)) return "h" + std::to_string(idx + 1);
    const Root& a = roots().positive_roots()[pos_root_of(idx)];
    return std::string(is_plus_index(idx) ? "y+(" : "y-(") + root_name(a) + ")";
  }

  SparseRat coordinates(const OrthoElement& x) const {
    SparseRat alg = algebra_.coordinates(x);
    const std::size_t un = static_cast<std::size_t>(rank());
    const std::size_t pos = algebra_.positive_count();
    SparseRat out;
    std::map<std::size_t, std::pair<Rat, Rat>> halves;  // k -> (x_a, x_{-a})
    for (auto& [idx, coef] : alg) {
      if (idx < un) {
        out.emplace_back(idx, coef);
      } else if (idx < un + pos) {
        halves[idx - un].first = coef;
      } else {
        halves[idx - un - pos].second = coef;
      }
    }
    for (auto& [k, ab] : halves) {
      Rat s(algebra_.sigma_sign(k));
      Rat plus = (ab.first + s * ab.second) / 2;
      Rat minus = (ab.first - s * ab.second) / 2;
      if (plus != 0) out.emplace_back(plus_index(k), plus);
      if (minus != 0) out.emplace_back(minus_index(k), minus);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  OrthoElement from_coordinates(const SparseRat& coords) const {
    OrthoElement acc = OrthoElement::zero(rank());
    for (const auto& [idx, coef] : coords) acc = combine(Rat(1), acc, coef, vectors_[idx]);
    return acc;
  }

  // Adapted-basis indices hit by [v_i, v_j]; empty when the bracket is 0.
  const std::vector<std::uint32_t>& bracket_support(std::size_t i, std::size_t j) const {
    static const std::vector<std::uint32_t> none;
    auto it = table_.find(key(std::min(i, j), std::max(i, j)));
    return it == table_.end() ? none : it->second.support;
  }

  // Full signed expansion of [v_i, v_j] in adapted coordinates.
  SparseRat bracket_expansion(std::size_t i, std::size_t j) const {
    auto it = table_.find(key(std::min(i, j), std::max(i, j)));
    if (it == table_.end()) return {};
    SparseRat out = it->second.expansion;
    if (i > j)
      for (auto& [idx, coef] : out) coef = -coef;
    return out;
  }

 private:
  struct TableEntry {
    std::vector<std::uint32_t> support;
    SparseRat expansion;
  };

  std::uint64_t key(std::size_t i, std::size_t j) const {
    return static_cast<std::uint64_t>(i) * dimension() + j;
  }

  // Only pairs that can interact are expanded: a Cartan element against a
  // root vector with a nonzero coordinate there, the y+/y- partners of one
  // root, or two root vectors with non-orthogonal roots.  Orthogonal
  // distinct roots give [y, y'] = 0 since neither the sum nor the
  // difference is a root.
  void build_table() {
    const std::size_t un = static_cast<std::size_t>(rank());
    const auto& pos = roots().positive_roots();
    const std::size_t dim = dimension();
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) {
        if (j < un) continue;  // Cartan x Cartan
        if (i < un) {
          const Root& a = pos[pos_root_of(j)];
          if (a.coords[i] == 0) continue;
        } else {
          std::size_t ki = pos_root_of(i), kj = pos_root_of(j);
          if (ki != kj && inner(pos[ki], pos[kj]) == 0) continue;
          if (ki == kj && is_plus_index(i) == is_plus_index(j)) continue;
        }
        OrthoElement br = bracket(vectors_[i], vectors_[j]);
        if (br.is_zero()) continue;
        TableEntry e;
        e.expansion = coordinates(br);
        e.support.reserve(e.expansion.size());
        for (const auto& [idx, coef] : e.expansion)
          e.support.push_back(static_cast<std::uint32_t>(idx));
        table_.emplace(key(i, j), std::move(e));
      }
  }

  AlgebraBasis algebra_;
  std::vector<OrthoElement> vectors_;
  std::unordered_map<std::uint64_t, TableEntry> table_;
};

class SetGrading {
 public:
  SetGrading(std::shared_ptr<const AdaptedBasis> basis,
             std::vector<std::vector<std::uint32_t>> components,
             std::vector<std::string> names = {})
      : basis_(std::move(basis)),
        components_(std::move(components)),
        names_(std::move(names)) {
    if (!basis_) throw precondition_error("SetGrading: missing basis");
    std::vector<bool> seen(basis_->dimension(), false);
    std::size_t covered = 0;
    for (const auto& comp : components_) {
      if (comp.empty()) throw precondition_error("SetGrading: empty component");
      for (std::uint32_t idx : comp) {
        if (idx >= basis_->dimension() || seen[idx])
          throw precondition_error("SetGrading: not a partition of the basis");
        seen[idx] = true;
        ++covered;
      }
    }
    if (covered != basis_->dimension())
      throw precondition_error("SetGrading: components do not cover the basis");
    if (!names_.empty() && names_.size() != components_.size())
      throw precondition_error("SetGrading: one name per component expected");
  }

  const AdaptedBasis& basis() const { return *basis_; }
  std::shared_ptr<const AdaptedBasis> shared_basis() const { return basis_; }
  const std::vector<std::vector<std::uint32_t>>& components() const {
    return components_;
  }
  std::size_t component_count() const { return components_.size(); }

  const std::string& name(std::size_t c) const {
    static const std::string empty;
    return names_.empty() ? empty : names_[c];
  }

  std::map<std::size_t, std::size_t> dimension_histogram() const {
    std::map<std::size_t, std::size_t> h;
    for (const auto& comp : components_) ++h[comp.size()];
    return h;
  }

  // Order-independent form for equality tests.
  std::vector<std::vector<std::uint32_t>> canonical_components() const {
    auto out = components_;
    for (auto& c : out) std::sort(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::shared_ptr<const AdaptedBasis> basis_;
  std::vector<std::vector<std::uint32_t>> components_;
  std::vector<std::string> names_;
};

// The six root pairs attached to a block {p1 < p2 < p3 < p4}: the three
// ways to split the block into two pairs give {e_i + e_j, e_k + e_l},
// followed by the difference counterparts {e_i - e_j, e_k - e_l}.
inline std::vector<std::array<Root, 2>> pairs_from_block(const RootSystemD& rs,
                                                         const std::array<int, 4>& blk) {
  auto mk = [&](int p, int q, int sign) {
    std::size_t i = static_cast<std::size_t>(p - 1), j = static_cast<std::size_t>(q - 1);
    const auto& pos = rs.positive_roots();
    return pos[rs.positive_index(std::min(i, j), std::max(i, j), sign > 0)];
  };
  const int a = blk[0], b = blk[1], c = blk[2], d = blk[3];
  std::vector<std::array<Root, 2>> out;
  out.push_back({mk(a, b, +1), mk(c, d, +1)});
  out.push_back({mk(a, c, +1), mk(b, d, +1)});
  out.push_back({mk(a, d, +1), mk(b, c, +1)});
  out.push_back({mk(a, b, -1), mk(c, d, -1)});
  out.push_back({mk(a, c, -1), mk(b, d, -1)});
  out.push_back({mk(a, d, -1), mk(b, c, -1)});
  return out;
}

// The set grading attached to an S(2,4,n): the Cartan is one component and
// every root pair of every block contributes a y+ and a y- component.
inline SetGrading grading_from_design(std::shared_ptr<const AdaptedBasis> basis,
                                      const Design& d) {
  if (!basis || basis->rank() != d.n)
    throw precondition_error("grading_from_design: basis rank must equal n");
  if (auto v = validate(d))
    throw precondition_error("grading_from_design: not a Steiner system: " +
                             v->describe());
  const RootSystemD& rs = basis->roots();
  std::vector<std::vector<std::uint32_t>> comps;
  std::vector<std::string> names;
  std::vector<std::uint32_t> cartan(static_cast<std::size_t>(d.n));
  for (std::size_t i = 0; i < cartan.size(); ++i)
    cartan[i] = static_cast<std::uint32_t>(i);
  comps.push_back(std::move(cartan));
  names.push_back("H");
  for (const auto& blk : d.blocks)
    for (const auto& pr : pairs_from_block(rs, blk)) {
      auto k1 = rs.classify(pr[0].coords)->first;
      auto k2 = rs.classify(pr[1].coords)->first;
      if (k1 > k2) std::swap(k1, k2);
      std::string tag = "(" + root_name(rs.positive_roots()[k1]) + "," +
                        root_name(rs.positive_roots()[k2]) + ")";
      comps.push_back({static_cast<std::uint32_t>(basis->plus_index(k1)),
                       static_cast<std::uint32_t>(basis->plus_index(k2))});
      names.push_back("+" + tag);
      comps.push_back({static_cast<std::uint32_t>(basis->minus_index(k1)),
                       static_cast<std::uint32_t>(basis->minus_index(k2))});
      names.push_back("-" + tag);
    }
  return SetGrading(std::move(basis), std::move(comps), std::move(names));
}

inline SetGrading grading_from_design(const Design& d) {
  return grading_from_design(std::make_shared<AdaptedBasis>(d.n), d);
}

struct SetGradingCounterexample {
  std::uint32_t comp_a = 0, comp_b = 0;  // bracketed pair of components
  std::uint32_t hit_c = 0, hit_d = 0;    // two distinct components met
  std::array<std::uint32_t, 2> witness_c{};  // basis pair whose bracket meets hit_c
  std::array<std::uint32_t, 2> witness_d{};

  std::string describe() const {
    std::ostringstream out;
    out << "[component " << comp_a << ", component " << comp_b
        << "] meets components " << hit_c << " and " << hit_d << " (witnesses ["
        << witness_c[0] << "," << witness_c[1] << "] and [" << witness_d[0] << ","
        << witness_d[1] << "])";
    return out.str();
  }
};

// Core sweep shared by the set- and group-grading verifiers and by the
// relation extraction: partition validity plus single-component targets.
template <typename SupportFn>
std::optional<SetGradingCounterexample> verify_partition(
    std::size_t dim, const std::vector<std::vector<std::uint32_t>>& components,
    SupportFn&& support) {
  std::vector<std::int64_t> owner(dim, -1);
  for (std::size_t c = 0; c < components.size(); ++c)
    for (std::uint32_t idx : components[c]) {
      if (idx >= dim || owner[idx] != -1)
        throw precondition_error("verify_partition: not a partition");
      owner[idx] = static_cast<std::int64_t>(c);
    }
  for (std::int64_t o : owner)
    if (o == -1) throw precondition_error("verify_partition: basis not covered");

  for (std::size_t a = 0; a < components.size(); ++a)
    for (std::size_t b = a; b < components.size(); ++b) {
      std::int64_t target = -1;
      std::array<std::uint32_t, 2> first_witness{};
      for (std::uint32_t i : components[a])
        for (std::uint32_t j : components[b]) {
          if (a == b && j <= i) continue;
          for (std::uint32_t idx : support(i, j)) {
            std::int64_t t = owner[idx];
            if (target == -1) {
              target = t;
              first_witness = {i, j};
            } else if (t != target) {
              SetGradingCounterexample ce;
              ce.comp_a = static_cast<std::uint32_t>(a);
              ce.comp_b = static_cast<std::uint32_t>(b);
              ce.hit_c = static_cast<std::uint32_t>(target);
              ce.hit_d = static_cast<std::uint32_t>(t);
              ce.witness_c = first_witness;
              ce.witness_d = {i, j};
              return ce;
            }
          }
        }
    }
  return std::nullopt;
}

inline std::optional<SetGradingCounterexample> verify_set_grading(const SetGrading& g) {
  const AdaptedBasis& basis = g.basis();
  return verify_partition(
      basis.dimension(), g.components(),
      [&](std::uint32_t i, std::uint32_t j) -> const std::vector<std::uint32_t>& {
        return basis.bracket_support(i, j);
      });
}

// Labels live in Z/d_1 x ... x Z/d_k x Z^f; moduli lists d_1..d_k then f
// zeros, and every label is stored reduced.
class GroupGrading {
 public:
  GroupGrading(SetGrading grading, std::vector<Int> moduli, std::vector<IntVec> labels)
      : grading_(std::move(grading)),
        moduli_(std::move(moduli)),
        labels_(std::move(labels)) {
    if (labels_.size() != grading_.component_count())
      throw precondition_error("GroupGrading: one label per component expected");
    for (const auto& l : labels_) {
      if (l.size() != moduli_.size())
        throw precondition_error("GroupGrading: label length mismatch");
      for (std::size_t k = 0; k < l.size(); ++k) {
        if (moduli_[k] < 0 || moduli_[k] == 1)
          throw precondition_error("GroupGrading: moduli must be 0 or >= 2");
        if (moduli_[k] != 0 && (l[k] < 0 || l[k] >= moduli_[k]))
          throw precondition_error("GroupGrading: label not reduced");
      }
    }
    for (std::size_t a = 0; a < labels_.size(); ++a)
      for (std::size_t b = a + 1; b < labels_.size(); ++b)
        if (labels_[a] == labels_[b])
          throw precondition_error("GroupGrading: duplicate component label");
  }

  const SetGrading& grading() const { return grading_; }
  const std::vector<Int>& moduli() const { return moduli_; }
  const std::vector<IntVec>& labels() const { return labels_; }

  IntVec add(const IntVec& x, const IntVec& y) const {
    IntVec out(moduli_.size());
    for (std::size_t k = 0; k < moduli_.size(); ++k) {
      out[k] = x[k] + y[k];
      if (moduli_[k] != 0) out[k] %= moduli_[k];
    }
    return out;
  }

  std::string label_string(std::size_t comp) const {
    std::ostringstream out;
    out << '(';
    for (std::size_t k = 0; k < labels_[comp].size(); ++k) {
      if (k) out << ',';
      out << labels_[comp][k];
    }
    out << ')';
    return out.str();
  }

 private:
  SetGrading grading_;
  std::vector<Int> moduli_;
  std::vector<IntVec> labels_;
};

struct GroupGradingCounterexample {
  enum class Kind { wrong_component, missing_component };
  Kind kind = Kind::wrong_component;
  std::uint32_t comp_a = 0, comp_b = 0;
  IntVec expected_label;
  std::uint32_t hit = 0;  // offending component (wrong_component only)
  std::array<std::uint32_t, 2> witness{};

  std::string describe() const {
    std::ostringstream out;
    out << "[component " << comp_a << ", component " << comp_b << "] ";
    if (kind == Kind::missing_component)
      out << "is nonzero but no component carries the sum label";
    else
      out << "meets component " << hit << ", which does not carry the sum label";
    out << " (witness [" << witness[0] << "," << witness[1] << "])";
    return out.str();
  }
};

inline std::optional<GroupGradingCounterexample> verify_group_grading(
    const GroupGrading& g) {
  const SetGrading& sg = g.grading();
  const AdaptedBasis& basis = sg.basis();
  std::map<IntVec, std::size_t> by_label;
  for (std::size_t c = 0; c < g.labels().size(); ++c) by_label[g.labels()[c]] = c;

  std::vector<std::int64_t> owner(basis.dimension(), -1);
  for (std::size_t c = 0; c < sg.components().size(); ++c)
    for (std::uint32_t idx : sg.components()[c]) owner[idx] = static_cast<std::int64_t>(c);

  for (std::size_t a = 0; a < sg.components().size(); ++a)
    for (std::size_t b = a; b < sg.components().size(); ++b) {
      IntVec want = g.add(g.labels()[a], g.labels()[b]);
      auto it = by_label.find(want);
      for (std::uint32_t i : sg.components()[a])
        for (std::uint32_t j : sg.components()[b]) {
          if (a == b && j <= i) continue;
          for (std::uint32_t idx : basis.bracket_support(i, j)) {
            GroupGradingCounterexample ce;
            ce.comp_a = static_cast<std::uint32_t>(a);
            ce.comp_b = static_cast<std::uint32_t>(b);
            ce.expected_label = want;
            ce.witness = {i, j};
            if (it == by_label.end()) {
              ce.kind = GroupGradingCounterexample::Kind::missing_component;
              return ce;
            }
            if (owner[idx] != static_cast<std::int64_t>(it->second)) {
              ce.kind = GroupGradingCounterexample::Kind::wrong_component;
              ce.hit = static_cast<std::uint32_t>(owner[idx]);
              return ce;
            }
          }
        }
    }
  return std::nullopt;
}

// The grading by (Q/E) x Z/2 for a subgroup 2Q <= E <= Q: cosets split the
// root pairs, sigma-parity splits each coset into y+ and y- halves, and the
// Cartan joins the (E, odd) component.
inline GroupGrading grading_from_subgroup(std::shared_ptr<const AdaptedBasis> basis,
                                          const Lattice& e) {
  if (!basis) throw precondition_error("grading_from_subgroup: missing basis");
  const int n = basis->rank();
  const Lattice q = root_lattice(n);
  const Lattice twoq = doubled_root_lattice(n);
  if (!q.contains_lattice(e) || !e.contains_lattice(twoq))
    throw precondition_error("grading_from_subgroup: need 2Q <= E <= Q");

  QuotientMap qm(e, q);
  if (qm.free_rank() != 0)
    throw std::logic_error("grading_from_subgroup: Q/E must be finite");

  const auto& pos = basis->roots().positive_roots();
  std::map<IntVec, std::vector<std::size_t>> cosets;  // image -> positive roots
  for (std::size_t k = 0; k < pos.size(); ++k)
    cosets[qm.image(to_intvec(pos[k].coords))].push_back(k);
  IntVec zero(qm.torsion().size(), Int(0));
  cosets[zero];  // the Cartan lives here even when no root does

  std::vector<Int> moduli = qm.torsion();
  moduli.push_back(2);

  std::vector<std::vector<std::uint32_t>> comps;
  std::vector<IntVec> labels;
  std::vector<std::string> names;
  auto coset_name = [](const IntVec& img) {
    std::ostringstream out;
    out << "coset(";
    for (std::size_t k = 0; k < img.size(); ++k) {
      if (k) out << ',';
      out << img[k];
    }
    out << ')';
    return out.str();
  };
  for (const auto& [img, members] : cosets) {
    IntVec plus_label = img, minus_label = img;
    plus_label.push_back(0);
    minus_label.push_back(1);
    std::vector<std::uint32_t> plus, minus;
    if (img == zero)
      for (int i = 0; i < n; ++i) minus.push_back(static_cast<std::uint32_t>(i));
    for (std::size_t k : members) {
      plus.push_back(static_cast<std::uint32_t>(basis->plus_index(k)));
      minus.push_back(static_cast<std::uint32_t>(basis->minus_index(k)));
    }
    if (!plus.empty()) {
      comps.push_back(std::move(plus));
      labels.push_back(std::move(plus_label));
      names.push_back(coset_name(img) + "+");
    }
    if (!minus.empty()) {
      comps.push_back(std::move(minus));
      labels.push_back(std::move(minus_label));
      names.push_back(coset_name(img) + "-");
    }
  }
  SetGrading sg(std::move(basis), std::move(comps), std::move(names));
  return GroupGrading(std::move(sg), std::move(moduli), std::move(labels));
}

// E?: the subgroup of E generated by 2Q, the positive roots inside E, and
// the differences of positive roots inside E.
inline Lattice ecirc(int n, const Lattice& e) {
  const Lattice q = root_lattice(n);
  const Lattice twoq = doubled_root_lattice(n);
  if (!q.contains_lattice(e) || !e.contains_lattice(twoq))
    throw precondition_error("ecirc: need 2Q <= E <= Q");
  RootSystemD rs(n);
  HnfBuilder b(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < twoq.rank(); ++i) b.insert(twoq.basis().row(i));
  const auto& pos = rs.positive_roots();
  for (const Root& a : pos) {
    IntVec v = to_intvec(a.coords);
    if (e.contains(v)) b.insert(std::move(v));
  }
  for (std::size_t k = 0; k < pos.size(); ++k)
    for (std::size_t l = k + 1; l < pos.size(); ++l) {
      IntVec diff(static_cast<std::size_t>(n));
      for (std::size_t t = 0; t < diff.size(); ++t)
        diff[t] = pos[k].coords[t] - pos[l].coords[t];
      if (e.contains(diff)) b.insert(std::move(diff));
    }
  return Lattice::from_builder(b, static_cast<std::size_t>(n));
}

// The same subgroup recovered from a grading: 2Q, the roots whose y- sits
// with the Cartan, and differences of equal-sign roots sharing a component.
inline Lattice e_from_grading(const SetGrading& g) {
  const AdaptedBasis& basis = g.basis();
  const int n = basis.rank();
  const auto& pos = basis.roots().positive_roots();
  HnfBuilder b(static_cast<std::size_t>(n));
  const Lattice twoq = doubled_root_lattice(n);
  for (std::size_t i = 0; i < twoq.rank(); ++i) b.insert(twoq.basis().row(i));

  std::int64_t cartan_comp = -1;
  for (std::size_t c = 0; c < g.components().size() && cartan_comp < 0; ++c)
    for (std::uint32_t idx : g.components()[c])
      if (basis.is_cartan_index(idx)) {
        cartan_comp = static_cast<std::int64_t>(c);
        break;
      }

  for (std::size_t c = 0; c < g.components().size(); ++c) {
    std::vector<std::size_t> plus, minus;
    for (std::uint32_t idx : g.components()[c]) {
      if (basis.is_cartan_index(idx)) continue;
      (basis.is_plus_index(idx) ? plus : minus).push_back(basis.pos_root_of(idx));
    }
    if (static_cast<std::int64_t>(c) == cartan_comp)
      for (std::size_t k : minus) b.insert(to_intvec(pos[k].coords));
    for (const auto* side : {&plus, &minus}) {
      for (std::size_t t = 1; t < side->size(); ++t) {
        IntVec diff(static_cast<std::size_t>(n));
        for (std::size_t m = 0; m < diff.size(); ++m)
          diff[m] = pos[(*side)[0]].coords[m] - pos[(*side)[t]].coords[m];
        b.insert(std::move(diff));
      }
    }
  }
  return Lattice::from_builder(b, static_cast<std::size_t>(n));
}

// Explicit generators for the same subgroup when the grading comes from a
// design: the doubled simple roots followed by one 0/1 indicator row per
// block (the four-point sums).  Modulo 2Q every equal-sign difference of a
// block's root pairs equals the block sum, so these rows span the lattice
// that e_from_grading recovers.
inline std::vector<IntVec> design_subgroup_rows(const Design& d) {
  const RootSystemD rs(d.n);
  std::vector<IntVec> rows;
  rows.reserve(static_cast<std::size_t>(d.n) + d.blocks.size());
  for (const Root& a : rs.simple_roots()) {
    IntVec r = to_intvec(a.coords);
    for (Int& x : r) x *= 2;
    rows.push_back(std::move(r));
  }
  for (const auto& blk : d.blocks) {
    IntVec r(static_cast<std::size_t>(d.n));
    for (int p : blk) r[static_cast<std::size_t>(p - 1)] = 1;
    rows.push_back(std::move(r));
  }
  return rows;
}

// Invariant factors of (Q / e_from_grading) x Z/2, the grading's diagonal
// group.  Requires the Cartan to sit inside one component.
inline std::vector<Int> diag_invariants(const SetGrading& g) {
  const AdaptedBasis& basis = g.basis();
  std::int64_t cartan_comp = -1;
  for (std::size_t c = 0; c < g.components().size(); ++c)
    for (std::uint32_t idx : g.components()[c])
      if (basis.is_cartan_index(idx)) {
        if (cartan_comp >= 0 && cartan_comp != static_cast<std::int64_t>(c))
          throw precondition_error("diag_invariants: Cartan split across components");
        cartan_comp = static_cast<std::int64_t>(c);
      }

  Lattice e = e_from_grading(g);
  QuotientInvariants qi = quotient_invariants(e, root_lattice(basis.rank()));
  if (!qi.is_finite())
    throw std::logic_error("diag_invariants: Q/E unexpectedly infinite");
  IntMatrix diag(qi.factors.size() + 1, qi.factors.size() + 1);
  for (std::size_t i = 0; i < qi.factors.size(); ++i) diag(i, i) = qi.factors[i];
  diag(qi.factors.size(), qi.factors.size()) = 2;
  std::vector<Int> out;
  for (Int& d : elementary_divisors(diag))
    if (d > 1) out.push_back(std::move(d));
  return out;
}

// Signs by which phi scales each component, or nullopt when phi fails to
// act as a single +-1 on some component's basis vectors.
inline std::optional<std::vector<int>> component_scalar_action(
    const SetGrading& g, const std::function<OrthoElement(const OrthoElement&)>& phi) {
  const AdaptedBasis& basis = g.basis();
  std::vector<int> signs;
  signs.reserve(g.component_count());
  for (const auto& comp : g.components()) {
    int sign = 0;
    for (std::uint32_t idx : comp) {
      const OrthoElement& v = basis.vector(idx);
      OrthoElement w = phi(v);
      int s;
      if (w == v)
        s = 1;
      else if (w == Rat(-1) * v)
        s = -1;
      else
        return std::nullopt;
      if (sign == 0) sign = s;
      if (s != sign) return std::nullopt;
    }
    signs.push_back(sign);
  }
  return signs;
}

}  // namespace orthograd
