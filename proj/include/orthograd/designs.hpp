#pragma once

// Steiner systems S(2,4,n): every pair of points lies in exactly one
// 4-element block.  Points are 1-based, blocks strictly increasing.

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "orthograd/common.hpp"

namespace orthograd {

struct Design {
  int n = 0;
  std::vector<std::array<int, 4>> blocks;

  bool operator==(const Design&) const = default;
};

// Existence condition for S(2,4,n).
inline bool admissible(int n) {
  if (n < 1) throw precondition_error("admissible: n must be positive");
  return n % 12 == 1 || n % 12 == 4;
}

enum class DesignViolationKind { block_count, pair_uncovered, pair_multiple };

struct DesignViolation {
  DesignViolationKind kind = DesignViolationKind::block_count;
  int n = 0;
  std::size_t actual_blocks = 0;
  int p = 0, q = 0;                          // offending pair
  std::vector<std::size_t> covering_blocks;  // 0-based block positions

  std::string describe() const {
    std::ostringstream out;
    switch (kind) {
      case DesignViolationKind::block_count:
        out << "block count " << actual_blocks << " does not satisfy 12*b = n*(n-1) = "
            << static_cast<long long>(n) * (n - 1);
        break;
      case DesignViolationKind::pair_uncovered:
        out << "pair {" << p << "," << q << "} is covered by no block";
        break;
      case DesignViolationKind::pair_multiple:
        out << "pair {" << p << "," << q << "} is covered by blocks";
        for (std::size_t b : covering_blocks) out << ' ' << b + 1;
        break;
    }
    return out.str();
  }
};

// Structural checks first (throwing input_error for malformed data), then
// the covering property; nullopt means the design is a valid S(2,4,n).
inline std::optional<DesignViolation> validate(const Design& d) {
  if (d.n < 1) throw input_error("design: point count must be positive");
  for (std::size_t b = 0; b < d.blocks.size(); ++b)
    for (std::size_t k = 0; k < 4; ++k) {
      int v = d.blocks[b][k];
      if (v < 1 || v > d.n)
        throw input_error("design: block " + std::to_string(b + 1) + " has point " +
                          std::to_string(v) + " outside 1.." + std::to_string(d.n));
      if (k > 0 && d.blocks[b][k - 1] >= v)
        throw input_error("design: block " + std::to_string(b + 1) +
                          " is not strictly increasing");
    }

  const long long pair_total = static_cast<long long>(d.n) * (d.n - 1);
  if (12 * static_cast<long long>(d.blocks.size()) != pair_total) {
    DesignViolation v;
    v.kind = DesignViolationKind::block_count;
    v.n = d.n;
    v.actual_blocks = d.blocks.size();
    return v;
  }

  const std::size_t un = static_cast<std::size_t>(d.n);
  std::vector<std::uint32_t> cover(un * un, 0);
  auto slot = [&](int a, int b) { return static_cast<std::size_t>(a - 1) * un + static_cast<std::size_t>(b - 1); };
  for (const auto& blk : d.blocks)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) ++cover[slot(blk[i], blk[j])];

  for (int p = 1; p <= d.n; ++p)
    for (int q = p + 1; q <= d.n; ++q) {
      std::uint32_t c = cover[slot(p, q)];
      if (c == 1) continue;
      DesignViolation v;
      v.kind = c == 0 ? DesignViolationKind::pair_uncovered
                      : DesignViolationKind::pair_multiple;
      v.n = d.n;
      v.actual_blocks = d.blocks.size();
      v.p = p;
      v.q = q;
      if (c > 1)
        for (std::size_t b = 0; b < d.blocks.size(); ++b) {
          const auto& blk = d.blocks[b];
          bool hp = false, hq = false;
          for (int x : blk) {
            hp |= x == p;
            hq |= x == q;
          }
          if (hp && hq) v.covering_blocks.push_back(b);
        }
      return v;
    }
  return std::nullopt;
}

// The projective plane of order 3: the unique S(2,4,13), in the classical
// labeling with the four lines through point 1 listed first.
inline Design pg2_f3() {
  return Design{13,
                {{1, 2, 3, 4},
                 {1, 5, 6, 7},
                 {1, 8, 9, 10},
                 {1, 11, 12, 13},
                 {2, 5, 8, 11},
                 {2, 6, 9, 12},
                 {2, 7, 10, 13},
                 {3, 5, 9, 13},
                 {3, 6, 10, 11},
                 {3, 7, 8, 12},
                 {4, 5, 10, 12},
                 {4, 6, 8, 13},
                 {4, 7, 9, 11}}};
}

// Finite abelian group Z_{f1} x Z_{f2} x ... with elements encoded as the
// integers 0..order-1 in mixed radix, first factor least significant.  A
// single factor n gives the residues mod n with their usual encoding.
class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
    if (factors_.empty())
      throw precondition_error("group: needs at least one cyclic factor");
    long long o = 1;
    for (int f : factors_) {
      if (f < 2) throw precondition_error("group: cyclic factors must be at least 2");
      o *= f;
      if (o > (1 << 28)) throw precondition_error("group: order too large");
    }
    order_ = static_cast<int>(o);
  }

  int order() const { return order_; }
  const std::vector<int>& factors() const { return factors_; }

  int add(int x, int y) const {
    int out = 0, scale = 1;
    for (int f : factors_) {
      out += (x % f + y % f) % f * scale;
      x /= f;
      y /= f;
      scale *= f;
    }
    return out;
  }

  int neg(int x) const {
    int out = 0, scale = 1;
    for (int f : factors_) {
      out += (f - x % f) % f * scale;
      x /= f;
      scale *= f;
    }
    return out;
  }

  int sub(int x, int y) const { return add(x, neg(y)); }

  std::string name() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) out << " x ";
      out << 'Z' << factors_[i];
    }
    return out.str();
  }

 private:
  std::vector<int> factors_;
  int order_ = 0;
};

// The abelian groups of order n, one per isomorphism class, as invariant
// factor lists (descending, each factor divisible by the next).  Z_n comes
// first and the elementary abelian group, when it exists, last.
inline std::vector<std::vector<int>> abelian_group_factorizations(int n) {
  if (n < 2)
    throw precondition_error("group factorizations: n must be at least 2");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rem, int prev) {
    if (rem == 1) {
      out.push_back(cur);
      return;
    }
    for (int d = std::min(rem, prev); d >= 2; --d) {
      if (rem % d != 0 || prev % d != 0) continue;
      cur.push_back(d);
      rec(rem / d, d);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

// Base blocks over an abelian group of order n; every nonzero element must
// arise exactly once as a difference of two block entries.  Developing by
// all n translations then yields an S(2,4,n) on the points 1..n.
struct DifferenceFamily {
  std::vector<int> group;  // cyclic factor orders
  std::vector<std::array<int, 4>> base_blocks;

  bool operator==(const DifferenceFamily&) const = default;
};

inline Design develop_difference_family(const AbelianGroup& g,
                                        const std::vector<std::array<int, 4>>& base) {
  const int n = g.order();
  if (n < 5) throw precondition_error("develop: group order must be at least 5");
  std::vector<std::uint32_t> used(static_cast<std::size_t>(n), 0);
  for (const auto& blk : base) {
    for (int x : blk)
      if (x < 0 || x >= n)
        throw input_error("develop: element " + std::to_string(x) + " outside 0.." +
                          std::to_string(n - 1));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        if (i == j) continue;
        int diff = g.sub(blk[i], blk[j]);
        if (diff == 0)
          throw input_error("develop: repeated element inside a base block");
        ++used[static_cast<std::size_t>(diff)];
      }
  }
  for (int r = 1; r < n; ++r)
    if (used[static_cast<std::size_t>(r)] != 1)
      throw input_error("develop: difference " + std::to_string(r) + " arises " +
                        std::to_string(used[static_cast<std::size_t>(r)]) +
                        " times, expected once");

  std::vector<std::array<int, 4>> blocks;
  blocks.reserve(base.size() * static_cast<std::size_t>(n));
  for (const auto& blk : base)
    for (int t = 0; t < n; ++t) {
      std::array<int, 4> b;
      for (std::size_t k = 0; k < 4; ++k) b[k] = g.add(blk[k], t) + 1;
      std::sort(b.begin(), b.end());
      blocks.push_back(b);
    }
  std::sort(blocks.begin(), blocks.end());
  Design d{n, std::move(blocks)};
  if (validate(d)) throw std::logic_error("develop: coverage check missed a defect");
  return d;
}

inline Design develop_difference_family(int n,
                                        const std::vector<std::array<int, 4>>& base) {
  return develop_difference_family(AbelianGroup({n}), base);
}

inline Design develop_difference_family(const DifferenceFamily& f) {
  return develop_difference_family(AbelianGroup(f.group), f.base_blocks);
}

// Deterministic search for a difference family with (n-1)/12 base blocks.
// Groups of order n are tried in the abelian_group_factorizations order, so
// a cyclic family is preferred when one exists; within a group the blocks
// are found by lexicographic backtracking, each normalized to start at 0.
// No cyclic family exists for n = 25, where the search settles on Z5 x Z5.
inline std::optional<DifferenceFamily> search_base_blocks(int n) {
  if (n < 13 || n % 12 != 1)
    throw precondition_error("search_base_blocks: need n = 1 (mod 12), n >= 13");
  const std::size_t want = static_cast<std::size_t>((n - 1) / 12);

  for (const auto& factors : abelian_group_factorizations(n)) {
    const AbelianGroup g(factors);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::vector<std::array<int, 4>> out;

    auto mark = [&](const std::array<int, 4>& blk, bool on) {
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          if (i != j) used[static_cast<std::size_t>(g.sub(blk[i], blk[j]))] = on;
    };
    auto usable = [&](const std::array<int, 4>& blk) {
      std::array<int, 12> ds;
      std::size_t t = 0;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
          if (i == j) continue;
          int d = g.sub(blk[i], blk[j]);
          if (used[static_cast<std::size_t>(d)]) return false;
          ds[t++] = d;
        }
      std::sort(ds.begin(), ds.end());
      return std::adjacent_find(ds.begin(), ds.end()) == ds.end();
    };

    std::function<bool(std::array<int, 4>)> rec = [&](std::array<int, 4> min_blk) {
      if (out.size() == want) return true;
      for (int a = min_blk[1]; a < n; ++a)
        for (int b = (a == min_blk[1] ? min_blk[2] : a + 1); b < n; ++b)
          for (int c = (a == min_blk[1] && b == min_blk[2] ? min_blk[3] : b + 1); c < n;
               ++c) {
            std::array<int, 4> blk{0, a, b, c};
            if (!usable(blk)) continue;
            mark(blk, true);
            out.push_back(blk);
            // next block must be lexicographically larger
            if (rec({0, a, b, c + 1})) return true;
            out.pop_back();
            mark(blk, false);
          }
      return false;
    };

    if (rec({0, 1, 2, 3})) return DifferenceFamily{factors, std::move(out)};
  }
  return std::nullopt;
}

// File format: '#' comments and blank lines ignored; first content line is
// n, then one block of four increasing points per line.
inline Design parse_design(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  Design d;
  bool have_n = false;
  std::set<std::array<int, 4>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string tok;
    if (!(row >> tok)) continue;
    if (!have_n) {
      try {
        std::size_t used = 0;
        d.n = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw input_error("design file: bad point count '" + tok + "' at line " +
                          std::to_string(lineno));
      }
      if (d.n < 1)
        throw input_error("design file: point count must be positive at line " +
                          std::to_string(lineno));
      if (row >> tok)
        throw input_error("design file: trailing token '" + tok + "' at line " +
                          std::to_string(lineno));
      have_n = true;
      continue;
    }
    std::array<int, 4> blk;
    for (std::size_t k = 0; k < 4; ++k) {
      if (k > 0 && !(row >> tok))
        throw input_error("design file: block needs 4 points at line " +
                          std::to_string(lineno));
      try {
        std::size_t used = 0;
        blk[k] = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw input_error("design file: bad point '" + tok + "' at line " +
                          std::to_string(lineno));
      }
      if (blk[k] < 1 || blk[k] > d.n)
        throw input_error("design file: point " + std::to_string(blk[k]) +
                          " outside 1.." + std::to_string(d.n) + " at line " +
                          std::to_string(lineno));
      if (k > 0 && blk[k - 1] >= blk[k])
        throw input_error("design file: block not strictly increasing at line " +
                          std::to_string(lineno));
    }
    if (row >> tok)
      throw input_error("design file: trailing token '" + tok + "' at line " +
                        std::to_string(lineno));
    if (!seen.insert(blk).second)
      throw input_error("design file: duplicate block at line " + std::to_string(lineno));
    d.blocks.push_back(blk);
  }
  if (!have_n) throw input_error("design file: missing point count line");
  return d;
}

inline std::string write_design(const Design& d) {
  std::ostringstream out;
  out << d.n << '\n';
  for (const auto& blk : d.blocks)
    out << blk[0] << ' ' << blk[1] << ' ' << blk[2] << ' ' << blk[3] << '\n';
  return out.str();
}

}  // namespace orthograd
