#pragma once

// Report plumbing shared by the command line tool and its tests: stable
// JSON builders (exact integers rendered as decimal strings), FNV-1a file
// digests, and the subgroup input format.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "orthograd/designs.hpp"
#include "orthograd/gradings.hpp"
#include "orthograd/unigroup.hpp"

namespace orthograd {

using json = nlohmann::json;

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string fnv1a64_hex(std::string_view s) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(s);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

inline json int_json(const Int& v) { return v.str(); }

inline json ivec_json(const IntVec& v) {
  json out = json::array();
  for (const Int& x : v) out.push_back(int_json(x));
  return out;
}

inline json ivec_list_json(const std::vector<IntVec>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(ivec_json(r));
  return out;
}

inline json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline json design_json(const Design& d) {
  json blocks = json::array();
  for (const auto& blk : d.blocks) blocks.push_back(json{blk[0], blk[1], blk[2], blk[3]});
  return json{{"n", d.n}, {"blocks", std::move(blocks)}};
}

inline json family_json(const DifferenceFamily& f) {
  json blocks = json::array();
  for (const auto& blk : f.base_blocks)
    blocks.push_back(json{blk[0], blk[1], blk[2], blk[3]});
  return json{{"group", f.group},
              {"group_name", AbelianGroup(f.group).name()},
              {"base_blocks", std::move(blocks)}};
}

inline json design_violation_json(const DesignViolation& v) {
  json out{{"description", v.describe()}};
  switch (v.kind) {
    case DesignViolationKind::block_count:
      out["kind"] = "block_count";
      out["blocks"] = v.actual_blocks;
      break;
    case DesignViolationKind::pair_uncovered:
      out["kind"] = "pair_uncovered";
      out["pair"] = json{v.p, v.q};
      break;
    case DesignViolationKind::pair_multiple:
      out["kind"] = "pair_multiple";
      out["pair"] = json{v.p, v.q};
      out["covering_blocks"] = v.covering_blocks;
      break;
  }
  return out;
}

inline json histogram_json(const std::map<std::size_t, std::size_t>& h) {
  json out = json::object();
  for (const auto& [dim, count] : h) out[std::to_string(dim)] = count;
  return out;
}

inline json set_counterexample_json(const SetGradingCounterexample& ce,
                                    const SetGrading& g) {
  return json{{"comp_a", ce.comp_a},
              {"comp_b", ce.comp_b},
              {"hit_c", ce.hit_c},
              {"hit_d", ce.hit_d},
              {"witness_c", json{ce.witness_c[0], ce.witness_c[1]}},
              {"witness_d", json{ce.witness_d[0], ce.witness_d[1]}},
              {"names",
               json{{"comp_a", g.name(ce.comp_a)},
                    {"comp_b", g.name(ce.comp_b)},
                    {"hit_c", g.name(ce.hit_c)},
                    {"hit_d", g.name(ce.hit_d)}}},
              {"description", ce.describe()}};
}

inline json group_counterexample_json(const GroupGradingCounterexample& ce) {
  json out{{"comp_a", ce.comp_a},
           {"comp_b", ce.comp_b},
           {"expected_label", ivec_json(ce.expected_label)},
           {"witness", json{ce.witness[0], ce.witness[1]}},
           {"description", ce.describe()}};
  out["kind"] = ce.kind == GroupGradingCounterexample::Kind::missing_component
                    ? "missing_component"
                    : "wrong_component";
  if (ce.kind == GroupGradingCounterexample::Kind::wrong_component) out["hit"] = ce.hit;
  return out;
}

inline json universal_group_json(const UniversalAbelianGroup& u, bool with_images) {
  json out{{"free_rank", u.free_rank}, {"torsion", json::array()}};
  for (const Int& t : u.torsion) out["torsion"].push_back(int_json(t));
  if (with_images) out["images"] = ivec_list_json(u.images);
  return out;
}

inline json collision_json(const CollisionCertificate& c, const SetGrading& g) {
  return json{{"comp_a", c.comp_a},
              {"comp_b", c.comp_b},
              {"image", ivec_json(c.image)},
              {"names", json{{"comp_a", g.name(c.comp_a)}, {"comp_b", g.name(c.comp_b)}}}};
}

// Subgroup file: '#' comments and blank lines ignored, first content line
// n, then generator rows in the epsilon coordinates; the subgroup is 2Q
// plus the span of the rows.  Rows must have even coordinate sum.
struct SubgroupInput {
  int n = 0;
  std::vector<IntVec> rows;
};

inline SubgroupInput parse_subgroup(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  SubgroupInput s;
  bool have_n = false;
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
        s.n = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw input_error("subgroup file: bad rank '" + tok + "' at line " +
                          std::to_string(lineno));
      }
      if (s.n < 2)
        throw input_error("subgroup file: rank must be at least 2 at line " +
                          std::to_string(lineno));
      if (row >> tok)
        throw input_error("subgroup file: trailing token at line " + std::to_string(lineno));
      have_n = true;
      continue;
    }
    IntVec v;
    v.reserve(static_cast<std::size_t>(s.n));
    Int sum = 0;
    do {
      Int x;
      try {
        x = Int(tok);
      } catch (const std::exception&) {
        throw input_error("subgroup file: bad integer '" + tok + "' at line " +
                          std::to_string(lineno));
      }
      sum += x;
      v.push_back(std::move(x));
    } while (row >> tok);
    if (v.size() != static_cast<std::size_t>(s.n))
      throw input_error("subgroup file: expected " + std::to_string(s.n) +
                        " coordinates at line " + std::to_string(lineno));
    if (sum % 2 != 0)
      throw input_error("subgroup file: row with odd coordinate sum (outside Q) at line " +
                        std::to_string(lineno));
    s.rows.push_back(std::move(v));
  }
  if (!have_n) throw input_error("subgroup file: missing rank line");
  return s;
}

inline Lattice subgroup_lattice(const SubgroupInput& s) {
  Lattice twoq = doubled_root_lattice(s.n);
  HnfBuilder b(static_cast<std::size_t>(s.n));
  for (std::size_t i = 0; i < twoq.rank(); ++i) b.insert(twoq.basis().row(i));
  for (const auto& r : s.rows) b.insert(r);
  return Lattice::from_builder(b, static_cast<std::size_t>(s.n));
}

inline json lattice_json(const Lattice& l) {
  return json{{"ambient_rank", l.ambient_rank()},
              {"rank", l.rank()},
              {"basis", matrix_json(l.basis())}};
}

}  // namespace orthograd
