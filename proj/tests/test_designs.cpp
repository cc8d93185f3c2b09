#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "orthograd/designs.hpp"

using namespace orthograd;
using Catch::Matchers::ContainsSubstring;

namespace {

// independent verdict by raw pair counting
std::map<std::pair<int, int>, int> pair_counts(const Design& d) {
  std::map<std::pair<int, int>, int> c;
  for (const auto& blk : d.blocks)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j)
        ++c[{std::min(blk[i], blk[j]), std::max(blk[i], blk[j])}];
  return c;
}

bool oracle_valid(const Design& d) {
  auto c = pair_counts(d);
  long long covered = 0;
  for (const auto& [pq, k] : c) {
    if (k != 1) return false;
    ++covered;
  }
  return covered == static_cast<long long>(d.n) * (d.n - 1) / 2;
}

std::array<int, 4> random_block(std::mt19937& rng, int n) {
  std::vector<int> pts(static_cast<std::size_t>(n));
  std::iota(pts.begin(), pts.end(), 1);
  std::shuffle(pts.begin(), pts.end(), rng);
  std::array<int, 4> blk{pts[0], pts[1], pts[2], pts[3]};
  std::sort(blk.begin(), blk.end());
  return blk;
}

}  // namespace

TEST_CASE("the projective plane of order 3 is a valid design", "[designs]") {
  Design d = pg2_f3();
  REQUIRE(d.n == 13);
  REQUIRE(d.blocks.size() == 13);
  CHECK(d.blocks[0] == std::array<int, 4>{1, 2, 3, 4});
  CHECK(d.blocks[4] == std::array<int, 4>{2, 5, 8, 11});
  CHECK(d.blocks[12] == std::array<int, 4>{4, 7, 9, 11});

  // the four lines through point 1 come first
  for (std::size_t b = 0; b < 4; ++b) CHECK(d.blocks[b][0] == 1);

  // every point lies on exactly 4 lines, every line pair meets in one point
  std::map<int, int> degree;
  for (const auto& blk : d.blocks)
    for (int p : blk) ++degree[p];
  for (int p = 1; p <= 13; ++p) CHECK(degree[p] == 4);
  for (std::size_t a = 0; a < 13; ++a)
    for (std::size_t b = a + 1; b < 13; ++b) {
      int common = 0;
      for (int p : d.blocks[a])
        for (int q : d.blocks[b]) common += p == q;
      CHECK(common == 1);
    }

  CHECK(!validate(d));
  CHECK(oracle_valid(d));
}

TEST_CASE("admissibility follows the arithmetic condition", "[designs]") {
  CHECK(admissible(1));
  CHECK(admissible(4));
  CHECK(admissible(13));
  CHECK(admissible(16));
  CHECK(admissible(25));
  CHECK(admissible(28));
  CHECK(admissible(37));
  CHECK(!admissible(5));
  CHECK(!admissible(12));
  CHECK(!admissible(14));
  CHECK(!admissible(24));
  CHECK_THROWS_AS(admissible(0), precondition_error);
  CHECK_THROWS_AS(admissible(-7), precondition_error);
}

TEST_CASE("validator flags the lexicographically first defect", "[designs]") {
  const Design good = pg2_f3();

  SECTION("removed block changes the count") {
    Design d = good;
    d.blocks.pop_back();
    auto v = validate(d);
    REQUIRE(v);
    CHECK(v->kind == DesignViolationKind::block_count);
    CHECK(v->actual_blocks == 12);
    CHECK_THAT(v->describe(), ContainsSubstring("block count 12"));
  }

  SECTION("replacing a block by a copy double-covers a pair") {
    Design d = good;
    d.blocks[12] = d.blocks[4];  // second copy of {2,5,8,11}
    auto v = validate(d);
    REQUIRE(v);
    CHECK(v->kind == DesignViolationKind::pair_multiple);
    CHECK(v->p == 2);
    CHECK(v->q == 5);
    CHECK(v->covering_blocks == std::vector<std::size_t>{4, 12});
    CHECK_THAT(v->describe(), ContainsSubstring("blocks 5 13"));
  }

  SECTION("swapping a block leaves a pair uncovered") {
    Design d = good;
    d.blocks[12] = {5, 6, 8, 9};  // was {4,7,9,11}
    auto v = validate(d);
    REQUIRE(v);
    // (4,7) is uncovered and precedes the first double-covered pair (5,6)
    CHECK(v->kind == DesignViolationKind::pair_uncovered);
    CHECK(v->p == 4);
    CHECK(v->q == 7);
    CHECK_THAT(v->describe(), ContainsSubstring("{4,7}"));
  }

  SECTION("malformed blocks are structural errors, not violations") {
    Design d = good;
    d.blocks[3] = {1, 11, 13, 14};
    CHECK_THROWS_WITH(validate(d), ContainsSubstring("outside 1..13"));
    d.blocks[3] = {1, 11, 11, 13};
    CHECK_THROWS_WITH(validate(d), ContainsSubstring("not strictly increasing"));
    CHECK_THROWS_AS(validate(Design{0, {}}), input_error);
  }
}

TEST_CASE("validator agrees with pair counting on random mutations",
          "[designs][property]") {
  std::mt19937 rng(52815);
  const Design base13 = pg2_f3();
  const Design base25 = develop_difference_family(
      AbelianGroup({5, 5}), {{0, 1, 5, 12}, {0, 2, 8, 17}});

  std::uniform_int_distribution<int> mode(0, 3);
  for (int trial = 0; trial < 150; ++trial) {
    Design d = trial % 2 == 0 ? base13 : base25;
    std::uniform_int_distribution<std::size_t> pb(0, d.blocks.size() - 1);
    switch (mode(rng)) {
      case 0:  // untouched
        break;
      case 1:  // replace one block by a random one
        d.blocks[pb(rng)] = random_block(rng, d.n);
        break;
      case 2:  // drop one block
        d.blocks.erase(d.blocks.begin() + static_cast<long>(pb(rng)));
        break;
      case 3:  // overwrite one block by a copy of another
        d.blocks[pb(rng)] = d.blocks[pb(rng)];
        break;
    }

    auto v = validate(d);
    REQUIRE(!v == oracle_valid(d));
    if (!v) continue;

    auto counts = pair_counts(d);
    if (v->kind == DesignViolationKind::block_count) {
      REQUIRE(12 * static_cast<long long>(d.blocks.size()) !=
              static_cast<long long>(d.n) * (d.n - 1));
      REQUIRE(v->actual_blocks == d.blocks.size());
      continue;
    }

    // the reported pair must be the lexicographically first defective one
    std::pair<int, int> first{0, 0};
    for (int p = 1; p <= d.n && first.first == 0; ++p)
      for (int q = p + 1; q <= d.n; ++q) {
        auto it = counts.find({p, q});
        int c = it == counts.end() ? 0 : it->second;
        if (c != 1) {
          first = {p, q};
          break;
        }
      }
    REQUIRE(first == std::make_pair(v->p, v->q));

    auto it = counts.find(first);
    int c = it == counts.end() ? 0 : it->second;
    if (v->kind == DesignViolationKind::pair_uncovered) {
      REQUIRE(c == 0);
    } else {
      REQUIRE(c >= 2);
      REQUIRE(v->covering_blocks.size() == static_cast<std::size_t>(c));
      for (std::size_t b : v->covering_blocks) {
        const auto& blk = d.blocks.at(b);
        CHECK(std::count(blk.begin(), blk.end(), v->p) == 1);
        CHECK(std::count(blk.begin(), blk.end(), v->q) == 1);
      }
    }
  }
}

TEST_CASE("abelian group arithmetic and names", "[designs]") {
  AbelianGroup z13({13});
  CHECK(z13.order() == 13);
  CHECK(z13.name() == "Z13");
  CHECK(z13.add(9, 9) == 5);
  CHECK(z13.neg(4) == 9);
  CHECK(z13.sub(2, 6) == 9);
  CHECK(z13.neg(0) == 0);

  AbelianGroup z55({5, 5});
  CHECK(z55.order() == 25);
  CHECK(z55.name() == "Z5 x Z5");
  // 7 = (2,1), 9 = (4,1); componentwise sum (1,2) = 11
  CHECK(z55.add(7, 9) == 11);
  CHECK(z55.add(7, z55.neg(7)) == 0);
  CHECK(z55.sub(3, 4) == 4);  // (3,0) - (4,0) = (4,0)

  std::mt19937 rng(777);
  std::uniform_int_distribution<int> e(0, 24);
  for (int t = 0; t < 100; ++t) {
    int x = e(rng), y = e(rng), z = e(rng);
    CHECK(z55.add(x, y) == z55.add(y, x));
    CHECK(z55.add(z55.add(x, y), z) == z55.add(x, z55.add(y, z)));
    CHECK(z55.sub(z55.add(x, y), y) == x);
  }

  CHECK_THROWS_AS(AbelianGroup({1}), precondition_error);
  CHECK_THROWS_AS(AbelianGroup({4, 0}), precondition_error);
}

TEST_CASE("abelian groups of a given order, one per isomorphism class",
          "[designs]") {
  using VV = std::vector<std::vector<int>>;
  CHECK(abelian_group_factorizations(13) == VV{{13}});
  CHECK(abelian_group_factorizations(25) == VV{{25}, {5, 5}});
  CHECK(abelian_group_factorizations(12) == VV{{12}, {6, 2}});
  CHECK(abelian_group_factorizations(8) == VV{{8}, {4, 2}, {2, 2, 2}});
  CHECK(abelian_group_factorizations(6) == VV{{6}});
  CHECK(abelian_group_factorizations(49) == VV{{49}, {7, 7}});
  CHECK_THROWS_AS(abelian_group_factorizations(1), precondition_error);

  // each list is a divisibility chain multiplying to n
  for (int n : {24, 36, 100}) {
    auto lists = abelian_group_factorizations(n);
    CHECK(!lists.empty());
    CHECK(lists.front() == std::vector<int>{n});
    for (const auto& fs : lists) {
      long long prod = 1;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        prod *= fs[i];
        if (i > 0) CHECK(fs[i - 1] % fs[i] == 0);
      }
      CHECK(prod == n);
    }
  }
}

TEST_CASE("difference families develop to valid designs", "[designs]") {
  Design d13 = develop_difference_family(13, {{0, 1, 3, 9}});
  CHECK(d13.n == 13);
  CHECK(d13.blocks.size() == 13);
  CHECK(!validate(d13));
  CHECK(oracle_valid(d13));

  Design d25 = develop_difference_family(AbelianGroup({5, 5}),
                                         {{0, 1, 5, 12}, {0, 2, 8, 17}});
  CHECK(d25.n == 25);
  CHECK(d25.blocks.size() == 50);
  CHECK(!validate(d25));
  CHECK(oracle_valid(d25));

  CHECK_THROWS_WITH(develop_difference_family(13, {{0, 1, 2, 4}}),
                    ContainsSubstring("difference 1 arises 2 times"));
  CHECK_THROWS_WITH(develop_difference_family(13, {{0, 1, 3, 13}}),
                    ContainsSubstring("element 13 outside 0..12"));
  CHECK_THROWS_WITH(develop_difference_family(13, {{0, 1, 3, 3}}),
                    ContainsSubstring("repeated element"));
  CHECK_THROWS_WITH(develop_difference_family(13, {{0, 1, 3, 9}, {0, 2, 5, 6}}),
                    ContainsSubstring("expected once"));
  CHECK_THROWS_AS(develop_difference_family(4, {{0, 1, 2, 3}}),
                  precondition_error);
}

TEST_CASE("base block search lands on frozen families", "[designs]") {
  auto f13 = search_base_blocks(13);
  REQUIRE(f13);
  CHECK(f13->group == std::vector<int>{13});
  CHECK(f13->base_blocks ==
        std::vector<std::array<int, 4>>{{0, 1, 3, 9}});

  auto f25 = search_base_blocks(25);
  REQUIRE(f25);
  CHECK(f25->group == std::vector<int>{5, 5});
  CHECK(f25->base_blocks ==
        std::vector<std::array<int, 4>>{{0, 1, 5, 12}, {0, 2, 8, 17}});
  Design d25 = develop_difference_family(*f25);
  CHECK(d25.blocks.size() == 50);
  CHECK(!validate(d25));

  CHECK_THROWS_AS(search_base_blocks(12), precondition_error);
  CHECK_THROWS_AS(search_base_blocks(14), precondition_error);
  CHECK_THROWS_AS(search_base_blocks(16), precondition_error);
  CHECK_THROWS_AS(search_base_blocks(1), precondition_error);
}

TEST_CASE("design files round-trip and report bad lines", "[designs]") {
  const Design d = pg2_f3();
  CHECK(parse_design(write_design(d)) == d);

  Design d25 = develop_difference_family(AbelianGroup({5, 5}),
                                         {{0, 1, 5, 12}, {0, 2, 8, 17}});
  CHECK(parse_design(write_design(d25)) == d25);

  CHECK(parse_design("# comment\n\n13\n1 2 3 4 # inline\n").blocks.size() == 1);

  CHECK_THROWS_WITH(parse_design(""), ContainsSubstring("missing point count"));
  CHECK_THROWS_WITH(parse_design("abc\n"), ContainsSubstring("bad point count 'abc' at line 1"));
  CHECK_THROWS_WITH(parse_design("13\n1 2 3\n"), ContainsSubstring("4 points at line 2"));
  CHECK_THROWS_WITH(parse_design("13\n1 2 3 4 5\n"),
                    ContainsSubstring("trailing token '5' at line 2"));
  CHECK_THROWS_WITH(parse_design("13\n1 2 x 4\n"),
                    ContainsSubstring("bad point 'x' at line 2"));
  CHECK_THROWS_WITH(parse_design("13\n1 2 3 14\n"),
                    ContainsSubstring("point 14 outside 1..13 at line 2"));
  CHECK_THROWS_WITH(parse_design("13\n1 3 2 4\n"),
                    ContainsSubstring("not strictly increasing at line 2"));
  CHECK_THROWS_WITH(parse_design("13\n1 2 3 4\n1 2 3 4\n"),
                    ContainsSubstring("duplicate block at line 3"));
  CHECK_THROWS_WITH(parse_design("0\n"), ContainsSubstring("must be positive"));
}
