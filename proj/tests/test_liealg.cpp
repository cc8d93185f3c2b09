#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "orthograd/liealg.hpp"

using namespace orthograd;
using Catch::Matchers::ContainsSubstring;

namespace {

// x_{e_i - e_j} straight from the matrix model, bypassing AlgebraBasis.
OrthoElement diff_vector(int n, std::uint32_t i, std::uint32_t j) {
  const std::uint32_t un = static_cast<std::uint32_t>(n);
  return OrthoElement::from_entries(
      n, {{i, j, Rat(1)}, {un + j, un + i, Rat(-1)}});
}

OrthoElement sum_vector(int n, std::uint32_t i, std::uint32_t j) {
  const std::uint32_t un = static_cast<std::uint32_t>(n);
  return OrthoElement::from_entries(
      n, {{i, un + j, Rat(1)}, {j, un + i, Rat(-1)}});
}

OrthoElement neg_sum_vector(int n, std::uint32_t i, std::uint32_t j) {
  const std::uint32_t un = static_cast<std::uint32_t>(n);
  return OrthoElement::from_entries(
      n, {{un + i, j, Rat(1)}, {un + j, i, Rat(-1)}});
}

OrthoElement cartan_vector(int n, std::uint32_t i) {
  const std::uint32_t un = static_cast<std::uint32_t>(n);
  return OrthoElement::from_entries(
      n, {{i, i, Rat(1)}, {un + i, un + i, Rat(-1)}});
}

}  // namespace

TEST_CASE("frozen bracket relations", "[liealg]") {
  const int n = 4;
  OrthoElement h0 = cartan_vector(n, 0);
  OrthoElement h1 = cartan_vector(n, 1);
  OrthoElement x01 = diff_vector(n, 0, 1);
  OrthoElement x12 = diff_vector(n, 1, 2);
  OrthoElement x02 = diff_vector(n, 0, 2);
  OrthoElement p01 = sum_vector(n, 0, 1);
  OrthoElement m01 = neg_sum_vector(n, 0, 1);

  CHECK(bracket(x01, x12) == x02);
  CHECK(bracket(p01, m01) == Rat(-1) * (h0 + h1));
  CHECK(bracket(h0, x01) == x01);
  CHECK(bracket(h1, x01) == Rat(-1) * x01);
  CHECK(bracket(h0, p01) == p01);

  // roots on disjoint index pairs commute
  CHECK(bracket(x01, sum_vector(n, 2, 3)).is_zero());
  CHECK(bracket(p01, diff_vector(n, 2, 3)).is_zero());
  CHECK(bracket(x01, x01).is_zero());

  // sum of two roots that is neither zero nor a root
  CHECK(bracket(p01, sum_vector(n, 0, 2)).is_zero());
  CHECK(bracket(h0, h1).is_zero());
}

TEST_CASE("brackets are antisymmetric and satisfy jacobi", "[liealg][property]") {
  for (int n = 2; n <= 4; ++n) {
    const AlgebraBasis basis(n);
    const std::size_t dim = basis.dimension();
    REQUIRE(dim == static_cast<std::size_t>(n) * (2 * n - 1));

    std::vector<OrthoElement> b;
    b.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) b.push_back(basis.element(i));

    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i; j < dim; ++j) {
        OrthoElement lhs = bracket(b[i], b[j]);
        REQUIRE(lhs == Rat(-1) * bracket(b[j], b[i]));
        // closure: every bracket lands back in the span
        REQUIRE_NOTHROW(basis.coordinates(lhs));
      }

    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j)
        for (std::size_t k = j + 1; k < dim; ++k) {
          OrthoElement cyc = bracket(b[i], bracket(b[j], b[k])) +
                             bracket(b[j], bracket(b[k], b[i])) +
                             bracket(b[k], bracket(b[i], b[j]));
          REQUIRE(cyc.is_zero());
        }
  }
}

TEST_CASE("matrix invariant is enforced", "[liealg]") {
  // E_{00} alone is not skew with respect to the split form
  CHECK_THROWS_AS(OrthoElement::from_entries(3, {{0, 0, Rat(1)}}),
                  precondition_error);
  CHECK_THROWS_AS(OrthoElement::from_entries(3, {{0, 3, Rat(1)}}),
                  precondition_error);
  CHECK_THROWS_AS(OrthoElement::from_entries(3, {{0, 7, Rat(1)}}),
                  precondition_error);
  CHECK(OrthoElement::zero(3).is_zero());

  const AlgebraBasis basis(3);
  for (std::size_t i = 0; i < basis.dimension(); ++i)
    CHECK(basis.element(i).satisfies_invariant());

  CHECK_THROWS_AS(combine(Rat(1), OrthoElement::zero(3), Rat(1),
                          OrthoElement::zero(4)),
                  precondition_error);
}

TEST_CASE("sigma is an involutive automorphism", "[liealg]") {
  const AlgebraBasis basis(3);
  CHECK(check_automorphism(basis, [](const OrthoElement& x) { return sigma_auto(x); }));

  for (std::size_t i = 0; i < basis.dimension(); ++i)
    CHECK(sigma_auto(sigma_auto(basis.element(i))) == basis.element(i));

  for (std::size_t i = 0; i < 3; ++i)
    CHECK(sigma_auto(basis.element(basis.h_index(i))) ==
          Rat(-1) * basis.element(basis.h_index(i)));

  // sigma swaps the root spaces for a and -a, with sign -1 on differences
  // and +1 on sums
  for (std::size_t k = 0; k < basis.positive_count(); ++k) {
    const Root& a = basis.roots().positive_roots()[k];
    int expect = a.sj < 0 ? -1 : 1;
    CHECK(basis.sigma_sign(k) == expect);
    CHECK(sigma_auto(basis.element(basis.x_index(k, false))) ==
          Rat(expect) * basis.element(basis.x_index(k, true)));
    CHECK(sigma_auto(basis.element(basis.x_index(k, true))) ==
          Rat(expect) * basis.element(basis.x_index(k, false)));
  }
}

TEST_CASE("tau is an involutive automorphism commuting with sigma", "[liealg]") {
  const AlgebraBasis basis(3);
  CHECK(check_automorphism(basis, [](const OrthoElement& x) { return tau_auto(x); }));

  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    const OrthoElement& x = basis.element(i);
    CHECK(tau_auto(tau_auto(x)) == x);
    CHECK(tau_auto(sigma_auto(x)) == sigma_auto(tau_auto(x)));
    if (basis.is_cartan_index(i)) CHECK(tau_auto(x) == x);
  }

  // tau is the sign character that is -1 exactly on the sum roots
  for (int n = 3; n <= 4; ++n) {
    const AlgebraBasis b(n);
    std::vector<int> signs(static_cast<std::size_t>(n), 1);
    signs.back() = -1;
    Character chi = Character::on_simple_roots(n, signs);
    for (std::size_t i = 0; i < b.dimension(); ++i)
      CHECK(tau_auto(b.element(i)) == tau_chi(b, chi, b.element(i)));
  }
}

TEST_CASE("tau_chi scales each root vector by the character value",
          "[liealg][property]") {
  const int n = 3;
  const AlgebraBasis basis(n);
  const auto& pos = basis.roots().positive_roots();

  // all 2^n sign characters
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> signs;
    for (int i = 0; i < n; ++i) signs.push_back((mask >> i) & 1 ? -1 : 1);
    Character chi = Character::on_simple_roots(n, signs);

    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
      const OrthoElement& h = basis.element(basis.h_index(i));
      CHECK(tau_chi(basis, chi, h) == h);
    }
    for (std::size_t k = 0; k < pos.size(); ++k) {
      int v = chi.eval(to_intvec(pos[k].coords));
      for (bool negative : {false, true}) {
        const OrthoElement& x = basis.element(basis.x_index(k, negative));
        CHECK(tau_chi(basis, chi, x) == Rat(v) * x);
      }
    }
    CHECK(check_automorphism(basis, [&](const OrthoElement& x) {
      return tau_chi(basis, chi, x);
    }));
  }
}

TEST_CASE("coordinates round-trip and reject rank mismatches", "[liealg]") {
  const AlgebraBasis basis(4);
  std::mt19937 rng(60910);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> pick(0, 3);

  for (int trial = 0; trial < 60; ++trial) {
    SparseRat coords;
    for (std::size_t idx = 0; idx < basis.dimension(); ++idx) {
      if (pick(rng) != 0) continue;
      int p = num(rng);
      if (p == 0) continue;
      coords.emplace_back(static_cast<std::uint32_t>(idx), Rat(p) / den(rng));
    }
    OrthoElement x = basis.from_coordinates(coords);
    CHECK(basis.coordinates(x) == coords);
  }

  CHECK(basis.from_coordinates({}).is_zero());
  CHECK(basis.coordinates(OrthoElement::zero(4)).empty());
  CHECK_THROWS_WITH(basis.coordinates(OrthoElement::zero(3)),
                    ContainsSubstring("rank mismatch"));
}

TEST_CASE("character construction and evaluation", "[liealg]") {
  CHECK_THROWS_AS(Character::on_simple_roots(3, {1, -1}), precondition_error);
  CHECK_THROWS_AS(Character::on_simple_roots(3, {1, 0, -1}), precondition_error);

  const RootSystemD rs(3);
  const auto& pos = rs.positive_roots();

  Character chi = Character::on_simple_roots(3, {1, -1, 1});
  std::vector<int> table;
  for (const Root& a : pos) table.push_back(chi.eval(to_intvec(a.coords)));
  Character back = Character::from_root_values(rs, table);
  CHECK(back.simple_signs() == chi.simple_signs());

  // characters multiply along the lattice
  std::mt19937 rng(3301);
  std::uniform_int_distribution<std::size_t> pk(0, pos.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    IntVec u = to_intvec(pos[pk(rng)].coords);
    IntVec v = to_intvec(pos[pk(rng)].coords);
    IntVec w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
    CHECK(chi.eval(w) == chi.eval(u) * chi.eval(v));
  }

  CHECK_THROWS_WITH(chi.eval(IntVec{1, 0, 0}),
                    ContainsSubstring("outside the root lattice"));

  std::vector<int> bad = table;
  bad[0] = -bad[0];
  // flipping one value breaks multiplicativity somewhere
  CHECK_THROWS_WITH(Character::from_root_values(rs, bad),
                    ContainsSubstring("character table"));
  CHECK_THROWS_AS(Character::from_root_values(rs, {1, 1}), input_error);
  std::vector<int> off(pos.size(), 1);
  off[2] = 3;
  CHECK_THROWS_AS(Character::from_root_values(rs, off), input_error);
}
