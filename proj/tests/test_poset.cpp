#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace paq;
using namespace fixtures;

TEST_CASE("validate accepts a chain and pinpoints broken axioms") {
  CHECK_FALSE(validate(chain(2)).has_value());
  CHECK_FALSE(validate(Poset()).has_value());

  // 0 <= 1 and 1 <= 0 on distinct elements
  Poset cyc = Poset::from_up_masks(2, {0b11, 0b11});
  auto v = validate(cyc);
  REQUIRE(v.has_value());
  CHECK(v->axiom == "antisymmetry");
  CHECK(v->witness == std::vector<int>{0, 1});

  // 0 <= 1, 1 <= 2 without 0 <= 2
  Poset nt = Poset::from_up_masks(3, {0b011, 0b110, 0b100});
  v = validate(nt);
  REQUIRE(v.has_value());
  CHECK(v->axiom == "transitivity");
  CHECK(v->witness == std::vector<int>{0, 1, 2});

  Poset irr = Poset::from_up_masks(1, {0});
  v = validate(irr);
  REQUIRE(v.has_value());
  CHECK(v->axiom == "reflexivity");
}

TEST_CASE("maximal_above") {
  Poset b2 = make_bm_poset(2);
  CHECK(maximal_above(b2, 0).maxima == (bit(1) | bit(2)));
  CHECK(maximal_above(b2, 1).maxima == bit(1));
  CHECK(maximal_above(b2, 2).maxima == bit(2));

  Poset r = three_pair();
  int bottom = -1;
  for (int x = 0; x < r.size(); ++x)
    if (r.up_mask(x) == r.all_mask()) bottom = x;
  REQUIRE(bottom >= 0);
  CHECK(maximal_above(r, bottom).maxima == (bit(0) | bit(1) | bit(2)));

  CHECK_THROWS_AS(maximal_above(b2, 3), Error);
  CHECK_THROWS_AS(maximal_above(Poset(), 0), Error);
}

TEST_CASE("make_bm_poset shapes") {
  CHECK(make_bm_poset(0).size() == 1);
  CHECK(is_isomorphic(make_bm_poset(1), chain(2)).has_value());
  Poset b4 = make_bm_poset(4);
  CHECK(b4.size() == 5);
  CHECK(popcount(b4.max_above(0)) == 4);
  CHECK_FALSE(b4.is_maximal(0));
  CHECK_THROWS_AS(make_bm_poset(-1), Error);
}

TEST_CASE("disjoint_union") {
  std::vector<Poset> two_points = {make_bm_poset(0), make_bm_poset(0)};
  DisjointUnion u = disjoint_union(two_points);
  CHECK(is_isomorphic(u.poset, antichain(2)).has_value());
  CHECK(u.component == std::vector<int>{0, 1});

  std::vector<Poset> two_b2 = {make_bm_poset(2), make_bm_poset(2)};
  DisjointUnion v = disjoint_union(two_b2);
  CHECK(v.poset.size() == 6);
  int bottoms = 0;
  for (int x = 0; x < 6; ++x)
    if (popcount(v.poset.max_above(x)) == 2 && !v.poset.is_maximal(x))
      ++bottoms;
  CHECK(bottoms == 2);
  CHECK_FALSE(v.poset.leq(0, 3));  // no cross-component comparabilities
  CHECK(v.offset == std::vector<int>{0, 3});

  CHECK(disjoint_union({}).poset.empty());
}

TEST_CASE("isomorphism finds and refuses bijections") {
  Poset a = Poset::from_pairs(2, {{0, 1}});
  Poset b = Poset::from_pairs(2, {{1, 0}});
  auto iso = is_isomorphic(a, b);
  REQUIRE(iso.has_value());
  CHECK((*iso)[0] == 1);
  CHECK((*iso)[1] == 0);

  CHECK_FALSE(is_isomorphic(chain(2), antichain(2)).has_value());
  CHECK(is_isomorphic(Poset(), Poset()).has_value());

  // The three-pair poset built from explicit covers, labels as in the
  // figure: singletons {1},{2},{3}, pairs {1,2},{1,3},{2,3}, bottom.
  Poset r_by_hand = Poset::from_pairs(
      7, {{6, 3}, {6, 4}, {6, 5}, {3, 0}, {3, 1}, {4, 0}, {4, 2}, {5, 1},
          {5, 2}});
  CHECK(is_isomorphic(r_by_hand, three_pair()).has_value());
}

TEST_CASE("isomorphism is label-blind and an equivalence") {
  std::vector<Poset> posets = enumerate_posets(4);
  for (const Poset& p : posets) {
    auto self = is_isomorphic(p, p);
    REQUIRE(self.has_value());
  }
  for (size_t i = 0; i < posets.size(); ++i)
    for (size_t k = i + 1; k < posets.size(); ++k) {
      bool fwd = is_isomorphic(posets[i], posets[k]).has_value();
      bool bwd = is_isomorphic(posets[k], posets[i]).has_value();
      CHECK(fwd == bwd);
    }
}

TEST_CASE("enumerate_posets small counts") {
  CHECK(enumerate_posets(-1).empty());
  CHECK(enumerate_posets(0).size() == 1);
  CHECK(enumerate_posets(1).size() == 2);
  CHECK(enumerate_posets(2).size() == 4);  // adds the chain and the antichain
  Budget tight;
  CHECK_THROWS_AS(enumerate_posets(7, tight), Error);
}

TEST_CASE("enumerate_posets matches the labeled brute-force count at n = 5") {
  // Independent oracle: all labeled orders on 5 points, classified purely by
  // is_isomorphic against representatives.
  std::vector<std::vector<uint64_t>> labeled = all_labeled_orders(5);
  std::vector<Poset> reps;
  for (const auto& up : labeled) {
    Poset p = Poset::from_up_masks(5, up);
    REQUIRE_FALSE(validate(p).has_value());
    bool fresh = true;
    for (const Poset& r : reps)
      if (is_isomorphic(p, r)) {
        fresh = false;
        break;
      }
    if (fresh) reps.push_back(std::move(p));
  }

  std::vector<Poset> enumerated = enumerate_posets(5);
  size_t size5 = 0;
  for (const Poset& p : enumerated)
    if (p.size() == 5) ++size5;
  CHECK(size5 == reps.size());
  CHECK(reps.size() == 63);
}

TEST_CASE("enumerate_posets outputs are valid and pairwise non-isomorphic") {
  std::vector<Poset> posets = enumerate_posets(5);
  for (const Poset& p : posets) CHECK_FALSE(validate(p).has_value());
  for (size_t i = 0; i < posets.size(); ++i)
    for (size_t k = i + 1; k < posets.size(); ++k)
      CHECK_FALSE(is_isomorphic(posets[i], posets[k]).has_value());
}

TEST_CASE("max-sets shrink upward") {
  for (const Poset& p : enumerate_posets(5))
    for (int x = 0; x < p.size(); ++x)
      for (int y = 0; y < p.size(); ++y)
        if (p.leq(x, y)) CHECK((p.max_above(y) & ~p.max_above(x)) == 0);
}

TEST_CASE("disjoint_union maxima are the union of component maxima") {
  std::vector<Poset> parts = {make_bm_poset(2), chain(3), antichain(2)};
  DisjointUnion u = disjoint_union(parts);
  int total = 0;
  for (const Poset& p : parts) total += p.size();
  CHECK(u.poset.size() == total);
  uint64_t expected = 0;
  for (size_t k = 0; k < parts.size(); ++k)
    expected |= parts[k].maximal_mask() << u.offset[k];
  CHECK(u.poset.maximal_mask() == expected);
}

TEST_CASE("covers are the transitive reduction") {
  Poset c = chain(4);
  auto covers = c.cover_pairs();
  CHECK(covers == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});
  Poset b2 = make_bm_poset(2);
  CHECK(b2.cover_pairs() ==
        std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});
}
