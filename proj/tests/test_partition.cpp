#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "clopenlab/space.hpp"

using namespace clopen;

TEST_CASE("full shift window partition") {
  ActionPtr shift = make_full_shift(2, 1);
  Partition p = level_partition(shift, Depth::window(0, 2));
  CHECK(p.size() == 8);
  // atoms are exhaustive and disjoint
  auto total = p.eval(parse_clopen("X"));
  CHECK(std::count(total.begin(), total.end(), 1) == 8);
  auto bits = p.eval(parse_clopen("[1]@1"));
  CHECK(std::count(bits.begin(), bits.end(), 1) == 4);
}

TEST_CASE("golden mean subshift atom counts follow Fibonacci") {
  ActionPtr gm = make_subshift(2, 1, {ForbiddenPattern{{{0, 0, 1}, {1, 0, 1}}}});
  // no-11 words of length n: 2, 3, 5, 8, 13
  int expect[] = {2, 3, 5, 8, 13};
  for (int n = 1; n <= 5; ++n) {
    Partition p = level_partition(gm, Depth::window(0, n - 1));
    CHECK(p.size() == static_cast<std::size_t>(expect[n - 1]));
  }
}

TEST_CASE("non-extendable locally admissible words are trimmed") {
  // symbol 1 has no successor: 1 appears in no two-sided point
  ActionPtr s = make_subshift(3, 1,
                              {ForbiddenPattern{{{0, 0, 1}, {1, 0, 0}}},
                               ForbiddenPattern{{{0, 0, 1}, {1, 0, 1}}},
                               ForbiddenPattern{{{0, 0, 1}, {1, 0, 2}}}});
  Partition p = level_partition(s, Depth::window(0, 0));
  CHECK(p.size() == 2);
  CHECK(is_empty(s, parse_clopen("[1]@0")));
  CHECK_FALSE(is_empty(s, parse_clopen("[2]@0")));
}

TEST_CASE("two dimensional windows") {
  ActionPtr s2 = make_full_shift(2, 2);
  Partition p = level_partition(s2, Depth::box(0, 1, 0, 1));
  CHECK(p.size() == 16);
  auto bits = p.eval(parse_clopen("[1]@(0,0) & [1]@(1,1)"));
  CHECK(std::count(bits.begin(), bits.end(), 1) == 4);
  ActionPtr amoo2 = make_at_most_one_one(2);
  Partition q = level_partition(amoo2, Depth::box(0, 1, 0, 1));
  CHECK(q.size() == 5);  // all-zero plus one 1 in each of 4 cells
}

TEST_CASE("odometer partition and rotation") {
  ActionPtr od = make_odometer({2});
  Partition p = level_partition(od, Depth::odometer_level(3));
  REQUIRE(p.size() == 8);
  auto perm = p.word_permutation(GroupWord::parse("g0^1"));
  REQUIRE(perm.has_value());
  // +1 is a single 8-cycle
  std::set<int> orbit;
  int cur = 0;
  for (int i = 0; i < 8; ++i) {
    orbit.insert(cur);
    cur = (*perm)[cur];
  }
  CHECK(orbit.size() == 8);
  CHECK(cur == 0);
  // carry wraps the top atom to the bottom one
  int top = p.atom_index({1, 1, 1});
  CHECK((*perm)[top] == p.atom_index({0, 0, 0}));
  // inverse word gives the inverse permutation
  auto inv = p.word_permutation(GroupWord::parse("g0^-1"));
  for (int i = 0; i < 8; ++i) CHECK((*inv)[(*perm)[i]] == i);
}

TEST_CASE("mixed base odometer") {
  ActionPtr od = make_odometer({2, 3});
  Partition p = level_partition(od, Depth::odometer_level(2));
  REQUIRE(p.size() == 6);
  auto perm = p.word_permutation(GroupWord::parse("g0^1"));
  // residue r = d1 + 2*d2; +1 from (1,2) = 5 wraps to (0,0)
  CHECK((*perm)[p.atom_index({1, 2})] == p.atom_index({0, 0}));
  CHECK((*perm)[p.atom_index({0, 1})] == p.atom_index({1, 1}));
}

TEST_CASE("finite action permutations") {
  // C2 swapping two points
  ActionPtr fa = make_finite_action({{0, 1}, {1, 0}}, {{0, 1}, {1, 0}});
  Partition p = level_partition(fa, Depth::trivial());
  REQUIRE(p.size() == 2);
  auto perm = p.word_permutation(GroupWord::parse("g1^1"));
  CHECK((*perm)[0] == 1);
  CHECK((*perm)[1] == 0);
}

TEST_CASE("invariant partition") {
  ActionPtr od = make_odometer({2});
  auto res = invariant_partition(od, {GroupWord::parse("g0^1")}, Depth::odometer_level(2));
  REQUIRE(std::holds_alternative<InvariantPartition>(res));
  auto& ip = std::get<InvariantPartition>(res);
  CHECK(ip.partition.size() == 4);
  CHECK(ip.permutations.size() == 1);

  ActionPtr shift = make_full_shift(2, 1);
  auto res2 = invariant_partition(shift, {GroupWord::parse("g0^1")}, Depth::window(0, 1));
  CHECK(std::holds_alternative<InvariantRefusal>(res2));
}

TEST_CASE("atom cap") {
  ActionPtr shift = make_full_shift(2, 1);
  CHECK_THROWS_AS(level_partition(shift, Depth::window(0, 20)), AtomCapExceeded);
  CHECK_NOTHROW(level_partition(shift, Depth::window(0, 20), std::size_t{1} << 22));
}

TEST_CASE("minimal depth") {
  ActionPtr shift = make_full_shift(2, 1);
  Depth d = minimal_depth(shift, parse_clopen("[01]@-1 & [1]@3"));
  CHECK(d.lo[0] == -1);
  CHECK(d.hi[0] == 3);
  ActionPtr od = make_odometer({2});
  Depth dl = minimal_depth(od, parse_clopen("[1]@L3 | [0]@L1"));
  CHECK(dl.level == 3);
}

TEST_CASE("atom images") {
  ActionPtr od = make_odometer({2});
  Partition p = level_partition(od, Depth::odometer_level(2));
  AtomImage img = atom_image(od, GroupWord::parse("g0^1"), p, p.atom_index({1, 0}));
  REQUIRE(img.exact_image.has_value());
  CHECK(*img.exact_image == static_cast<std::size_t>(p.atom_index({0, 1})));

  ActionPtr shift = make_full_shift(2, 1);
  Partition q = level_partition(shift, Depth::window(0, 1));
  Partition fine = level_partition(shift, Depth::window(0, 2));
  AtomImage simg = atom_image(shift, GroupWord::parse("g0^1"), q, 0, &fine);
  CHECK_FALSE(simg.exact_image.has_value());
  CHECK(simg.refined_atoms.size() == 2);  // [00]@1 splits into two length-3 atoms
  CHECK(sets_equal(shift, simg.cylinder, parse_clopen("[00]@1")));
}

TEST_CASE("product of shift and odometer") {
  ActionPtr pr = make_product({make_full_shift(2, 1), make_odometer({2})});
  Depth d = Depth::product({Depth::window(0, 1), Depth::odometer_level(1)});
  Partition p = level_partition(pr, d);
  CHECK(p.size() == 8);
  auto bits = p.eval(parse_clopen("[1]@0 & [0]@L1"));
  CHECK(std::count(bits.begin(), bits.end(), 1) == 2);
  // the generator shifts and increments at once: no finite window algebra is invariant
  CHECK(std::holds_alternative<InvariantRefusal>(
      invariant_partition(pr, {GroupWord::parse("g0^1")}, d)));
  // image expression is still computable
  ExprPtr img = p.atom_image_expr(p.atom_index({0, 1}), GroupWord::parse("g0^1"));
  Partition fine = level_partition(pr, Depth::product({Depth::window(0, 2), Depth::odometer_level(1)}));
  auto fbits = fine.eval(img);
  CHECK(std::count(fbits.begin(), fbits.end(), 1) > 0);
}
