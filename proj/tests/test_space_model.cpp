#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "clopenlab/space.hpp"

using namespace clopen;

TEST_CASE("clopen grammar round trips") {
  for (const char* s : {"[01]@0", "[1]@3", "[1]@-2", "[10]@(1,-1)", "[0]@L1", "[2]@L3",
                        "~[1]@0", "([01]@0 | [1]@3)", "[1]@0 & ~[0]@1", "0", "X"}) {
    ExprPtr e = parse_clopen(s);
    ExprPtr back = parse_clopen(print_clopen(e));
    CHECK(e->structurally_equal(*back));
  }
}

TEST_CASE("grammar shape") {
  ExprPtr e = parse_clopen("[01]@-1");
  REQUIRE(e->kind == ClopenExpr::Kind::Cylinder);
  CHECK(e->coord == std::array<int, 2>{-1, 0});
  CHECK(e->symbols == std::vector<int>{0, 1});

  e = parse_clopen("[1a]@(2,3)");
  CHECK(e->coord == std::array<int, 2>{2, 3});
  CHECK(e->symbols == std::vector<int>{1, 10});

  e = parse_clopen("[1]@L4");
  CHECK(e->kind == ClopenExpr::Kind::LevelCylinder);
  CHECK(e->level == 4);
  CHECK(e->digit == 1);

  // '|' and '&' associate left at equal precedence
  e = parse_clopen("[1]@0 | [1]@1 & [1]@2");
  CHECK(e->kind == ClopenExpr::Kind::Intersect);
  CHECK(e->lhs->kind == ClopenExpr::Kind::Union);

  CHECK_THROWS_AS(parse_clopen("[1]@"), ParseError);
  CHECK_THROWS_AS(parse_clopen("[]@0"), ParseError);
  CHECK_THROWS_AS(parse_clopen("[1]@0 |"), ParseError);
}

TEST_CASE("word parse and print") {
  GroupWord w = GroupWord::parse("g0^3 g1^-1");
  CHECK(w.abelian_displacement(2) == std::vector<int>{3, -1});
  CHECK(GroupWord::parse(w.str()) == w);
  CHECK(GroupWord::identity().str() == "e");
  CHECK(GroupWord::parse("e").abelian_displacement(1) == std::vector<int>{0});
  CHECK(w.inverse().abelian_displacement(2) == std::vector<int>{-3, 1});
}

TEST_CASE("word ball sizes") {
  GroupSchema z1{GroupSchema::Kind::FreeAbelian, 1, {}};
  GroupSchema z2{GroupSchema::Kind::FreeAbelian, 2, {}};
  CHECK(word_ball(z1, 3).size() == 7);        // {-3..3}
  CHECK(word_ball(z2, 2).size() == 13);       // |v1|+|v2| <= 2
  CHECK(word_ball(z1, 0).size() == 1);
  CHECK(word_ball(z1, 2).front() == GroupWord::identity());

  GroupSchema c3{GroupSchema::Kind::FiniteTable, 0, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};
  CHECK(word_ball(c3, 2).size() == 3);
  CHECK(word_ball(c3, 1).size() == 3);  // generators g1, g2 reach everything
}

TEST_CASE("apply_word translates shift cylinders") {
  ActionPtr shift = make_full_shift(2, 1);
  ExprPtr e = parse_clopen("[1]@0");
  ExprPtr img = apply_word(shift, e, GroupWord::parse("g0^1"));
  CHECK(print_clopen(img) == "[1]@1");
  img = apply_word(shift, parse_clopen("[01]@2 & ~[1]@0"), GroupWord::parse("g0^-2"));
  CHECK(sets_equal(shift, img, parse_clopen("[01]@0 & ~[1]@-2")));
}

TEST_CASE("apply_word on the odometer is cyclic") {
  ActionPtr od = make_odometer({2});
  ExprPtr zero = parse_clopen("[0]@L1");
  ExprPtr one = parse_clopen("[1]@L1");
  CHECK(sets_equal(od, apply_word(od, zero, GroupWord::parse("g0^1")), one));
  CHECK(sets_equal(od, apply_word(od, one, GroupWord::parse("g0^1")), zero));
  // carry: +1 sends [1]@L1 & [1]@L2 to [0]@L1 & [0]@L2
  ExprPtr top = parse_clopen("[1]@L1 & [1]@L2");
  CHECK(sets_equal(od, apply_word(od, top, GroupWord::parse("g0^1")),
                   parse_clopen("[0]@L1 & [0]@L2")));
}

TEST_CASE("emptiness") {
  ActionPtr shift = make_full_shift(2, 1);
  CHECK(is_empty(shift, parse_clopen("[0]@0 & [1]@0")));
  CHECK_FALSE(is_empty(shift, parse_clopen("[0]@0 & [1]@1")));
  CHECK(is_empty(shift, parse_clopen("0")));
  CHECK_FALSE(is_empty(shift, parse_clopen("X")));
  CHECK(is_empty(shift, parse_clopen("~X")));

  ActionPtr amoo = make_at_most_one_one(1);
  CHECK(is_empty(amoo, parse_clopen("[11]@0")));
  CHECK(is_empty(amoo, parse_clopen("[1]@0 & [1]@5")));
  CHECK_FALSE(is_empty(amoo, parse_clopen("[1]@0 & [0]@5")));
  CHECK_FALSE(is_empty(amoo, parse_clopen("~[1]@0 & ~[1]@1")));
}

TEST_CASE("canonical form separates sets") {
  ActionPtr shift = make_full_shift(2, 1);
  ExprPtr a = parse_clopen("~(~[1]@0 & ~[1]@1)");
  ExprPtr b = parse_clopen("[1]@0 | [1]@1");
  CHECK(sets_equal(shift, a, b));
  ExprPtr ca = canonical_form(shift, a);
  ExprPtr cb = canonical_form(shift, b);
  CHECK(ca->structurally_equal(*cb));
  CHECK_FALSE(sets_equal(shift, a, parse_clopen("[1]@0")));
}

TEST_CASE("type expressions") {
  TypeExpr t = parse_type_expr("2*[1]@0 + [0]@0");
  REQUIRE(t.summands.size() == 3);
  CHECK(t.summands[0].first == 0);
  CHECK(t.summands[2].first == 2);
  t.validate();
  TypeExpr back = parse_type_expr(print_type_expr(t));
  CHECK(back.summands.size() == 3);
}

TEST_CASE("action spec parsing") {
  ActionPtr a = parse_action_spec("kind: full-shift\nalphabet: 3\ndimension: 1\n");
  REQUIRE(a->as_full_shift());
  CHECK(a->as_full_shift()->alphabet == 3);

  a = parse_action_spec("kind: odometer\nbase: 2 3\n");
  REQUIRE(a->as_odometer());
  CHECK(a->as_odometer()->base(0) == 2);
  CHECK(a->as_odometer()->base(5) == 3);

  a = parse_action_spec("kind: subshift\nalphabet: 2\ndimension: 1\nforbidden: at-most-one-one\n");
  REQUIRE(a->as_subshift());
  CHECK(a->as_subshift()->at_most_one_one);

  a = parse_action_spec(
      "kind: finite\npoints: 2\ngroup_table: 0 1 ; 1 0\naction_table: 0 1 ; 1 0\n");
  REQUIRE(a->as_finite());
  a->validate();

  a = parse_action_spec(
      "kind: product\nfactors {\nkind: full-shift\nalphabet: 2\ndimension: 1\n}\nfactors {\nkind: odometer\nbase: 3\n}\n");
  REQUIRE(a->as_product());
  CHECK(a->as_product()->factors.size() == 2);
  a->validate();
}
