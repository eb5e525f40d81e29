#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "clopenlab/equidecomp.hpp"

using namespace clopen;

namespace {
const SearchBudget kSmall{3, 3, 100000, 10.0};

EquidecompositionWitness expect_witness(const EqResult& r) {
  REQUIRE(std::holds_alternative<EquidecompositionWitness>(r));
  return std::get<EquidecompositionWitness>(r);
}
}  // namespace

TEST_CASE("odometer: [00] <= [1] with one carry") {
  ActionPtr od = make_odometer({2});
  ExprPtr A = parse_clopen("[0]@L1 & [0]@L2");
  ExprPtr B = parse_clopen("[1]@L1");
  auto w = expect_witness(subequidecompose(od, A, B, SearchBudget{1, 2, 100000, 10.0}));
  CHECK(w.pieces.size() == 1);
  CHECK_FALSE(w.equi);
  CHECK(verify_witness(od, TypeExpr::single(A), TypeExpr::single(B), w));
}

TEST_CASE("identity witness for A = B") {
  ActionPtr od = make_odometer({2});
  ExprPtr A = parse_clopen("[1]@L1");
  auto w = expect_witness(subequidecompose(od, A, A, SearchBudget{0, 1, 1000, 5.0}));
  CHECK(w.equi);
  CHECK(verify_witness(od, TypeExpr::single(A), TypeExpr::single(A), w));
}

TEST_CASE("full shift: translation witness") {
  ActionPtr s = make_full_shift(2, 1);
  ExprPtr A = parse_clopen("[1]@0");
  ExprPtr B = parse_clopen("[1]@5");
  auto w = expect_witness(subequidecompose(s, A, B, SearchBudget{5, 2, 100000, 20.0}));
  CHECK(w.equi);
  std::string why;
  CHECK(verify_witness(s, TypeExpr::single(A), TypeExpr::single(B), w, &why));
  // the minimal translation is found first
  CHECK(w.pieces.size() == 1);
  CHECK(w.pieces[0].word.abelian_displacement(1) == std::vector<int>{5});
}

TEST_CASE("finite action: swap witness") {
  ActionPtr fa = make_finite_action({{0, 1}, {1, 0}}, {{0, 1}, {1, 0}});
  ExprPtr x = parse_clopen("[0]@0");
  ExprPtr y = parse_clopen("[1]@0");
  auto w = expect_witness(subequidecompose(fa, x, y, kSmall));
  CHECK(w.equi);
  CHECK(verify_witness(fa, TypeExpr::single(x), TypeExpr::single(y), w));
}

TEST_CASE("exhausted outcome is honest") {
  // trivial group on 2 points: {x} and {y} are incomparable
  ActionPtr fa = make_finite_action({{0}}, {{0, 1}});
  auto r = subequidecompose(fa, parse_clopen("[0]@0"), parse_clopen("[1]@0"), kSmall);
  CHECK(std::holds_alternative<Exhausted>(r));
}

TEST_CASE("type_leq: 2*[0] <= [0] + [1] on the depth-1 odometer") {
  ActionPtr od = make_odometer({2});
  TypeExpr a = parse_type_expr("2*[0]@L1");
  TypeExpr b = parse_type_expr("[0]@L1 + [1]@L1");
  auto w = expect_witness(type_leq(od, a, b, SearchBudget{1, 1, 100000, 10.0}));
  CHECK(w.equi);
  CHECK(w.pieces.size() == 2);
  CHECK(verify_witness(od, a, b, w));
  // zero <= anything
  auto z = expect_witness(type_leq(od, TypeExpr::zero(), b, kSmall));
  CHECK(z.pieces.empty());
}

TEST_CASE("type_leq fails honestly when counts forbid it") {
  ActionPtr od = make_odometer({2});
  TypeExpr a = parse_type_expr("3*[0]@L1");
  TypeExpr b = parse_type_expr("2*[0]@L1");
  auto r = type_leq(od, a, b, SearchBudget{2, 2, 100000, 10.0});
  CHECK(std::holds_alternative<Exhausted>(r));
}

TEST_CASE("witness composition is transitive") {
  ActionPtr od = make_odometer({2});
  ExprPtr A = parse_clopen("[0]@L1 & [0]@L2");
  ExprPtr B = parse_clopen("[1]@L1 & [0]@L2");
  ExprPtr C = parse_clopen("[0]@L1 & [1]@L2");
  SearchBudget b1{1, 1, 100000, 10.0};
  auto ab = expect_witness(subequidecompose(od, A, B, b1));
  auto bc = expect_witness(subequidecompose(od, B, C, b1));
  auto ac = compose_witnesses(od, ab, bc);
  CHECK(verify_witness(od, TypeExpr::single(A), TypeExpr::single(C), ac));
}

TEST_CASE("exhaustion trace mechanics") {
  ActionPtr od = make_odometer({2});
  GroupSchema z = od->schema();
  // A subset of B with identity first: one step absorbs everything
  auto tr = exhaustion_compare(od, parse_clopen("[0]@L1 & [0]@L2"), parse_clopen("[0]@L1"),
                               word_ball(z, 1));
  CHECK(tr.residual_empty);
  CHECK_FALSE(is_empty(od, tr.steps[0].piece));
  // [00] vs [1]: identity misses, +1 absorbs
  tr = exhaustion_compare(od, parse_clopen("[0]@L1 & [0]@L2"), parse_clopen("[1]@L1"),
                          word_ball(z, 1));
  CHECK(tr.residual_empty);
  CHECK(is_empty(od, tr.steps[0].piece));
  // disjoint with L=0: residual = A at every step
  ActionPtr s = make_full_shift(2, 1);
  tr = exhaustion_compare(s, parse_clopen("[0]@0"), parse_clopen("[1]@0"),
                          word_ball(s->schema(), 0));
  CHECK_FALSE(tr.residual_empty);
  CHECK(sets_equal(s, tr.residual, parse_clopen("[0]@0")));
}

TEST_CASE("witness JSON round trip") {
  ActionPtr od = make_odometer({2});
  ExprPtr A = parse_clopen("[0]@L1 & [0]@L2");
  ExprPtr B = parse_clopen("[1]@L1");
  auto w = expect_witness(subequidecompose(od, A, B, SearchBudget{1, 2, 100000, 10.0}));
  auto back = witness_from_json(witness_to_json(w));
  CHECK(back.pieces.size() == w.pieces.size());
  CHECK(back.equi == w.equi);
  CHECK(verify_witness(od, TypeExpr::single(A), TypeExpr::single(B), back));
  CHECK(witness_to_dot(w).find("--") != std::string::npos);
}

TEST_CASE("shift CSP splits pieces when one word cannot do it") {
  ActionPtr s = make_full_shift(2, 1);
  // A = [1]@0, B = ([1]@1 portion with 0 at 0) | ([1]@2 portion with 1 at 0):
  // forces two pieces with different translations
  ExprPtr A = parse_clopen("[1]@0");
  ExprPtr B = parse_clopen("([0]@1 & [1]@2) | ([1]@1 & [1]@2)");
  // B is exactly [1]@2
  auto w = expect_witness(subequidecompose(s, A, B, SearchBudget{2, 3, 200000, 20.0}));
  CHECK(verify_witness(s, TypeExpr::single(A), TypeExpr::single(B), w));
}

TEST_CASE("product action witness") {
  ActionPtr pr = make_product({make_full_shift(2, 1), make_odometer({2})});
  ExprPtr A = parse_clopen("[1]@0 & [0]@L1");
  ExprPtr B = parse_clopen("[1]@1 & [1]@L1");
  auto w = expect_witness(subequidecompose(pr, A, B, SearchBudget{1, 2, 100000, 20.0}));
  CHECK(verify_witness(pr, TypeExpr::single(A), TypeExpr::single(B), w));
}
