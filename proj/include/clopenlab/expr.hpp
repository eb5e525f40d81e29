#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace clopen {

struct ClopenExpr;
using ExprPtr = std::shared_ptr<const ClopenExpr>;

/// AST over cylinders. A Cylinder fixes `symbols[i]` at coordinate
/// (coord[0] + i, coord[1]); a LevelCylinder fixes one odometer digit.
struct ClopenExpr {
  enum class Kind { Empty, Full, Cylinder, LevelCylinder, Union, Intersect, Complement };
  Kind kind = Kind::Empty;

  std::array<int, 2> coord{0, 0};
  std::vector<int> symbols;
  int level = 0;  // 1-based odometer level
  int digit = 0;

  ExprPtr lhs, rhs, inner;

  bool structurally_equal(const ClopenExpr& other) const;
};

ExprPtr expr_empty();
ExprPtr expr_full();
ExprPtr expr_cylinder(int coord, std::vector<int> symbols);
ExprPtr expr_cylinder2(std::array<int, 2> coord, std::vector<int> symbols);
ExprPtr expr_level_cylinder(int level, int digit);
ExprPtr expr_union(ExprPtr a, ExprPtr b);
ExprPtr expr_intersect(ExprPtr a, ExprPtr b);
ExprPtr expr_complement(ExprPtr a);
ExprPtr expr_difference(ExprPtr a, ExprPtr b);

/// Big union of a list (Empty when the list is).
ExprPtr expr_union_all(const std::vector<ExprPtr>& parts);

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(const std::string& msg, int line, int column);
};

/// Grammar (External Interfaces, bit-exact):
///   expr := term (('|'|'&') term)* ; term := '~'? atom ;
///   atom := '(' expr ')' | cyl | '0' | 'X' ;
///   cyl  := '[' symbol+ ']' '@' coord | '[' digit ']' '@' 'L' level ;
///   coord := int | '(' int ',' int ')'
ExprPtr parse_clopen(const std::string& text);

/// Canonical printer; parse_clopen(print_clopen(e)) is structurally e.
std::string print_clopen(const ExprPtr& e);

/// Formal sum of clopen copies: an element of T(alpha). Copy indices are
/// strictly increasing.
struct TypeExpr {
  std::vector<std::pair<int, ExprPtr>> summands;

  static TypeExpr zero() { return {}; }
  static TypeExpr single(ExprPtr e) { return TypeExpr{{{0, std::move(e)}}}; }
  /// n disjoint copies of e, at copy indices base..base+n-1.
  static TypeExpr copies(const ExprPtr& e, int n, int base = 0);
  bool is_zero() const { return summands.empty(); }
  int max_copy() const { return summands.empty() ? -1 : summands.back().first; }
  void validate() const;
};

/// Syntax: "expr", "k*expr", "expr + expr" (copies assigned 0,1,2,...).
TypeExpr parse_type_expr(const std::string& text);
std::string print_type_expr(const TypeExpr& t);

}  // namespace clopen
