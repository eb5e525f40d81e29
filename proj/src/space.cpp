#include "clopenlab/space.hpp"

#include <algorithm>

namespace clopen {

namespace {

// Pure shift: the word action is a coordinate translation of every cylinder.
ExprPtr translate(const ExprPtr& e, const std::vector<int>& disp) {
  switch (e->kind) {
    case ClopenExpr::Kind::Empty:
    case ClopenExpr::Kind::Full:
      return e;
    case ClopenExpr::Kind::Cylinder:
      return expr_cylinder2({e->coord[0] + disp[0], e->coord[1] + (disp.size() > 1 ? disp[1] : 0)},
                            e->symbols);
    case ClopenExpr::Kind::LevelCylinder:
      throw std::runtime_error("level cylinder under a shift word");
    case ClopenExpr::Kind::Union:
      return expr_union(translate(e->lhs, disp), translate(e->rhs, disp));
    case ClopenExpr::Kind::Intersect:
      return expr_intersect(translate(e->lhs, disp), translate(e->rhs, disp));
    case ClopenExpr::Kind::Complement:
      return expr_complement(translate(e->inner, disp));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

ExprPtr apply_word(const ActionPtr& action, const ExprPtr& e, const GroupWord& w,
                   std::size_t atom_cap) {
  if (action->is_shift_kind())
    return translate(e, w.abelian_displacement(action->shift_dim()));
  Depth d = minimal_depth(action, e);
  Partition p = level_partition(action, d, atom_cap);
  auto bits = p.eval(e);
  std::vector<ExprPtr> parts;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) parts.push_back(p.atom_image_expr(i, w));
  if (parts.empty()) return expr_empty();
  ExprPtr acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = expr_union(acc, parts[i]);
  return acc;
}

bool is_empty(const ActionPtr& action, const ExprPtr& e, std::size_t atom_cap) {
  Partition p = level_partition(action, minimal_depth(action, e), atom_cap);
  auto bits = p.eval(e);
  return std::none_of(bits.begin(), bits.end(), [](char b) { return b != 0; });
}

bool set_subseteq(const ActionPtr& action, const ExprPtr& a, const ExprPtr& b,
                  std::size_t atom_cap) {
  return is_empty(action, expr_difference(a, b), atom_cap);
}

bool sets_equal(const ActionPtr& action, const ExprPtr& a, const ExprPtr& b,
                std::size_t atom_cap) {
  return set_subseteq(action, a, b, atom_cap) && set_subseteq(action, b, a, atom_cap);
}

ExprPtr canonical_form(const ActionPtr& action, const ExprPtr& e, std::size_t atom_cap) {
  Partition p = level_partition(action, minimal_depth(action, e), atom_cap);
  auto bits = p.eval(e);
  ExprPtr acc;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i]) continue;
    ExprPtr atom = p.atom_expr(i);
    acc = acc ? expr_union(acc, atom) : atom;
  }
  return acc ? acc : expr_empty();
}

}  // namespace clopen
