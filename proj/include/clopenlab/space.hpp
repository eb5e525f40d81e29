#pragma once

#include "clopenlab/partition.hpp"

namespace clopen {

/// Image of a clopen set under a group word. Pure shift actions translate
/// cylinders syntactically; all other kinds expand the set into atoms of a
/// covering partition and take the union of atom images.
ExprPtr apply_word(const ActionPtr& action, const ExprPtr& e, const GroupWord& w,
                   std::size_t atom_cap = kDefaultAtomCap);

/// Exact emptiness test: evaluate over the level partition at minimal depth.
bool is_empty(const ActionPtr& action, const ExprPtr& e,
              std::size_t atom_cap = kDefaultAtomCap);

/// Do two expressions denote the same set?
bool sets_equal(const ActionPtr& action, const ExprPtr& a, const ExprPtr& b,
                std::size_t atom_cap = kDefaultAtomCap);
bool set_subseteq(const ActionPtr& action, const ExprPtr& a, const ExprPtr& b,
                  std::size_t atom_cap = kDefaultAtomCap);

/// Canonical form: disjunction of the atoms of the minimal-depth partition
/// that meet the set (Empty when none do). Two expressions denote the same
/// set iff canonical forms at a common depth are structurally equal.
ExprPtr canonical_form(const ActionPtr& action, const ExprPtr& e,
                       std::size_t atom_cap = kDefaultAtomCap);

}  // namespace clopen
