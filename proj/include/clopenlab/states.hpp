#pragma once

#include <variant>

#include "clopenlab/equidecomp.hpp"
#include "clopenlab/lp.hpp"

namespace clopen {

/// Exact rational constraints on atom masses at a resolution. Tag EXACT when
/// the projections are exactly the invariant-measure marginals (finite
/// actions, odometers, full shifts, 1-d subshifts, products of exact kinds);
/// OUTER (superset) for 2-d windows and products with a shift factor.
struct MeasurePolytope {
  Partition partition;
  std::vector<std::vector<Rat>> A;  // equality rows, one column per atom
  std::vector<Rat> b;
  bool exact = false;
};

MeasurePolytope build_polytope(const ActionPtr& action, const Depth& depth,
                               std::size_t atom_cap = kDefaultAtomCap);

struct StateReport {
  LPResult::Status status = LPResult::Status::Optimal;
  Rat value = 0;
  std::vector<Rat> vertex;
  std::vector<Rat> farkas;
  Depth depth;
  bool exact = false;
  bool conclusive = false;
  std::string note;
};

std::string state_report_json(const StateReport& r);

/// max mu(A) - mu(B) over the polytope. value < 0 certifies the comparison
/// premise on either tag; value >= 0 is conclusive only on EXACT.
StateReport comparison_gap(const ActionPtr& action, const ExprPtr& A, const ExprPtr& B,
                           const Depth& depth);

struct CoveringCertificate {
  std::vector<GroupWord> words;  // union of word images of B covers X
};
struct ZeroMeasureState {
  StateReport report;  // EXACT-polytope point with mu(B) = 0
};
using OrderUnitResult = std::variant<CoveringCertificate, ZeroMeasureState, Exhausted>;

/// Either finitely many translates of B cover X (order unit), or a state
/// kills B, or the budget runs out.
OrderUnitResult order_unit_test(const ActionPtr& action, const ExprPtr& B,
                                const SearchBudget& budget);

struct ParadoxWitness {
  int n = 1;
  EquidecompositionWitness witness;  // (n+1) b <= n b
};
struct NoneFound {
  SearchBudget budget;
  int max_n = 0;
};
using ParadoxResult = std::variant<ParadoxWitness, NoneFound>;

/// Tarski search: by the theorem a witness rules out any state with
/// mu(b) = 1. Never claims nonexistence.
ParadoxResult paradox_search(const ActionPtr& action, const TypeExpr& b, int max_n,
                             const SearchBudget& budget);

/// n disjoint copies of a type expression (copy indices renumbered).
TypeExpr type_multiple(const TypeExpr& t, int n);

/// [min mu(A), max mu(A)] at the given depth.
std::pair<StateReport, StateReport> unique_ergodicity_gap(const ActionPtr& action,
                                                          const ExprPtr& A, const Depth& depth);

}  // namespace clopen
