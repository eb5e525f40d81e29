#pragma once

#include <variant>

#include "clopenlab/space.hpp"

namespace clopen {

/// Truncation of the existential quantifiers: word length, extra partition
/// depth beyond the minimal joint depth, backtracking nodes, wall time.
struct SearchBudget {
  int max_word_len = 3;
  int max_depth = 4;
  long max_nodes = 200000;
  double time_cap_s = 30.0;
};

struct WitnessPiece {
  int copy = 0;  // source copy index
  ExprPtr clopen;
  GroupWord word;
  int copy_to = 0;  // target copy index
};

/// Clopen partition plus group words certifying [A] <= [B] (mode sub) or
/// [A] = [B] (mode equi).
struct EquidecompositionWitness {
  std::vector<WitnessPiece> pieces;
  bool equi = false;
  SearchBudget budget;
};

struct Exhausted {
  std::string reason;
  SearchBudget budget;
};

using EqResult = std::variant<EquidecompositionWitness, Exhausted>;

/// Search for a witness that [A] <= [B]. Backend selection: exact kinds use
/// bipartite matching on an invariant partition; shift kinds use depth-first
/// piece assignment with exact cylinder-disjointness tests.
EqResult subequidecompose(const ActionPtr& action, const ExprPtr& A, const ExprPtr& B,
                          const SearchBudget& budget);

/// The preorder of T(alpha) on formal sums, same backends per copy.
EqResult type_leq(const ActionPtr& action, const TypeExpr& a, const TypeExpr& b,
                  const SearchBudget& budget);

/// Independent re-verification of a witness through space_model emptiness
/// tests only. On failure `why` (when given) names the violated condition.
bool verify_witness(const ActionPtr& action, const TypeExpr& a, const TypeExpr& b,
                    const EquidecompositionWitness& w, std::string* why = nullptr);

/// Transitivity harness: witnesses for a<=b and b<=c compose into a verified
/// witness for a<=c (word lengths add).
EquidecompositionWitness compose_witnesses(const ActionPtr& action,
                                           const EquidecompositionWitness& ab,
                                           const EquidecompositionWitness& bc);

/// One step of the greedy exhaustion A_n = (A \ UA_i) n w_n^{-1}(B \ Uw_iA_i).
struct ExhaustionStep {
  ExprPtr piece;
  GroupWord word;
  ExprPtr image;
};
struct ExhaustionTrace {
  std::vector<ExhaustionStep> steps;
  ExprPtr residual;
  bool residual_empty = false;
};

/// Greedy exhaustion over a fixed word enumeration (identity first).
ExhaustionTrace exhaustion_compare(const ActionPtr& action, const ExprPtr& A, const ExprPtr& B,
                                   const std::vector<GroupWord>& words,
                                   std::size_t atom_cap = kDefaultAtomCap);

std::string witness_to_json(const EquidecompositionWitness& w);
EquidecompositionWitness witness_from_json(const std::string& text);

/// Bipartite matching graph of a witness in DOT form, deterministic order.
std::string witness_to_dot(const EquidecompositionWitness& w);

}  // namespace clopen
