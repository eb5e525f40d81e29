#pragma once

#include <map>

#include "clopenlab/equidecomp.hpp"

namespace clopen {

/// Finite Boolean subalgebra of the clopen algebra, given by its atoms.
struct FiniteAlgebra {
  ActionPtr action;
  std::vector<ExprPtr> atoms;

  std::size_t size() const { return atoms.size(); }
  /// Throws unless the atoms are nonempty, pairwise disjoint and cover X.
  void verify() const;
};

/// Piecewise full-group data realizing an atom permutation: disjoint clopen
/// pieces covering X, each moved by one group word.
struct Realization {
  std::vector<std::pair<ExprPtr, GroupWord>> pieces;
};

ExprPtr realization_apply(const ActionPtr& action, const Realization& r, const ExprPtr& s);

/// Unit system at finite resolution: an algebra together with a group of atom
/// permutations (closed under composition and inverse, identity first) and
/// optional full-group realizations witnessing each permutation.
struct UnitSystem {
  FiniteAlgebra algebra;
  std::vector<std::vector<int>> group;
  std::vector<std::optional<Realization>> realization;  // parallel to group

  std::size_t order() const { return group.size(); }
  int find(const std::vector<int>& table) const;  // -1 when absent
};

constexpr std::size_t kGroupCap = 40320;  // 8!

/// Closes the generators, checks the axioms (permutations of the atoms,
/// distinct tables, identity present) and verifies supplied realizations.
UnitSystem build_unit_system(FiniteAlgebra algebra, std::vector<std::vector<int>> perms,
                             std::vector<std::optional<Realization>> realizations = {},
                             std::size_t group_cap = kGroupCap);

/// Independent check that realization `idx` implements the permutation:
/// pieces partition X, images partition X, each atom lands on its image atom.
bool verify_realization(const UnitSystem& s, std::size_t idx, std::string* why = nullptr);

std::string unit_system_to_json(const UnitSystem& s);

/// Budgeted query interface for "does some full-group element map A onto B",
/// answered by two-sided type_leq with verified witnesses; results cached.
class CompatibilityOracle {
 public:
  CompatibilityOracle(ActionPtr action, SearchBudget budget)
      : action(std::move(action)), budget(budget) {}

  /// Verified witness that [A] = [B], or nullopt (reason set either to the
  /// refutation or to the exhausted budget).
  std::optional<EquidecompositionWitness> equivalent(const ExprPtr& A, const ExprPtr& B,
                                                     std::string* reason = nullptr);

  ActionPtr action;
  SearchBudget budget;
  long queries = 0;

 private:
  std::map<std::pair<std::string, std::string>, std::pair<bool, std::string>> cache_reason_;
  std::map<std::pair<std::string, std::string>, EquidecompositionWitness> cache_;
};

/// Image of a subset of the source under the piecewise map of a witness.
ExprPtr witness_image(const ActionPtr& action, const EquidecompositionWitness& w,
                      const ExprPtr& s);

struct TypeEquality {
  ExprPtr U, V;
  EquidecompositionWitness witness;  // verified [U] = [V]
};

/// Output of one ample-ladder refinement step.
struct LadderStep {
  UnitSystem refined;
  std::vector<int> atom_parent;  // refined atom -> current atom
  std::vector<int> labels;       // type class per refined atom, by lowest representative
  std::vector<int> extension;    // current group index -> refined group index
};

/// Prop. tame_gives_ample step: refine by the witness pieces, label atoms by
/// type through the oracle, return the group of label-preserving atom
/// permutations with every current element extended.
LadderStep ample_ladder_step(const UnitSystem& current, const std::vector<TypeEquality>& eqs,
                             CompatibilityOracle& oracle, std::size_t group_cap = kGroupCap);

/// Unit system on the given algebra with atoms labeled by type through the
/// oracle and the full group of label-preserving permutations; identity and
/// same-label transpositions carry oracle-realized words.
UnitSystem young_system(const FiniteAlgebra& algebra, CompatibilityOracle& oracle,
                        std::size_t group_cap = kGroupCap);

/// Data exhibiting (Aprime, its group) as a refinement of (A, its group).
struct RefinementData {
  std::vector<int> atom_parent;  // Aprime atom -> A atom
  std::vector<int> extension;    // A group index -> Aprime group index
};

struct KriegerResult {
  UnitSystem cprime;
  std::vector<int> psi;  // Aprime atom -> cprime atom
  std::vector<EquidecompositionWitness> atom_witnesses;  // condition (1), per Aprime atom
  std::vector<std::string> audit;
};

/// Krieger's lemma at finite resolution: given compatible unit systems with an
/// isomorphism phi satisfying (1) per-atom oracle equivalence and (2) the
/// conjugation identity on tables, extend phi over the refinement Aprime.
/// Conditions (1)-(2) of the output are re-verified independently.
KriegerResult krieger_extend(const UnitSystem& A, const UnitSystem& C, const std::vector<int>& phi,
                             const UnitSystem& Aprime, const RefinementData& refinement,
                             CompatibilityOracle& oracle);

struct ConjugationReport {
  std::vector<int> phi;   // ladder-top atom -> image atom
  FiniteAlgebra range;    // image algebra at the deepest completed step
  int steps_completed = 0;
  bool verified = false;
  std::string error;  // empty on success; partial output retained otherwise
  std::vector<std::string> audit;
};

/// Back-and-forth of the appendix proposition: extend an isomorphism along
/// the ladder for `depth` steps, conjugating the ladder groups into
/// oracle-witnessed elements of the reference full group.
ConjugationReport conjugate_construct(CompatibilityOracle& oracle,
                                      const std::vector<UnitSystem>& ladder, int depth);

/// Refinement bookkeeping between consecutive ladder entries (containment of
/// atoms, extension by induced coarse table). Throws when not a refinement.
RefinementData refinement_data(const UnitSystem& coarse, const UnitSystem& fine);

}  // namespace clopen
