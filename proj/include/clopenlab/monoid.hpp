#pragma once

#include <set>

#include "clopenlab/equidecomp.hpp"
#include "clopenlab/lp.hpp"

namespace clopen {

using Vec = std::vector<long long>;  // element of N^gens

long long degree(const Vec& v);
Vec vec_add(const Vec& a, const Vec& b);
std::string vec_str(const Vec& v);

/// Finitely presented commutative monoid; relations are pairs of vectors in
/// canonical (sorted, deduplicated, no-trivial) form.
struct MonoidPresentation {
  int gens = 0;
  std::vector<std::pair<Vec, Vec>> relations;

  void normalize();
  void validate() const;
  /// Text format: `gens: 3` then lines `rel: 1 1 0 = 0 0 2`.
  static MonoidPresentation parse(const std::string& text);
  std::string str() const;
};

enum class Tri { Yes, No, Unknown };

/// Congruence class of v truncated at total degree <= bound. `complete` when
/// no rewrite ever escaped the bound, so the set is the entire class.
struct CongClass {
  std::set<Vec> members;
  bool complete = true;
};
CongClass congruence_class(const MonoidPresentation& p, const Vec& v, long long bound);

Tri monoid_eq(const MonoidPresentation& p, const Vec& a, const Vec& b, long long bound);

/// a <= b with witness c (b ~ a + c) when Tri::Yes.
struct LeqResult {
  Tri verdict = Tri::Unknown;
  Vec witness;  // the c with b ~ a + c
};
LeqResult monoid_leq(const MonoidPresentation& p, const Vec& a, const Vec& b, long long bound);

enum class Verdict { HoldsWithinBound, Fails, Unknown };

struct PropertyVerdict {
  std::string property;
  Verdict verdict = Verdict::Unknown;
  std::string certificate;  // counterexample vectors, human-readable
  std::vector<Vec> witness_vectors;
  long long bound = 0;
};

/// Properties: conical, cancellative, stably-finite, directly-finite(x),
/// unperforated, almost-unperforated, refinement, simple, order-unit(x),
/// weak-comparability(u). Parameterized properties take `param`.
PropertyVerdict check_property(const MonoidPresentation& p, const std::string& property,
                               long long bound, const Vec* param = nullptr);

std::vector<std::string> property_catalog();

/// V_b of Prop. almost-unperforation: restrict to generators below a
/// multiple of b, then identify u ~ v whenever u <= v <= u.
struct AntisymmetricQuotient {
  MonoidPresentation presentation;
  std::vector<int> kept_generators;  // indices into the original generators
  bool bound_exhausted = false;
};
AntisymmetricQuotient antisymmetric_quotient(const MonoidPresentation& p, const Vec& b,
                                             long long bound);

/// Z^g / <left - right> via Smith normal form.
struct GroupInvariants {
  int rank = 0;
  std::vector<boost::multiprecision::cpp_int> torsion;  // entries >= 2
  std::string str() const;
};
GroupInvariants grothendieck(const MonoidPresentation& p);

/// Smith normal form diagonal of an integer matrix (divisibility chain).
std::vector<boost::multiprecision::cpp_int> smith_normal_form(
    std::vector<std::vector<boost::multiprecision::cpp_int>> m);

struct CoinvariantsGroup {
  GroupInvariants invariants;
  std::size_t atoms = 0;
  std::size_t boundary_rows = 0;
};

/// H at finite resolution: Z^atoms / <e_a - e_{g a}> over the generators.
/// Shift kinds have no invariant partition; a refusal is returned instead.
std::variant<CoinvariantsGroup, std::string> coinvariants(const ActionPtr& action,
                                                          const Depth& depth);

/// Exact type semigroup of a finite action: elements are per-orbit count
/// vectors. The closed form must be validated against brute-force search.
struct FiniteTypeSemigroup {
  std::vector<std::vector<int>> orbits;  // point indices per orbit
  Vec type_of(const std::vector<char>& subset) const;
  MonoidPresentation presentation;  // atoms with e_p = e_{g p}
};
FiniteTypeSemigroup finite_action_type_semigroup(const ActionPtr& fa);

struct TypeMonoidSnapshot {
  ActionPtr action;
  Depth depth;
  int word_len = 0;
  MonoidPresentation presentation;  // generators = atoms
};

/// Presentation on atom generators with e_a = e_{w a} over the word ball
/// (exact permutation case only; shift kinds yield a refusal).
std::variant<TypeMonoidSnapshot, std::string> resolution_type_monoid(const ActionPtr& action,
                                                                     const Depth& depth, int L);

}  // namespace clopen
