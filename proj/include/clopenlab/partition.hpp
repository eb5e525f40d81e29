#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "clopenlab/actions.hpp"
#include "clopenlab/expr.hpp"

namespace clopen {

/// Resolution descriptor. Shifts use the window box [lo, hi] (second
/// coordinate only in dimension 2); odometers the number of digit levels;
/// finite actions need nothing; products one descriptor per factor.
struct Depth {
  std::array<int, 2> lo{0, 0};
  std::array<int, 2> hi{-1, -1};
  int level = 0;
  std::vector<Depth> factors;

  static Depth window(int lo, int hi) { return Depth{{lo, 0}, {hi, 0}, 0, {}}; }
  static Depth box(int lo0, int hi0, int lo1, int hi1) { return Depth{{lo0, lo1}, {hi0, hi1}, 0, {}}; }
  static Depth odometer_level(int n) { return Depth{{0, 0}, {-1, -1}, n, {}}; }
  static Depth trivial() { return Depth{}; }
  static Depth product(std::vector<Depth> fs) { return Depth{{0, 0}, {-1, -1}, 0, std::move(fs)}; }

  bool operator==(const Depth&) const = default;
  std::string str() const;
};

/// Depth union / comparison per action kind.
Depth join_depth(const ActionPtr& action, const Depth& a, const Depth& b);
bool depth_covers(const ActionPtr& action, const Depth& big, const Depth& small);
/// Grow a depth symmetrically: widen shift windows by `amount` on each side,
/// add `amount` odometer levels (no-op for finite actions).
Depth grow_depth(const ActionPtr& action, const Depth& d, int amount);

struct AtomCapExceeded : std::runtime_error {
  explicit AtomCapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

constexpr std::size_t kDefaultAtomCap = std::size_t{1} << 16;

/// Finite Boolean algebra at a resolution: the ordered list of atoms.
/// Atom descriptors: shift = symbol pattern over the window (row-major);
/// odometer = digit string (level 1 first); finite = single point index;
/// product = tuple of factor atom indices.
class Partition {
 public:
  ActionPtr action;
  Depth depth;
  std::vector<std::vector<int>> atoms;
  std::vector<Partition> factor_parts;  // products only

  std::size_t size() const { return atoms.size(); }

  /// Membership vector of an expression over the atoms. Throws if the depth
  /// does not cover the expression's minimal depth.
  std::vector<char> eval(const ExprPtr& e) const;

  /// Exact case: the permutation of atom indices induced by the word, or
  /// nullopt when the word does not permute this algebra (shift windows).
  std::optional<std::vector<int>> word_permutation(const GroupWord& w) const;

  /// Expression denoting one atom (a conjunction of cylinders).
  ExprPtr atom_expr(std::size_t atom) const;
  /// Expression for the image of one atom under a word. Exact kinds give the
  /// permuted atom; shift kinds give the translated cylinder.
  ExprPtr atom_image_expr(std::size_t atom, const GroupWord& w) const;

  std::string atom_name(std::size_t atom) const;
  int atom_index(const std::vector<int>& descriptor) const;
};

/// Canonical partition of the space at the given depth.
Partition level_partition(const ActionPtr& action, const Depth& depth,
                          std::size_t atom_cap = kDefaultAtomCap);

/// Smallest depth at which the expression is evaluable.
Depth minimal_depth(const ActionPtr& action, const ExprPtr& e);

/// Result of invariant_partition: either the partition together with the
/// atom permutation of every requested word, or a typed refusal.
struct InvariantPartition {
  Partition partition;
  std::vector<std::vector<int>> permutations;  // one per word, same order
};
struct InvariantRefusal {
  std::string reason;
};

/// Partition at >= depth on which every word acts by permuting atoms
/// (odometers and finite actions: always; shift kinds: refusal).
std::variant<InvariantPartition, InvariantRefusal> invariant_partition(
    const ActionPtr& action, const std::vector<GroupWord>& words, const Depth& depth,
    std::size_t atom_cap = kDefaultAtomCap);

struct AtomImage {
  std::size_t source;
  GroupWord word;
  std::optional<std::size_t> exact_image;  // exact case
  ExprPtr cylinder;                        // shift case: translated-window cylinder
  std::vector<std::size_t> refined_atoms;  // decomposition in a caller-supplied partition
};

/// Image of one atom under a word; in the shift case the image is returned
/// as a cylinder plus its decomposition into atoms of `fine` (when given).
AtomImage atom_image(const ActionPtr& action, const GroupWord& w, const Partition& p,
                     std::size_t atom, const Partition* fine = nullptr);

}  // namespace clopen
