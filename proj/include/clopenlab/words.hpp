#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace clopen {

/// Schema of the acting group: either a free abelian group Z^rank (generators
/// g0..g{rank-1}) or a finite group given by its multiplication table
/// (element 0 is the identity; every element is a generator).
struct GroupSchema {
  enum class Kind { FreeAbelian, FiniteTable };
  Kind kind = Kind::FreeAbelian;
  int rank = 1;
  std::vector<std::vector<int>> table;  // FiniteTable only

  int order() const { return static_cast<int>(table.size()); }
  int multiply(int a, int b) const { return table.at(a).at(b); }
  int inverse(int a) const;
  bool operator==(const GroupSchema&) const = default;
};

/// A word in the acting group: a sequence of (generator index, exponent +-1).
/// The empty word is the identity.
struct GroupWord {
  std::vector<std::pair<int, int>> letters;

  static GroupWord identity() { return {}; }
  static GroupWord generator(int g, int exp = 1);
  /// Z^d word with the given displacement vector.
  static GroupWord displacement(const std::vector<int>& disp);

  bool is_identity_letterwise() const { return letters.empty(); }
  int length() const { return static_cast<int>(letters.size()); }

  GroupWord concat(const GroupWord& other) const;
  GroupWord inverse() const;

  /// Exponent vector for abelian schemas (size = rank).
  std::vector<int> abelian_displacement(int rank) const;
  /// Resolve to a group element for finite schemas.
  int finite_element(const GroupSchema& schema) const;

  /// Canonical normal form: abelian words are sorted by generator with merged
  /// exponents; finite words are left as-is (normal form is the element).
  GroupWord normal_form(const GroupSchema& schema) const;

  std::string str() const;
  static GroupWord parse(const std::string& text);

  bool operator==(const GroupWord&) const = default;
};

/// Enumerate the word ball of radius max_len, identity first, then
/// length-lexicographic. For abelian schemas the ball is
/// {v : sum|v_i| <= max_len}, one canonical word per element; for finite
/// schemas it is every group element reachable by words of length <= max_len.
std::vector<GroupWord> word_ball(const GroupSchema& schema, int max_len);

}  // namespace clopen
