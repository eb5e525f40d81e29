#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "clopenlab/words.hpp"

namespace clopen {

struct ActionSpec;

/// A forbidden pattern: list of (dx, dy, symbol) cells. For dimension 1 the
/// dy entries are all 0.
struct ForbiddenPattern {
  std::vector<std::array<int, 3>> cells;
};

struct FullShiftSpec {
  int alphabet = 2;
  int dim = 1;  // 1 or 2
};

struct SubshiftSpec {
  int alphabet = 2;
  int dim = 1;
  std::vector<ForbiddenPattern> forbidden;
  bool at_most_one_one = false;  // builtin: at most one coordinate carries symbol 1
};

/// Adding machine on prod_i Z/b_i. `entries` lists the base sequence; the
/// final `period_len` entries repeat forever.
struct OdometerSpec {
  std::vector<int> entries{2};
  int period_len = 1;

  int base(int level) const {  // level is 0-based here
    int n = static_cast<int>(entries.size());
    if (level < n) return entries[level];
    return entries[n - period_len + (level - n) % period_len];
  }
};

struct FiniteActionSpec {
  int points = 1;
  std::vector<std::vector<int>> group_table;   // g x g
  std::vector<std::vector<int>> action_table;  // g x points
};

struct ProductSpec {
  std::vector<std::shared_ptr<const ActionSpec>> factors;
};

struct ActionSpec {
  std::variant<FullShiftSpec, SubshiftSpec, OdometerSpec, FiniteActionSpec, ProductSpec> v;

  const FullShiftSpec* as_full_shift() const { return std::get_if<FullShiftSpec>(&v); }
  const SubshiftSpec* as_subshift() const { return std::get_if<SubshiftSpec>(&v); }
  const OdometerSpec* as_odometer() const { return std::get_if<OdometerSpec>(&v); }
  const FiniteActionSpec* as_finite() const { return std::get_if<FiniteActionSpec>(&v); }
  const ProductSpec* as_product() const { return std::get_if<ProductSpec>(&v); }

  bool is_shift_kind() const { return as_full_shift() || as_subshift(); }
  int shift_dim() const;
  int alphabet_size() const;  // shift kinds only
  std::string kind_name() const;

  /// Shared group schema. Shifts: Z^dim. Odometer: Z. Finite: the table.
  /// Product: the common schema of all factors (must agree).
  GroupSchema schema() const;

  /// Validates tables, bases and patterns; throws std::invalid_argument.
  void validate() const;
};

using ActionPtr = std::shared_ptr<const ActionSpec>;

ActionPtr make_full_shift(int alphabet, int dim = 1);
ActionPtr make_subshift(int alphabet, int dim, std::vector<ForbiddenPattern> forbidden);
ActionPtr make_at_most_one_one(int dim = 1);
ActionPtr make_odometer(std::vector<int> entries, int period_len = 1);
ActionPtr make_finite_action(std::vector<std::vector<int>> group_table,
                             std::vector<std::vector<int>> action_table);
ActionPtr make_product(std::vector<ActionPtr> factors);

/// Parse an action spec from the structured key/value text format:
///   kind: odometer          kind: product
///   base: 2                 factors { kind: subshift ... }
///                           factors { kind: odometer ... }
/// Recognized fields: kind, alphabet, dimension, forbidden, base, points,
/// group_table, action_table, factors.
ActionPtr parse_action_spec(const std::string& text);
ActionPtr load_action_spec(const std::string& path);

}  // namespace clopen
