#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace clopen {

using Rat = boost::multiprecision::cpp_rational;

/// maximize c.x subject to A x = b, x >= 0, in exact rational arithmetic
/// (two-phase simplex, Bland's rule, no tolerances).
struct LPResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Rat value = 0;
  std::vector<Rat> x;
  /// Infeasible case: y with y.A >= 0 componentwise and y.b < 0.
  std::vector<Rat> farkas;
};

LPResult solve_lp_max(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
                      const std::vector<Rat>& c);

/// Arithmetic re-verification of a result against the inputs: optimal points
/// satisfy the constraints and reproduce the value; Farkas certificates
/// satisfy y.A >= 0, y.b < 0.
bool verify_lp(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
               const std::vector<Rat>& c, const LPResult& r);

}  // namespace clopen
