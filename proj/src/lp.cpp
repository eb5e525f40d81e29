#include "clopenlab/lp.hpp"

#include <stdexcept>

namespace clopen {

namespace {

// Dense tableau simplex. Columns: n originals, then m artificials, then rhs.
struct Tableau {
  std::size_t n, m;
  std::vector<std::vector<Rat>> row;  // m rows, n+m+1 entries
  std::vector<std::size_t> basis;     // basis[i] = column basic in row i

  Rat& rhs(std::size_t i) { return row[i][n + m]; }

  void pivot(std::size_t r, std::size_t col) {
    Rat p = row[r][col];
    for (auto& v : row[r]) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || row[i][col] == 0) continue;
      Rat f = row[i][col];
      for (std::size_t j = 0; j <= n + m; ++j) row[i][j] -= f * row[r][j];
    }
    basis[r] = col;
  }

  // Bland: entering = lowest-index column with positive reduced cost;
  // leaving = min ratio, lowest row on ties. cost has n+m entries.
  // Returns false on unboundedness.
  bool optimize(const std::vector<Rat>& cost, bool allow_artificial_entering) {
    for (;;) {
      // reduced costs via the basic cost multipliers
      std::size_t enter = n + m;
      std::size_t cols = allow_artificial_entering ? n + m : n;
      for (std::size_t j = 0; j < cols; ++j) {
        bool basic = false;
        for (std::size_t i = 0; i < m && !basic; ++i) basic = basis[i] == j;
        if (basic) continue;
        Rat red = cost[j];
        for (std::size_t i = 0; i < m; ++i) red -= cost[basis[i]] * row[i][j];
        if (red > 0) {
          enter = j;
          break;
        }
      }
      if (enter == n + m) return true;
      std::size_t leave = m;
      Rat best = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (row[i][enter] <= 0) continue;
        Rat ratio = rhs(i) / row[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LPResult solve_lp_max(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
                      const std::vector<Rat>& c) {
  std::size_t m = A.size(), n = c.size();
  for (auto& r : A)
    if (r.size() != n) throw std::invalid_argument("LP row length mismatch");
  if (b.size() != m) throw std::invalid_argument("LP rhs length mismatch");

  Tableau t;
  t.n = n;
  t.m = m;
  t.row.assign(m, std::vector<Rat>(n + m + 1, 0));
  t.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    Rat sign = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t.row[i][j] = sign * A[i][j];
    t.row[i][n + i] = 1;
    t.rhs(i) = sign * b[i];
    t.basis[i] = n + i;
  }

  // phase 1: maximize -(sum of artificials)
  std::vector<Rat> phase1(n + m, 0);
  for (std::size_t j = n; j < n + m; ++j) phase1[j] = -1;
  t.optimize(phase1, true);
  Rat infeas = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis[i] >= n) infeas += t.rhs(i);
  LPResult res;
  if (infeas > 0) {
    res.status = LPResult::Status::Infeasible;
    // y = cB . B^{-1}; the inverse columns sit under the artificial block,
    // then undo the row sign flips
    res.farkas.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      Rat y = 0;
      for (std::size_t k = 0; k < m; ++k)
        if (t.basis[k] >= n) y -= t.row[k][n + i];
      res.farkas[i] = b[i] < 0 ? -y : y;
    }
    // the certificate proves y.b < 0; flip so the convention matches
    Rat yb = 0;
    for (std::size_t i = 0; i < m; ++i) yb += res.farkas[i] * b[i];
    if (yb > 0)
      for (auto& v : res.farkas) v = -v;
    return res;
  }

  // drive any zero-level artificials out of the basis
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j)
      if (t.row[i][j] != 0) {
        col = j;
        break;
      }
    if (col < n) t.pivot(i, col);
    // all-zero over originals: redundant row, harmless to leave in place
  }

  std::vector<Rat> phase2(n + m, 0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  if (!t.optimize(phase2, false)) {
    res.status = LPResult::Status::Unbounded;
    return res;
  }
  res.status = LPResult::Status::Optimal;
  res.x.assign(n, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis[i] < n) res.x[t.basis[i]] = t.rhs(i);
  res.value = 0;
  for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  return res;
}

bool verify_lp(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
               const std::vector<Rat>& c, const LPResult& r) {
  std::size_t m = A.size(), n = c.size();
  if (r.status == LPResult::Status::Optimal) {
    if (r.x.size() != n) return false;
    for (auto& v : r.x)
      if (v < 0) return false;
    for (std::size_t i = 0; i < m; ++i) {
      Rat lhs = 0;
      for (std::size_t j = 0; j < n; ++j) lhs += A[i][j] * r.x[j];
      if (lhs != b[i]) return false;
    }
    Rat val = 0;
    for (std::size_t j = 0; j < n; ++j) val += c[j] * r.x[j];
    return val == r.value;
  }
  if (r.status == LPResult::Status::Infeasible) {
    if (r.farkas.size() != m) return false;
    Rat yb = 0;
    for (std::size_t i = 0; i < m; ++i) yb += r.farkas[i] * b[i];
    if (yb >= 0) return false;
    for (std::size_t j = 0; j < n; ++j) {
      Rat col = 0;
      for (std::size_t i = 0; i < m; ++i) col += r.farkas[i] * A[i][j];
      if (col < 0) return false;
    }
    return true;
  }
  return true;  // unboundedness is not certified beyond the solver run
}

}  // namespace clopen
