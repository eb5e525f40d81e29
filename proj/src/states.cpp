#include "clopenlab/states.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

namespace clopen {

namespace {

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r) << "/" << boost::multiprecision::denominator(r);
  return os.str();
}

void add_row(MeasurePolytope& mp, std::vector<Rat> row, Rat rhs) {
  bool all_zero = rhs == 0;
  for (auto& v : row)
    if (v != 0) {
      all_zero = false;
      break;
    }
  if (!all_zero) {
    mp.A.push_back(std::move(row));
    mp.b.push_back(std::move(rhs));
  }
}

// invariance rows p(a) = p(perm(a)) for one atom permutation
void add_perm_rows(MeasurePolytope& mp, const std::vector<int>& perm) {
  std::size_t n = mp.partition.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (static_cast<std::size_t>(perm[a]) == a) continue;
    std::vector<Rat> row(n, 0);
    row[a] += 1;
    row[perm[a]] -= 1;
    add_row(mp, std::move(row), 0);
  }
}

// d=1 shift: for every (n-1)-block u, sum over atoms with prefix u equals
// sum over atoms with suffix u (stationarity of the marginal)
void add_block_rows_1d(MeasurePolytope& mp) {
  const auto& atoms = mp.partition.atoms;
  std::size_t n = atoms.empty() ? 0 : atoms[0].size();
  if (n < 2) return;
  std::map<std::vector<int>, std::vector<Rat>> rows;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    std::vector<int> pre(atoms[i].begin(), atoms[i].end() - 1);
    std::vector<int> suf(atoms[i].begin() + 1, atoms[i].end());
    rows.try_emplace(pre, std::vector<Rat>(atoms.size(), 0)).first->second[i] += 1;
    rows.try_emplace(suf, std::vector<Rat>(atoms.size(), 0)).first->second[i] -= 1;
  }
  for (auto& [u, row] : rows) add_row(mp, std::move(row), 0);
}

// d=2 window: marginal of dropping the last column equals dropping the
// first column, and likewise for rows
void add_block_rows_2d(MeasurePolytope& mp) {
  const Depth& d = mp.partition.depth;
  int w0 = d.hi[0] - d.lo[0] + 1, w1 = d.hi[1] - d.lo[1] + 1;
  const auto& atoms = mp.partition.atoms;
  auto overlap_rows = [&](bool horizontal) {
    int uw0 = horizontal ? w0 - 1 : w0;
    int uw1 = horizontal ? w1 : w1 - 1;
    if (uw0 < 1 || uw1 < 1 || (horizontal ? w0 : w1) < 2) return;
    std::map<std::vector<int>, std::vector<Rat>> rows;
    auto sub = [&](const std::vector<int>& pat, int offx, int offy) {
      std::vector<int> u(static_cast<std::size_t>(uw0) * uw1);
      for (int y = 0; y < uw1; ++y)
        for (int x = 0; x < uw0; ++x) u[y * uw0 + x] = pat[(y + offy) * w0 + (x + offx)];
      return u;
    };
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      auto lead = sub(atoms[i], 0, 0);
      auto trail = sub(atoms[i], horizontal ? 1 : 0, horizontal ? 0 : 1);
      rows.try_emplace(lead, std::vector<Rat>(atoms.size(), 0)).first->second[i] += 1;
      rows.try_emplace(trail, std::vector<Rat>(atoms.size(), 0)).first->second[i] -= 1;
    }
    for (auto& [u, row] : rows) add_row(mp, std::move(row), 0);
  };
  overlap_rows(true);
  overlap_rows(false);
}

// product with one d=1 shift factor: for each shift (n-1)-block u and each
// tuple rho of the other factors, sum p(u ., rho) = sum p(. u, pi(rho))
// where pi is the permutation the generator induces on the other factors
void add_product_shift_rows(MeasurePolytope& mp, int sf, const GroupWord& gen) {
  const Partition& p = mp.partition;
  const auto& atoms = p.atoms;
  // rows are keyed by (u, rho); the trailing side bins an atom with others
  // sigma under rho = pi^{-1}(sigma), so invert the induced permutations
  std::vector<std::optional<std::vector<int>>> perms(p.factor_parts.size());
  for (std::size_t f = 0; f < p.factor_parts.size(); ++f) {
    if (static_cast<int>(f) == sf) continue;
    auto fwd = p.factor_parts[f].word_permutation(gen);
    if (!fwd) continue;
    std::vector<int> inv(fwd->size());
    for (std::size_t a = 0; a < fwd->size(); ++a) inv[(*fwd)[a]] = static_cast<int>(a);
    perms[f] = std::move(inv);
  }
  const auto& satoms = p.factor_parts[sf].atoms;
  std::size_t n = satoms.empty() ? 0 : satoms[0].size();
  if (n < 2) {
    // length-1 window: only the cross-factor invariance survives trivially
    return;
  }
  // key: (block u, tuple rho) with rho living on the non-shift coordinates
  std::map<std::vector<int>, std::vector<Rat>> rows;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto& spat = satoms[atoms[i][sf]];
    std::vector<int> pre(spat.begin(), spat.end() - 1), suf(spat.begin() + 1, spat.end());
    std::vector<int> key_pre = pre, key_suf = suf;
    for (std::size_t f = 0; f < p.factor_parts.size(); ++f) {
      if (static_cast<int>(f) == sf) continue;
      key_pre.push_back(atoms[i][f]);
      // the trailing sum pairs block u at shifted position with pi(rho)
      key_suf.push_back(perms[f] ? (*perms[f])[atoms[i][f]] : atoms[i][f]);
    }
    rows.try_emplace(key_pre, std::vector<Rat>(atoms.size(), 0)).first->second[i] += 1;
    rows.try_emplace(key_suf, std::vector<Rat>(atoms.size(), 0)).first->second[i] -= 1;
  }
  for (auto& [u, row] : rows) add_row(mp, std::move(row), 0);
}

bool has_shift_factor(const ActionSpec& a, int& idx) {
  auto* pr = a.as_product();
  if (!pr) return false;
  for (std::size_t i = 0; i < pr->factors.size(); ++i)
    if (pr->factors[i]->is_shift_kind()) {
      idx = static_cast<int>(i);
      return true;
    }
  return false;
}

}  // namespace

MeasurePolytope build_polytope(const ActionPtr& action, const Depth& depth,
                               std::size_t atom_cap) {
  MeasurePolytope mp;
  mp.partition = level_partition(action, depth, atom_cap);
  std::size_t n = mp.partition.size();
  add_row(mp, std::vector<Rat>(n, 1), 1);  // total mass

  int sf = -1;
  if (action->is_shift_kind()) {
    if (action->shift_dim() == 1) {
      add_block_rows_1d(mp);
      mp.exact = true;
    } else {
      add_block_rows_2d(mp);
      mp.exact = false;
    }
    return mp;
  }
  if (has_shift_factor(*action, sf)) {
    GroupSchema schema = action->schema();
    for (int g = 0; g < schema.rank; ++g)
      add_product_shift_rows(mp, sf, GroupWord::generator(g));
    mp.exact = false;
    return mp;
  }
  // exact kinds: per-generator permutation invariance
  std::vector<GroupWord> gens;
  for (auto& w : word_ball(action->schema(), 1))
    if (!(w == GroupWord::identity())) gens.push_back(w);
  for (auto& g : gens) {
    auto perm = mp.partition.word_permutation(g);
    if (!perm) throw std::logic_error("exact kind without atom permutation");
    add_perm_rows(mp, *perm);
  }
  mp.exact = true;
  return mp;
}

namespace {

StateReport optimize_over(const MeasurePolytope& mp, const std::vector<Rat>& c,
                          const Depth& depth) {
  LPResult r = solve_lp_max(mp.A, mp.b, c);
  if (!verify_lp(mp.A, mp.b, c, r)) throw std::logic_error("LP certificate failed re-verification");
  StateReport rep;
  rep.status = r.status;
  rep.value = r.value;
  rep.vertex = r.x;
  rep.farkas = r.farkas;
  rep.depth = depth;
  rep.exact = mp.exact;
  return rep;
}

}  // namespace

StateReport comparison_gap(const ActionPtr& action, const ExprPtr& A, const ExprPtr& B,
                           const Depth& depth) {
  Depth d = join_depth(action, depth,
                       join_depth(action, minimal_depth(action, A), minimal_depth(action, B)));
  MeasurePolytope mp = build_polytope(action, d);
  auto ba = mp.partition.eval(A);
  auto bb = mp.partition.eval(B);
  std::vector<Rat> c(mp.partition.size(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rat(static_cast<int>(ba[i]) - bb[i]);
  StateReport rep = optimize_over(mp, c, d);
  if (rep.status == LPResult::Status::Infeasible) {
    rep.conclusive = false;
    rep.note = "infeasible polytope (hard error for amenable kinds)";
  } else {
    rep.conclusive = mp.exact || rep.value < 0;
    rep.note = rep.value < 0 ? "comparison premise certified: mu(A) < mu(B) for all states"
                             : (mp.exact ? "some state has mu(A) >= mu(B)"
                                         : "inconclusive on an OUTER polytope");
  }
  return rep;
}

OrderUnitResult order_unit_test(const ActionPtr& action, const ExprPtr& B,
                                const SearchBudget& budget) {
  if (is_empty(action, B)) throw std::invalid_argument("order_unit_test needs nonempty B");
  ExprPtr covered = expr_empty();
  CoveringCertificate cert;
  for (auto& w : word_ball(action->schema(), budget.max_word_len)) {
    ExprPtr img = apply_word(action, B, w);
    if (set_subseteq(action, img, covered)) continue;
    covered = expr_union(covered, img);
    cert.words.push_back(w);
    if (set_subseteq(action, expr_full(), covered)) return cert;
  }
  Depth d = minimal_depth(action, B);
  for (int step = 0; step <= budget.max_depth; ++step) {
    Depth dd = grow_depth(action, d, step);
    MeasurePolytope mp;
    try {
      mp = build_polytope(action, dd);
    } catch (const AtomCapExceeded&) {
      break;
    }
    auto bits = mp.partition.eval(B);
    std::vector<Rat> c(mp.partition.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = bits[i] ? Rat(-1) : Rat(0);
    StateReport rep = optimize_over(mp, c, dd);  // maximizes -mu(B)
    rep.value = -rep.value;
    if (rep.status == LPResult::Status::Optimal && rep.value == 0 && mp.exact) {
      rep.conclusive = true;
      rep.note = "state with mu(B) = 0: B is not an order unit";
      return ZeroMeasureState{rep};
    }
    if (dd == grow_depth(action, d, step + 1)) break;  // finite kinds
  }
  return Exhausted{"no covering found and every tested state gives mu(B) > 0", budget};
}

TypeExpr type_multiple(const TypeExpr& t, int n) {
  TypeExpr out;
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (auto& [c, e] : t.summands) out.summands.emplace_back(idx++, e);
  return out;
}

ParadoxResult paradox_search(const ActionPtr& action, const TypeExpr& b, int max_n,
                             const SearchBudget& budget) {
  if (b.is_zero()) throw std::invalid_argument("paradox_search needs nonzero b");
  for (int n = 1; n <= max_n; ++n) {
    auto r = type_leq(action, type_multiple(b, n + 1), type_multiple(b, n), budget);
    if (auto* w = std::get_if<EquidecompositionWitness>(&r)) {
      std::string why;
      if (!verify_witness(action, type_multiple(b, n + 1), type_multiple(b, n), *w, &why))
        throw std::logic_error("paradox witness failed re-verification: " + why);
      return ParadoxWitness{n, *w};
    }
  }
  return NoneFound{budget, max_n};
}

std::pair<StateReport, StateReport> unique_ergodicity_gap(const ActionPtr& action,
                                                          const ExprPtr& A, const Depth& depth) {
  Depth d = join_depth(action, depth, minimal_depth(action, A));
  MeasurePolytope mp = build_polytope(action, d);
  auto bits = mp.partition.eval(A);
  std::vector<Rat> cmax(mp.partition.size(), 0), cmin(mp.partition.size(), 0);
  for (std::size_t i = 0; i < cmax.size(); ++i) {
    cmax[i] = bits[i] ? Rat(1) : Rat(0);
    cmin[i] = bits[i] ? Rat(-1) : Rat(0);
  }
  StateReport lo = optimize_over(mp, cmin, d);
  lo.value = -lo.value;
  StateReport hi = optimize_over(mp, cmax, d);
  lo.conclusive = hi.conclusive = mp.exact;
  return {lo, hi};
}

std::string state_report_json(const StateReport& r) {
  nlohmann::json j;
  switch (r.status) {
    case LPResult::Status::Optimal:
      j["status"] = "optimal";
      break;
    case LPResult::Status::Infeasible:
      j["status"] = "infeasible";
      break;
    case LPResult::Status::Unbounded:
      j["status"] = "unbounded";
      break;
  }
  j["value"] = rat_str(r.value);
  j["vertex"] = nlohmann::json::array();
  for (auto& v : r.vertex) j["vertex"].push_back(rat_str(v));
  if (!r.farkas.empty()) {
    j["farkas"] = nlohmann::json::array();
    for (auto& v : r.farkas) j["farkas"].push_back(rat_str(v));
  }
  j["depth"] = r.depth.str();
  j["polytope"] = r.exact ? "EXACT" : "OUTER";
  j["conclusive"] = r.conclusive;
  j["note"] = r.note;
  return j.dump();
}

}  // namespace clopen
