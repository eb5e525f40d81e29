// Acceptance harness: one pass/fail line per criterion. Criterion 8 is
// exploratory and report-only. Exit status covers criteria 1-7.

#include <chrono>
#include <iostream>
#include <map>
#include <sstream>

#include "clopenlab/monoid.hpp"
#include "clopenlab/states.hpp"
#include "clopenlab/unit_systems.hpp"
#include "clopenlab/zsubset.hpp"

using namespace clopen;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SearchBudget budget(int wordlen, int depth, double time_cap = 3.0) {
  SearchBudget b;
  b.max_word_len = wordlen;
  b.max_depth = depth;
  b.max_nodes = 50000;
  b.time_cap_s = time_cap;
  return b;
}

ExprPtr mask_expr(const Partition& p, unsigned mask) {
  ExprPtr e = expr_empty();
  for (std::size_t k = 0; k < p.size(); ++k)
    if (mask & (1u << k)) e = expr_union(e, p.atom_expr(k));
  return e;
}

// 1. Dyadic odometer comparison completeness at level 3: gap < 0 implies a
// subequidecomposition witness within word length 8 and depth 6, <= 60 s.
Outcome criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  ActionPtr a = make_odometer({2});
  MeasurePolytope poly = build_polytope(a, Depth::odometer_level(3));
  const Partition& part = poly.partition;
  if (part.size() != 8 || !poly.exact) return {false, "level-3 polytope malformed"};

  // the gap depends only on the symmetric-difference objective
  std::map<std::pair<unsigned, unsigned>, Rat> gap_memo;
  auto gap = [&](unsigned aonly, unsigned bonly) -> Rat {
    auto key = std::make_pair(aonly, bonly);
    if (auto it = gap_memo.find(key); it != gap_memo.end()) return it->second;
    std::vector<Rat> c(part.size(), 0);
    for (std::size_t k = 0; k < part.size(); ++k) {
      if (aonly & (1u << k)) c[k] = 1;
      if (bonly & (1u << k)) c[k] = -1;
    }
    LPResult r = solve_lp_max(poly.A, poly.b, c);
    if (r.status != LPResult::Status::Optimal) throw std::logic_error("level-3 LP not optimal");
    return gap_memo[key] = r.value;
  };

  SearchBudget b = budget(8, 6);
  long comparable = 0, witnessed = 0;
  for (unsigned A = 0; A < 256; ++A)
    for (unsigned B = 0; B < 256; ++B) {
      if (gap(A & ~B, B & ~A) >= 0) continue;
      ++comparable;
      auto res = subequidecompose(a, mask_expr(part, A), mask_expr(part, B), b);
      if (std::holds_alternative<EquidecompositionWitness>(res)) ++witnessed;
    }
  double dt = seconds_since(t0);
  std::ostringstream os;
  os << witnessed << "/" << comparable << " gap<0 pairs witnessed in " << dt << " s";
  return {witnessed == comparable && dt <= 60.0, os.str()};
}

// 2. Tarski consistency: no b in the corpus carries both a paradox witness
// and an exact state with mu(b) = 1.
Outcome criterion2() {
  struct Item {
    ActionPtr a;
    std::string b;
    Depth d;
  };
  std::vector<Item> corpus = {
      {make_odometer({2}), "X", Depth::odometer_level(2)},
      {make_odometer({2}), "[0]@L1", Depth::odometer_level(2)},
      {make_odometer({2}), "[0]@L1 & [0]@L2", Depth::odometer_level(2)},
      {make_full_shift(2, 1), "X", Depth::window(0, 2)},
      {make_full_shift(2, 1), "[0]@0", Depth::window(0, 2)},
      {make_at_most_one_one(1), "X", Depth::window(0, 2)},
      {make_at_most_one_one(1), "~[1]@0", Depth::window(0, 2)},
      {make_finite_action({{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}), "[0]@0 | [1]@0",
       Depth::trivial()},
  };
  int both = 0, paradoxes = 0, full_states = 0;
  for (auto& item : corpus) {
    ExprPtr e = parse_clopen(item.b);
    bool paradox = std::holds_alternative<ParadoxWitness>(
        paradox_search(item.a, TypeExpr::single(e), 3, budget(3, 4, 1.0)));
    auto [lo, hi] = unique_ergodicity_gap(item.a, e, item.d);
    bool state_one = hi.exact && hi.conclusive && hi.value == 1;
    paradoxes += paradox;
    full_states += state_one;
    if (paradox && state_one) ++both;
  }
  std::ostringstream os;
  os << corpus.size() << " corpus entries, " << paradoxes << " paradoxes, " << full_states
     << " full-mass states, " << both << " coincidences";
  return {both == 0, os.str()};
}

// 3. Weiss obstruction: exact truncation densities for m <= 8 and Hall
// violations for S = [-L, L], L in {1,2,3}, window 2^12, <= 30 s.
Outcome criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  for (int m = 1; m <= 8; ++m) {
    auto [lo, hi] = density_bounds(ZSubsetSpec::weiss(m), 4096);
    Rational expect = Rational(1, 2) - Rational(1, std::int64_t(1) << (m + 1));
    if (lo != expect || hi != expect)
      return {false, "density of weiss:" + std::to_string(m) + " is " + lo.str() + ".." +
                         hi.str() + ", expected " + expect.str()};
  }
  ZSubsetSpec A = ZSubsetSpec::weiss(8);
  ZSubsetSpec B = ZSubsetSpec::complement_of(ZSubsetSpec::weiss(8));
  for (std::int64_t L = 1; L <= 3; ++L) {
    std::vector<std::int64_t> shifts;
    for (std::int64_t s = -L; s <= L; ++s) shifts.push_back(s);
    auto res = zsubset_equidecompose(A, B, shifts, 4096);
    if (!std::holds_alternative<HallViolation>(res))
      return {false, "no Hall violation for L = " + std::to_string(L)};
  }
  double dt = seconds_since(t0);
  return {dt <= 30.0, "densities m<=8 exact, Hall violations L=1..3, " +
                          std::to_string(dt) + " s"};
}

std::vector<std::vector<int>> perm_closure(std::vector<std::vector<int>> gens, std::size_t n) {
  std::vector<int> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = (int)i;
  std::vector<std::vector<int>> out{id};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (auto& g : gens) {
      std::vector<int> c(n);
      for (std::size_t k = 0; k < n; ++k) c[k] = g[out[i][k]];
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
  return out;
}

ActionPtr action_from_perms(std::vector<std::vector<int>> gens, std::size_t points) {
  auto elems = perm_closure(std::move(gens), points);
  std::size_t g = elems.size();
  std::vector<std::vector<int>> gt(g, std::vector<int>(g));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      std::vector<int> c(points);
      for (std::size_t k = 0; k < points; ++k) c[k] = elems[i][elems[j][k]];
      gt[i][j] = (int)(std::find(elems.begin(), elems.end(), c) - elems.begin());
    }
  return make_finite_action(gt, elems);
}

// 4. Finite actions, |group| <= 6, |points| <= 5: matching-based type_leq,
// the per-orbit counting criterion, and brute-force injection search agree
// on every subset pair; induced presentations are unperforated and
// cancellative at bound 4.
Outcome criterion4() {
  std::vector<ActionPtr> corpus = {
      action_from_perms({{0, 1, 2}}, 3),              // trivial on 3 points
      action_from_perms({{1, 0}}, 2),                 // C2
      action_from_perms({{1, 0, 2}}, 3),              // C2 with a fixed point
      action_from_perms({{1, 0, 3, 2}}, 4),           // C2, two 2-orbits
      action_from_perms({{1, 2, 0}}, 3),              // C3
      action_from_perms({{1, 2, 3, 0}}, 4),           // C4
      action_from_perms({{1, 2, 3, 4, 0}}, 5),        // C5
      action_from_perms({{1, 2, 0}, {1, 0, 2}}, 3),   // S3, order 6
      action_from_perms({{1, 0, 2, 3, 4}}, 5),        // C2 on 5 points
  };
  long pairs = 0, disagreements = 0;
  for (auto& fa : corpus) {
    auto* spec = fa->as_finite();
    std::size_t n = spec->points;
    // orbit index per point
    std::vector<int> orbit(n);
    for (std::size_t p = 0; p < n; ++p) orbit[p] = (int)p;
    for (auto& row : spec->action_table)
      for (std::size_t p = 0; p < n; ++p)
        if (orbit[row[p]] != orbit[p]) {
          int m = std::min(orbit[p], orbit[row[p]]);
          for (std::size_t q = 0; q < n; ++q)
            if (orbit[q] == orbit[p] || orbit[q] == orbit[row[p]]) orbit[q] = m;
        }
    auto closed_leq = [&](unsigned A, unsigned B) {
      for (std::size_t o = 0; o < n; ++o) {
        int ca = 0, cb = 0;
        for (std::size_t p = 0; p < n; ++p)
          if (orbit[p] == (int)o) {
            ca += (A >> p) & 1;
            cb += (B >> p) & 1;
          }
        if (ca > cb) return false;
      }
      return true;
    };
    // brute force: injective point map where images stay in the same orbit
    std::function<bool(unsigned, unsigned, std::size_t)> brute = [&](unsigned A, unsigned B,
                                                                     std::size_t p) {
      if (p == n) return true;
      if (!((A >> p) & 1)) return brute(A, B, p + 1);
      for (std::size_t q = 0; q < n; ++q)
        if (((B >> q) & 1) && orbit[q] == orbit[p] && brute(A, B & ~(1u << q), p + 1))
          return true;
      return false;
    };
    Partition part = level_partition(fa, Depth::trivial());
    for (unsigned A = 0; A < (1u << n); ++A)
      for (unsigned B = 0; B < (1u << n); ++B) {
        ++pairs;
        bool c = closed_leq(A, B);
        bool bf = brute(A, B, 0);
        bool lib = std::holds_alternative<EquidecompositionWitness>(
            subequidecompose(fa, mask_expr(part, A), mask_expr(part, B), budget(2, 2)));
        if (c != bf || bf != lib) ++disagreements;
      }
    auto pres = finite_action_type_semigroup(fa).presentation;
    for (const char* prop : {"unperforated", "cancellative"})
      if (check_property(pres, prop, 4).verdict != Verdict::HoldsWithinBound)
        return {false, std::string("induced presentation not ") + prop};
  }
  std::ostringstream os;
  os << corpus.size() << " actions, " << pairs << " subset pairs, " << disagreements
     << " disagreements";
  return {disagreements == 0, os.str()};
}

// bounded search for u - v in the integer row span of the relation matrix
bool in_span(const MonoidPresentation& p, const Vec& u, const Vec& v, int coef_bound) {
  std::vector<Vec> rows;
  for (auto& [l, r] : p.relations) {
    Vec row(p.gens);
    for (int g = 0; g < p.gens; ++g) row[g] = l[g] - r[g];
    rows.push_back(row);
  }
  Vec target(p.gens);
  for (int g = 0; g < p.gens; ++g) target[g] = u[g] - v[g];
  std::function<bool(std::size_t, Vec)> rec = [&](std::size_t i, Vec acc) {
    if (i == rows.size()) return acc == target;
    for (int k = -coef_bound; k <= coef_bound; ++k) {
      Vec next = acc;
      for (int g = 0; g < p.gens; ++g) next[g] += k * rows[i][g];
      if (rec(i + 1, next)) return true;
    }
    return false;
  };
  return rec(0, Vec(p.gens, 0));
}

// 5. Coinvariants and the Grothendieck-map injectivity criterion.
Outcome criterion5() {
  ActionPtr od = make_odometer({2});
  for (int n = 1; n <= 6; ++n) {
    auto res = coinvariants(od, Depth::odometer_level(n));
    auto* g = std::get_if<CoinvariantsGroup>(&res);
    if (!g || g->invariants.rank != 1 || !g->invariants.torsion.empty())
      return {false, "coinvariants at level " + std::to_string(n) + " is not Z"};
  }
  auto two = MonoidPresentation::parse("gens: 2\nrel: 2 0 = 0 2\n");
  GroupInvariants gi = grothendieck(two);
  if (gi.rank != 1 || gi.torsion.size() != 1 || gi.torsion[0] != 2)
    return {false, "grothendieck(2a=2b) is " + gi.str() + ", expected Z + Z/2"};

  std::vector<MonoidPresentation> corpus = {
      MonoidPresentation::parse("gens: 1\n"),
      MonoidPresentation::parse("gens: 2\n"),
      two,
      MonoidPresentation::parse("gens: 2\nrel: 1 1 = 0 1\n"),
  };
  const long long bound = 4;
  for (auto& p : corpus) {
    // enumerate vectors of total degree <= bound
    std::vector<Vec> vecs;
    std::function<void(Vec&, int, long long)> gen = [&](Vec& cur, int g, long long left) {
      if (g == p.gens) {
        vecs.push_back(cur);
        return;
      }
      for (long long k = 0; k <= left; ++k) {
        cur[g] = k;
        gen(cur, g + 1, left - k);
      }
      cur[g] = 0;
    };
    Vec cur(p.gens, 0);
    gen(cur, 0, bound);
    bool noninjective = false;
    for (std::size_t i = 0; i < vecs.size() && !noninjective; ++i)
      for (std::size_t j = i + 1; j < vecs.size() && !noninjective; ++j)
        if (in_span(p, vecs[i], vecs[j], 6) &&
            monoid_eq(p, vecs[i], vecs[j], bound) == Tri::No)
          noninjective = true;
    bool cancel_fails = check_property(p, "cancellative", bound).verdict == Verdict::Fails;
    if (noninjective != cancel_fails)
      return {false, "pi-criterion mismatch on " + p.str()};
  }
  return {true, "coinvariants = Z up to level 6, Z + Z/2, pi-criterion on 4 presentations"};
}

// 6. Monoid counterexamples at bound <= 4. For free monoids of rank >= 2 the
// property "simple" is false outright; the bounded checker honestly reports
// unknown there (a definitive failure needs unbounded multiples), so it is
// the one accepted exception.
Outcome criterion6() {
  auto absorbing = MonoidPresentation::parse("gens: 2\nrel: 1 1 = 0 1\n");
  if (check_property(absorbing, "stably-finite", 4).verdict != Verdict::Fails)
    return {false, "stable-finiteness failure not found in a+b=b"};
  auto two = MonoidPresentation::parse("gens: 2\nrel: 2 0 = 0 2\n");
  if (check_property(two, "unperforated", 4).verdict != Verdict::Fails)
    return {false, "unperforation failure not found in 2a=2b"};
  for (int rank = 1; rank <= 3; ++rank) {
    auto free = MonoidPresentation::parse("gens: " + std::to_string(rank) + "\n");
    for (auto& prop : property_catalog()) {
      auto v = check_property(free, prop, 4);
      if (rank >= 2 && prop == "simple") {
        if (v.verdict != Verdict::Unknown)
          return {false, "free rank " + std::to_string(rank) + " simple: unexpected verdict"};
        continue;
      }
      if (v.verdict != Verdict::HoldsWithinBound)
        return {false, "free rank " + std::to_string(rank) + " fails " + prop};
    }
  }
  return {true, "expected counterexamples and free-monoid verdicts (rank>=2 simple: unknown)"};
}

// 7. Krieger extension over the dyadic ladder 1 -> 2 -> 3 plus the ample
// ladder step on ([0],[1],+1), <= 10 s.
Outcome criterion7() {
  auto t0 = std::chrono::steady_clock::now();
  ActionPtr od = make_odometer({2});
  CompatibilityOracle oracle(od, budget(7, 3));
  std::vector<UnitSystem> ladder;
  for (int n = 1; n <= 3; ++n) {
    Partition p = level_partition(od, Depth::odometer_level(n));
    FiniteAlgebra alg{od, {}};
    for (std::size_t k = 0; k < p.size(); ++k) alg.atoms.push_back(p.atom_expr(k));
    ladder.push_back(young_system(alg, oracle));
  }
  auto rep = conjugate_construct(oracle, ladder, 2);
  if (!rep.error.empty()) return {false, "krieger: " + rep.error};
  if (rep.steps_completed != 2 || !rep.verified)
    return {false, "krieger: conjugation not verified"};

  UnitSystem top = ladder[0];
  auto w = oracle.equivalent(parse_clopen("[0]@L1"), parse_clopen("[1]@L1"));
  if (!w) return {false, "oracle failed on ([0],[1])"};
  auto step = ample_ladder_step(top, {{parse_clopen("[0]@L1"), parse_clopen("[1]@L1"), *w}},
                                oracle);
  int swap = step.refined.find({1, 0});
  std::string why;
  if (swap < 0 || !step.refined.realization[swap] ||
      !verify_realization(step.refined, swap, &why))
    return {false, "ample step swap not realized: " + why};
  double dt = seconds_since(t0);
  std::ostringstream os;
  os << "conjugation verified over 2 steps, swap realized, " << dt << " s";
  return {dt <= 10.0, os.str()};
}

// 8. Exploratory, report-only: bounded search for [X] <= [A] on the product
// of the at-most-one-1 subshift with the dyadic odometer, A the complement
// of the 1-column.
Outcome criterion8() {
  ActionPtr prod = make_product({make_at_most_one_one(1), make_odometer({2})});
  TypeExpr X = TypeExpr::single(expr_full());
  TypeExpr A = TypeExpr::single(parse_clopen("~[1]@0"));
  std::ostringstream os;
  for (auto [wl, d] : {std::pair{2, 2}, std::pair{3, 3}}) {
    auto res = type_leq(prod, X, A, budget(wl, d));
    if (auto* w = std::get_if<EquidecompositionWitness>(&res))
      os << "budget (" << wl << "," << d << "): witness with " << w->pieces.size()
         << " pieces; ";
    else
      os << "budget (" << wl << "," << d
         << "): unknown (" << std::get<Exhausted>(res).reason << "); ";
  }
  return {true, os.str()};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*run)();
    bool gating;
  };
  Entry entries[] = {
      {"1 odometer comparison completeness", criterion1, true},
      {"2 Tarski consistency", criterion2, true},
      {"3 Weiss obstruction", criterion3, true},
      {"4 finite-action oracle equivalence", criterion4, true},
      {"5 coinvariants and pi-criterion", criterion5, true},
      {"6 monoid counterexamples", criterion6, true},
      {"7 Krieger/ample machinery", criterion7, true},
      {"8 exploratory stable-finiteness search", criterion8, false},
  };
  int failures = 0;
  for (auto& e : entries) {
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const char* tag = e.gating ? (o.pass ? "PASS" : "FAIL") : "REPORT";
    std::cout << "criterion " << e.name << ": " << tag << " - " << o.detail << std::endl;
    if (e.gating && !o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
