#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "clopenlab/monoid.hpp"
#include "clopenlab/states.hpp"
#include "clopenlab/unit_systems.hpp"
#include "clopenlab/zsubset.hpp"

using namespace clopen;
using nlohmann::json;

namespace {

constexpr const char* kSchema = "clopen-lab/1";
constexpr const char* kVersion = "clopen 1.0";

struct Options {
  std::string action_path;
  std::string A, B;
  int depth = 2;
  int wordlen = 3;
  int bound = 4;
  std::string shifts = "-1,0,1";
  std::int64_t window = 4096;
  int jobs = 1;
  bool verify = false;
  std::string json_out;
  // monoid-check
  int gens = 0;
  std::vector<std::string> rels;
  std::string property;
};

std::string rat_str(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

ActionPtr load_action(const Options& o) {
  if (o.action_path.empty()) throw std::invalid_argument("--action is required");
  return load_action_spec(o.action_path);
}

Depth depth_for(const ActionPtr& a, int n) {
  if (n < 1) throw std::invalid_argument("--depth must be >= 1");
  if (a->as_odometer()) return Depth::odometer_level(n);
  if (a->is_shift_kind())
    return a->shift_dim() == 2 ? Depth::box(0, n - 1, 0, n - 1) : Depth::window(0, n - 1);
  if (auto* pr = a->as_product()) {
    std::vector<Depth> fs;
    for (auto& f : pr->factors) fs.push_back(depth_for(std::make_shared<ActionSpec>(*f), n));
    return Depth::product(std::move(fs));
  }
  return Depth::trivial();
}

SearchBudget budget_of(const Options& o) {
  SearchBudget b;
  b.max_word_len = o.wordlen;
  b.max_depth = o.depth;
  return b;
}

std::vector<std::int64_t> parse_shifts(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoll(tok));
  }
  if (out.empty()) throw std::invalid_argument("--shifts: empty shift set");
  return out;
}

json base_report(const std::string& command, const Options& o) {
  json j;
  j["schema"] = kSchema;
  j["version"] = kVersion;
  j["command"] = command;
  json cfg;
  if (!o.action_path.empty()) cfg["action"] = o.action_path;
  if (!o.A.empty()) cfg["A"] = o.A;
  if (!o.B.empty()) cfg["B"] = o.B;
  cfg["depth"] = o.depth;
  cfg["wordlen"] = o.wordlen;
  cfg["bound"] = o.bound;
  cfg["jobs"] = o.jobs;
  cfg["verify"] = o.verify;
  j["config"] = cfg;
  return j;
}

int finish(json& report, const Options& o) {
  if (!o.json_out.empty()) {
    std::ofstream out(o.json_out);
    if (!out) throw std::invalid_argument("cannot open --json-out path " + o.json_out);
    out << report.dump(2) << "\n";
  }
  std::cout << report["command"].get<std::string>() << ": "
            << report["verdict"].get<std::string>() << "\n";
  if (report.contains("summary"))
    std::cout << report["summary"].get<std::string>() << "\n";
  if (o.json_out.empty()) std::cout << report.dump(2) << "\n";
  return 0;
}

json witness_json(const EquidecompositionWitness& w) { return json::parse(witness_to_json(w)); }

int run_compare(const Options& o) {
  ActionPtr a = load_action(o);
  ExprPtr A = parse_clopen(o.A), B = parse_clopen(o.B);
  auto gap = comparison_gap(a, A, B, depth_for(a, o.depth));
  json rep = base_report("compare", o);
  rep["gap"] = json::parse(state_report_json(gap));
  rep["verdict"] = gap.conclusive ? (gap.value < 0 ? "A < B on every state" : "no comparison gap")
                                  : "inconclusive (OUTER polytope)";
  rep["summary"] = "max mu(A) - mu(B) = " + rat_str(gap.value);
  if (gap.value < 0) {
    auto res = subequidecompose(a, A, B, budget_of(o));
    if (auto* w = std::get_if<EquidecompositionWitness>(&res)) {
      rep["witness"] = witness_json(*w);
      rep["dot"] = witness_to_dot(*w);
      if (o.verify) {
        std::string why;
        if (!verify_witness(a, TypeExpr::single(A), TypeExpr::single(B), *w, &why))
          throw std::logic_error("witness failed replay: " + why);
        rep["verified"] = true;
      }
    } else {
      rep["witness"] = nullptr;
      rep["exhausted"] = std::get<Exhausted>(res).reason;
    }
  }
  return finish(rep, o);
}

int run_equidecompose(const Options& o, bool type_mode) {
  ActionPtr a = load_action(o);
  TypeExpr A = type_mode ? parse_type_expr(o.A) : TypeExpr::single(parse_clopen(o.A));
  TypeExpr B = type_mode ? parse_type_expr(o.B) : TypeExpr::single(parse_clopen(o.B));
  auto res = type_leq(a, A, B, budget_of(o));
  json rep = base_report(type_mode ? "type-leq" : "equidecompose", o);
  if (auto* w = std::get_if<EquidecompositionWitness>(&res)) {
    rep["verdict"] = w->equi ? "equidecomposable" : "subequidecomposable";
    rep["witness"] = witness_json(*w);
    rep["dot"] = witness_to_dot(*w);
    rep["summary"] = std::to_string(w->pieces.size()) + " pieces, mode " +
                     (w->equi ? "equi" : "sub");
    if (o.verify) {
      std::string why;
      if (!verify_witness(a, A, B, *w, &why))
        throw std::logic_error("witness failed replay: " + why);
      rep["verified"] = true;
    }
  } else {
    auto& ex = std::get<Exhausted>(res);
    rep["verdict"] = "unknown";
    rep["exhausted"] = ex.reason;
    rep["summary"] = "budget exhausted: " + ex.reason;
  }
  return finish(rep, o);
}

int run_measures(const Options& o) {
  ActionPtr a = load_action(o);
  ExprPtr A = parse_clopen(o.A.empty() ? "X" : o.A);
  auto [lo, hi] = unique_ergodicity_gap(a, A, depth_for(a, o.depth));
  json rep = base_report("measures", o);
  rep["min"] = json::parse(state_report_json(lo));
  rep["max"] = json::parse(state_report_json(hi));
  bool pinned = lo.value == hi.value;
  rep["verdict"] = pinned ? (lo.exact ? "measure value forced (EXACT)" : "interval collapsed (OUTER)")
                          : "interval [" + rat_str(lo.value) + ", " + rat_str(hi.value) + "]";
  rep["summary"] = "mu(A) in [" + rat_str(lo.value) + ", " + rat_str(hi.value) + "] at depth " +
                   std::to_string(o.depth);
  return finish(rep, o);
}

int run_paradox(const Options& o) {
  ActionPtr a = load_action(o);
  TypeExpr b = TypeExpr::single(parse_clopen(o.B.empty() ? "X" : o.B));
  auto res = paradox_search(a, b, o.bound, budget_of(o));
  json rep = base_report("paradox", o);
  if (auto* p = std::get_if<ParadoxWitness>(&res)) {
    rep["verdict"] = "paradoxical";
    rep["n"] = p->n;
    rep["witness"] = witness_json(p->witness);
    rep["summary"] = "(n+1) b <= n b at n = " + std::to_string(p->n);
  } else {
    auto& nf = std::get<NoneFound>(res);
    rep["verdict"] = "unknown";
    rep["summary"] = "no paradox witness up to n = " + std::to_string(nf.max_n);
  }
  return finish(rep, o);
}

int run_monoid_check(const Options& o) {
  std::string text = "gens: " + std::to_string(o.gens) + "\n";
  for (auto& r : o.rels) text += "rel: " + r + "\n";
  auto p = MonoidPresentation::parse(text);
  if (o.property.empty()) throw std::invalid_argument("--property is required");
  auto v = check_property(p, o.property, o.bound);
  json rep = base_report("monoid-check", o);
  rep["config"]["gens"] = o.gens;
  rep["config"]["rels"] = o.rels;
  rep["config"]["property"] = o.property;
  rep["verdict"] = v.verdict == Verdict::HoldsWithinBound ? "holds-within-bound"
                   : v.verdict == Verdict::Fails          ? "fails"
                                                          : "unknown";
  if (v.verdict == Verdict::Fails) {
    rep["certificate"] = v.certificate;
    json wit = json::array();
    for (auto& w : v.witness_vectors) wit.push_back(w);
    rep["witness_vectors"] = wit;
  }
  rep["summary"] = o.property + " at bound " + std::to_string(o.bound) + ": " +
                   rep["verdict"].get<std::string>();
  return finish(rep, o);
}

int run_coinvariants(const Options& o) {
  ActionPtr a = load_action(o);
  auto res = coinvariants(a, depth_for(a, o.depth));
  json rep = base_report("coinvariants", o);
  if (auto* g = std::get_if<CoinvariantsGroup>(&res)) {
    rep["verdict"] = "computed";
    rep["group"] = g->invariants.str();
    rep["rank"] = g->invariants.rank;
    json tor = json::array();
    for (auto& t : g->invariants.torsion) tor.push_back(t.str());
    rep["torsion"] = tor;
    rep["atoms"] = g->atoms;
    rep["summary"] = "H at depth " + std::to_string(o.depth) + " = " + g->invariants.str();
  } else {
    rep["verdict"] = "refused";
    rep["reason"] = std::get<std::string>(res);
    rep["summary"] = std::get<std::string>(res);
  }
  return finish(rep, o);
}

int run_zsubset(const Options& o) {
  ZSubsetSpec A = ZSubsetSpec::parse(o.A), B = ZSubsetSpec::parse(o.B);
  auto shifts = parse_shifts(o.shifts);
  auto res = zsubset_equidecompose(A, B, shifts, o.window);
  json rep = base_report("zsubset", o);
  rep["config"]["shifts"] = o.shifts;
  rep["config"]["window"] = o.window;
  auto [dlo, dhi] = density_bounds(A, o.window);
  rep["density_A"] = {rat_str(Rat(dlo)), rat_str(Rat(dhi))};
  if (auto* w = std::get_if<ZWitness>(&res)) {
    rep["verdict"] = "equidecomposable";
    json fibers = json::array();
    for (auto& [s, piece] : w->fibers) fibers.push_back({{"shift", s}, {"piece", piece.str()}});
    rep["fibers"] = fibers;
    rep["period"] = w->period;
    rep["summary"] = std::to_string(w->fibers.size()) + " fibers over period " +
                     std::to_string(w->period);
    if (o.verify) {
      std::string why;
      if (!verify_zwitness(A, B, *w, &why)) throw std::logic_error("zwitness failed replay: " + why);
      rep["verified"] = true;
    }
  } else if (auto* h = std::get_if<HallViolation>(&res)) {
    rep["verdict"] = "hall-violation";
    rep["F_size"] = h->F.size();
    rep["neighborhood_count"] = h->neighborhood_count;
    rep["F"] = h->F;
    rep["summary"] = "|F| = " + std::to_string(h->F.size()) + " with |N(F)| = " +
                     std::to_string(h->neighborhood_count);
  } else {
    auto& u = std::get<ZUnknown>(res);
    rep["verdict"] = "unknown";
    rep["reason"] = u.reason;
    rep["summary"] = u.reason;
  }
  return finish(rep, o);
}

/// Unit system with realized single-word generators on the level-`n` algebra.
UnitSystem level_system(const ActionPtr& a, int n) {
  Partition p = level_partition(a, depth_for(a, n));
  FiniteAlgebra alg{a, {}};
  for (std::size_t k = 0; k < p.size(); ++k) alg.atoms.push_back(p.atom_expr(k));
  std::vector<std::vector<int>> perms;
  std::vector<std::optional<Realization>> reals;
  for (auto& w : word_ball(a->schema(), 1)) {
    if (w == GroupWord::identity()) continue;
    auto perm = p.word_permutation(w);
    if (!perm)
      throw std::invalid_argument(
          "the action does not permute atoms at this depth; unit ladders need exact kinds");
    perms.push_back(*perm);
    reals.push_back(Realization{{{expr_full(), w}}});
  }
  return build_unit_system(alg, std::move(perms), std::move(reals));
}

int run_unit_ladder(const Options& o) {
  ActionPtr a = load_action(o);
  CompatibilityOracle oracle(a, budget_of(o));
  json rep = base_report("unit-ladder", o);
  json steps = json::array();
  UnitSystem prev;
  for (int n = 1; n <= o.depth; ++n) {
    UnitSystem cur = level_system(a, n);
    json step;
    step["level"] = n;
    step["atoms"] = cur.algebra.size();
    step["order"] = cur.order();
    if (n > 1) {
      RefinementData rd = refinement_data(prev, cur);
      step["refines"] = true;
      step["extensions"] = rd.extension;
    }
    steps.push_back(step);
    prev = std::move(cur);
  }
  rep["steps"] = steps;
  rep["verdict"] = "ladder verified";
  rep["summary"] = std::to_string(o.depth) + " levels, top order " +
                   std::to_string(prev.order());
  return finish(rep, o);
}

int run_krieger(const Options& o) {
  ActionPtr a = load_action(o);
  // level-n atoms of a rank-one action can sit up to 2^n - 1 translations apart
  SearchBudget budget = budget_of(o);
  if (a->schema().rank == 1)
    budget.max_word_len = std::max(budget.max_word_len, (1 << o.depth) - 1);
  CompatibilityOracle oracle(a, budget);
  // Krieger's construction needs transposition-rich groups, so the ladder
  // carries the full type-preserving group on each level algebra.
  std::vector<UnitSystem> ladder;
  for (int n = 1; n <= o.depth; ++n) {
    Partition p = level_partition(a, depth_for(a, n));
    FiniteAlgebra alg{a, {}};
    for (std::size_t k = 0; k < p.size(); ++k) alg.atoms.push_back(p.atom_expr(k));
    ladder.push_back(young_system(alg, oracle));
  }
  auto rep0 = conjugate_construct(oracle, ladder, o.depth - 1);
  json rep = base_report("krieger", o);
  rep["steps_completed"] = rep0.steps_completed;
  rep["audit"] = rep0.audit;
  rep["oracle_queries"] = oracle.queries;
  if (!rep0.error.empty()) {
    rep["verdict"] = "error";
    rep["error"] = rep0.error;
    rep["summary"] = rep0.error;
  } else {
    rep["verdict"] = rep0.verified ? "conjugation verified" : "conjugation incomplete";
    rep["summary"] = std::to_string(rep0.steps_completed) + " extension steps, " +
                     std::to_string(oracle.queries) + " oracle queries";
  }
  return finish(rep, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clopen: equidecomposition laboratory for clopen type semigroups"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool needs_action) {
    auto* act = sub->add_option("--action", o.action_path, "action spec file");
    if (needs_action) act->required();
    sub->add_option("--A", o.A, "clopen / type / Z-subset expression");
    sub->add_option("--B", o.B, "clopen / type / Z-subset expression");
    sub->add_option("--depth", o.depth, "resolution depth");
    sub->add_option("--wordlen", o.wordlen, "maximum word length");
    sub->add_option("--bound", o.bound, "search bound (monoid degree / paradox n)");
    sub->add_option("--shifts", o.shifts, "comma-separated shift set");
    sub->add_option("--window", o.window, "Z-subset window");
    sub->add_option("--jobs", o.jobs, "parallel sub-queries (accepted; sequential execution)");
    sub->add_flag("--verify", o.verify, "replay witnesses through space primitives");
    sub->add_option("--json-out", o.json_out, "write the JSON report to this path");
  };

  auto* compare = app.add_subcommand("compare", "comparison gap, then a witness if negative");
  add_common(compare, true);
  auto* eq = app.add_subcommand("equidecompose", "search for an equidecomposition witness");
  add_common(eq, true);
  auto* tl = app.add_subcommand("type-leq", "preorder on formal sums of clopen sets");
  add_common(tl, true);
  auto* ms = app.add_subcommand("measures", "invariant-measure interval for a clopen set");
  add_common(ms, true);
  auto* px = app.add_subcommand("paradox", "search for (n+1)b <= nb");
  add_common(px, true);
  auto* mc = app.add_subcommand("monoid-check", "bounded property check on a presentation");
  add_common(mc, false);
  mc->add_option("--gens", o.gens, "generator count")->required();
  mc->add_option("--rel", o.rels, "relation 'l... = r...' (repeatable)");
  mc->add_option("--property", o.property, "catalog property")->required();
  auto* ci = app.add_subcommand("coinvariants", "coinvariants group at a resolution");
  add_common(ci, true);
  auto* zs = app.add_subcommand("zsubset", "Z-subset equidecomposition with bounded shifts");
  add_common(zs, false);
  auto* ul = app.add_subcommand("unit-ladder", "audit the level ladder of unit systems");
  add_common(ul, true);
  auto* kr = app.add_subcommand("krieger", "back-and-forth extension along the level ladder");
  add_common(kr, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (compare->parsed()) return run_compare(o);
    if (eq->parsed()) return run_equidecompose(o, false);
    if (tl->parsed()) return run_equidecompose(o, true);
    if (ms->parsed()) return run_measures(o);
    if (px->parsed()) return run_paradox(o);
    if (mc->parsed()) return run_monoid_check(o);
    if (ci->parsed()) return run_coinvariants(o);
    if (zs->parsed()) return run_zsubset(o);
    if (ul->parsed()) return run_unit_ladder(o);
    if (kr->parsed()) return run_krieger(o);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
