#include "clopenlab/equidecomp.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

#include <json.hpp>

namespace clopen {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
  Clock::time_point end;
  explicit Deadline(double seconds)
      : end(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(seconds))) {}
  bool expired() const { return Clock::now() > end; }
};

// One unit per (copy, atom) pair of a type expression at a fixed partition.
struct Unit {
  int copy;
  std::size_t atom;
};

std::vector<Unit> units_of(const Partition& p, const TypeExpr& t) {
  std::vector<Unit> out;
  for (auto& [copy, e] : t.summands) {
    auto bits = p.eval(e);
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i]) out.push_back({copy, i});
  }
  return out;
}

Depth joint_depth(const ActionPtr& action, const TypeExpr& a, const TypeExpr& b) {
  Depth d;
  bool first = true;
  for (const TypeExpr* t : {&a, &b})
    for (auto& [copy, e] : t->summands) {
      Depth de = minimal_depth(action, e);
      d = first ? de : join_depth(action, d, de);
      first = false;
    }
  if (first) {
    // both zero: any depth works
    ExprPtr full = expr_full();
    d = minimal_depth(action, full);
  }
  return d;
}

// Kuhn's augmenting-path matching, rows tried in index order, columns in
// adjacency order: lowest-index augmenting paths, deterministic output.
struct Matching {
  std::vector<int> row_to_col, col_to_row;
  int matched = 0;
};

bool try_augment(int u, const std::vector<std::vector<int>>& adj, std::vector<int>& row_to_col,
                 std::vector<int>& col_to_row, std::vector<char>& seen) {
  for (int v : adj[u]) {
    if (seen[v]) continue;
    seen[v] = 1;
    if (col_to_row[v] < 0 || try_augment(col_to_row[v], adj, row_to_col, col_to_row, seen)) {
      row_to_col[u] = v;
      col_to_row[v] = u;
      return true;
    }
  }
  return false;
}

Matching max_matching(const std::vector<std::vector<int>>& adj, int cols) {
  Matching m;
  m.row_to_col.assign(adj.size(), -1);
  m.col_to_row.assign(cols, -1);
  for (std::size_t u = 0; u < adj.size(); ++u) {
    std::vector<char> seen(cols, 0);
    if (try_augment(static_cast<int>(u), adj, m.row_to_col, m.col_to_row, seen)) ++m.matched;
  }
  return m;
}

// matching backend: every word permutes the invariant partition
std::optional<EquidecompositionWitness> matching_backend(const ActionPtr& action,
                                                         const TypeExpr& a, const TypeExpr& b,
                                                         const InvariantPartition& ip,
                                                         const std::vector<GroupWord>& words,
                                                         const SearchBudget& budget) {
  const Partition& p = ip.partition;
  std::vector<Unit> ua = units_of(p, a), ub = units_of(p, b);
  if (ua.empty()) return EquidecompositionWitness{{}, ub.empty(), budget};
  if (ua.size() > ub.size()) return std::nullopt;
  // edge iff some word maps the source atom to the target atom
  std::vector<std::vector<int>> adj(ua.size());
  std::vector<std::map<std::size_t, int>> word_for(ua.size());  // atom -> word index
  for (std::size_t i = 0; i < ua.size(); ++i) {
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::size_t img = ip.permutations[w][ua[i].atom];
      auto [it, fresh] = word_for[i].try_emplace(img, static_cast<int>(w));
      (void)it;
      (void)fresh;
    }
    for (std::size_t j = 0; j < ub.size(); ++j)
      if (word_for[i].count(ub[j].atom)) adj[i].push_back(static_cast<int>(j));
  }
  Matching m = max_matching(adj, static_cast<int>(ub.size()));
  if (m.matched != static_cast<int>(ua.size())) return std::nullopt;

  EquidecompositionWitness wit;
  wit.budget = budget;
  for (std::size_t i = 0; i < ua.size(); ++i) {
    const Unit& src = ua[i];
    const Unit& dst = ub[m.row_to_col[i]];
    wit.pieces.push_back(
        {src.copy, p.atom_expr(src.atom), words[word_for[i].at(dst.atom)], dst.copy});
  }
  wit.equi = ua.size() == ub.size();
  return wit;
}

// CSP backend for shift kinds: assign each source unit a (word, target copy)
// so images stay inside the target content and pairwise disjoint per copy.
struct CspState {
  const ActionPtr& action;
  const Partition& p;
  const std::vector<GroupWord>& words;
  const std::map<int, ExprPtr>& b_content;  // copy -> clopen
  std::vector<Unit> ua;
  std::vector<std::pair<int, ExprPtr>> chosen_img;  // per assigned unit: (target copy, image)
  std::vector<std::pair<int, int>> choice;          // (word idx, target copy)
  long nodes = 0;
  long max_nodes;
  Deadline deadline;
  std::size_t atom_cap;
};

bool csp_assign(CspState& st, std::size_t k) {
  if (k == st.ua.size()) return true;
  if (st.deadline.expired()) return false;
  ExprPtr src = st.p.atom_expr(st.ua[k].atom);
  for (std::size_t w = 0; w < st.words.size(); ++w) {
    ExprPtr img = apply_word(st.action, src, st.words[w], st.atom_cap);
    for (auto& [copy, content] : st.b_content) {
      if (++st.nodes > st.max_nodes) return false;
      if (!set_subseteq(st.action, img, content, st.atom_cap)) continue;
      bool clash = false;
      for (std::size_t j = 0; j < k && !clash; ++j)
        if (st.chosen_img[j].first == copy &&
            !is_empty(st.action, expr_intersect(img, st.chosen_img[j].second), st.atom_cap))
          clash = true;
      if (clash) continue;
      st.chosen_img[k] = {copy, img};
      st.choice[k] = {static_cast<int>(w), copy};
      if (csp_assign(st, k + 1)) return true;
    }
  }
  return false;
}

std::optional<EquidecompositionWitness> csp_backend(const ActionPtr& action, const TypeExpr& a,
                                                    const TypeExpr& b, const Partition& p,
                                                    const std::vector<GroupWord>& words,
                                                    const SearchBudget& budget, bool& out_of_budget,
                                                    std::size_t atom_cap) {
  std::map<int, ExprPtr> b_content;
  for (auto& [copy, e] : b.summands) b_content[copy] = e;
  std::vector<Unit> ua = units_of(p, a);
  if (ua.empty()) return EquidecompositionWitness{{}, b.summands.empty(), budget};
  if (b_content.empty()) return std::nullopt;
  CspState st{action,  p,  words, b_content, std::move(ua), {}, {},
              0,       budget.max_nodes, Deadline(budget.time_cap_s), atom_cap};
  st.chosen_img.resize(st.ua.size());
  st.choice.resize(st.ua.size());
  if (!csp_assign(st, 0)) {
    out_of_budget = out_of_budget || st.nodes > st.max_nodes || st.deadline.expired();
    return std::nullopt;
  }
  EquidecompositionWitness wit;
  wit.budget = budget;
  for (std::size_t k = 0; k < st.ua.size(); ++k)
    wit.pieces.push_back({st.ua[k].copy, p.atom_expr(st.ua[k].atom), words[st.choice[k].first],
                          st.choice[k].second});
  // equi iff the images exhaust every target copy
  wit.equi = true;
  for (auto& [copy, content] : b_content) {
    ExprPtr used = expr_empty();
    for (std::size_t k = 0; k < st.ua.size(); ++k)
      if (st.chosen_img[k].first == copy) used = expr_union(used, st.chosen_img[k].second);
    if (!set_subseteq(action, content, used, atom_cap)) {
      wit.equi = false;
      break;
    }
  }
  return wit;
}

// pieces with the same word and copy pair merge into one
void merge_pieces(EquidecompositionWitness& w) {
  std::map<std::tuple<int, std::string, int>, std::size_t> first;
  std::vector<WitnessPiece> merged;
  for (auto& p : w.pieces) {
    auto key = std::make_tuple(p.copy, p.word.str(), p.copy_to);
    auto it = first.find(key);
    if (it == first.end()) {
      first[key] = merged.size();
      merged.push_back(p);
    } else {
      merged[it->second].clopen = expr_union(merged[it->second].clopen, p.clopen);
    }
  }
  w.pieces = std::move(merged);
}

}  // namespace

EqResult type_leq(const ActionPtr& action, const TypeExpr& a, const TypeExpr& b,
                  const SearchBudget& budget) {
  a.validate();
  b.validate();
  std::vector<GroupWord> words = word_ball(action->schema(), budget.max_word_len);
  if (a.summands.size() == 1 && b.summands.size() == 1) {
    // pre-pass: a single word moving all of A into B
    const ExprPtr& A = a.summands[0].second;
    const ExprPtr& B = b.summands[0].second;
    for (auto& w : words) {
      ExprPtr img = apply_word(action, A, w);
      if (!set_subseteq(action, img, B)) continue;
      EquidecompositionWitness wit;
      wit.budget = budget;
      wit.pieces.push_back({a.summands[0].first, A, w, b.summands[0].first});
      wit.equi = set_subseteq(action, B, img);
      return wit;
    }
  }
  Depth base = joint_depth(action, a, b);
  bool hit_cap = false, out_of_budget = false;
  for (int step = 0; step <= budget.max_depth; ++step) {
    Depth d = grow_depth(action, base, step);
    if (d == grow_depth(action, base, step == 0 ? 0 : step - 1) && step > 0) break;  // finite kinds
    std::size_t cap = kDefaultAtomCap;
    try {
      auto inv = invariant_partition(action, words, d, cap);
      if (auto* ip = std::get_if<InvariantPartition>(&inv)) {
        auto wit = matching_backend(action, a, b, *ip, words, budget);
        if (wit) {
          merge_pieces(*wit);
          return *wit;
        }
        continue;
      }
      Partition p = level_partition(action, d, cap);
      auto wit = csp_backend(action, a, b, p, words, budget, out_of_budget, cap);
      if (wit) {
        merge_pieces(*wit);
        return *wit;
      }
    } catch (const AtomCapExceeded&) {
      hit_cap = true;
      break;
    }
  }
  std::string reason = "no witness within budget (word length " +
                       std::to_string(budget.max_word_len) + ", depth steps " +
                       std::to_string(budget.max_depth) + ")";
  if (hit_cap) reason += "; atom cap reached";
  if (out_of_budget) reason += "; node or time budget exhausted";
  return Exhausted{reason, budget};
}

EqResult subequidecompose(const ActionPtr& action, const ExprPtr& A, const ExprPtr& B,
                          const SearchBudget& budget) {
  TypeExpr a = is_empty(action, A) ? TypeExpr::zero() : TypeExpr::single(A);
  TypeExpr b = is_empty(action, B) ? TypeExpr::zero() : TypeExpr::single(B);
  return type_leq(action, a, b, budget);
}

bool verify_witness(const ActionPtr& action, const TypeExpr& a, const TypeExpr& b,
                    const EquidecompositionWitness& w, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  std::map<int, ExprPtr> a_content, b_content;
  for (auto& [c, e] : a.summands) a_content[c] = e;
  for (auto& [c, e] : b.summands) b_content[c] = e;
  std::map<int, std::vector<std::size_t>> by_src, by_dst;
  for (std::size_t i = 0; i < w.pieces.size(); ++i) {
    const auto& pc = w.pieces[i];
    if (!a_content.count(pc.copy)) return fail("piece from absent source copy");
    if (!b_content.count(pc.copy_to)) return fail("piece into absent target copy");
    if (is_empty(action, pc.clopen)) return fail("empty piece");
    if (!set_subseteq(action, pc.clopen, a_content[pc.copy])) return fail("piece outside A");
    by_src[pc.copy].push_back(i);
    by_dst[pc.copy_to].push_back(i);
  }
  // pieces partition A per copy
  for (auto& [copy, e] : a_content) {
    ExprPtr used = expr_empty();
    auto it = by_src.find(copy);
    if (it != by_src.end()) {
      auto& ids = it->second;
      for (std::size_t x = 0; x < ids.size(); ++x) {
        for (std::size_t y = x + 1; y < ids.size(); ++y)
          if (!is_empty(action,
                        expr_intersect(w.pieces[ids[x]].clopen, w.pieces[ids[y]].clopen)))
            return fail("overlapping pieces");
        used = expr_union(used, w.pieces[ids[x]].clopen);
      }
    }
    if (!set_subseteq(action, e, used)) return fail("pieces do not cover A");
  }
  // images disjoint and inside (resp. equal to) B per copy
  std::map<int, ExprPtr> images;
  for (auto& pc : w.pieces) {
    ExprPtr img = apply_word(action, pc.clopen, pc.word);
    if (!set_subseteq(action, img, b_content[pc.copy_to])) return fail("image outside B");
    auto it = images.find(pc.copy_to);
    if (it == images.end()) {
      images[pc.copy_to] = img;
    } else {
      if (!is_empty(action, expr_intersect(img, it->second))) return fail("overlapping images");
      it->second = expr_union(it->second, img);
    }
  }
  if (w.equi) {
    for (auto& [copy, e] : b_content) {
      auto it = images.find(copy);
      if (it == images.end() || !set_subseteq(action, e, it->second))
        return fail("mode equi but images do not exhaust B");
    }
  }
  if (why) *why = "";
  return true;
}

EquidecompositionWitness compose_witnesses(const ActionPtr& action,
                                           const EquidecompositionWitness& ab,
                                           const EquidecompositionWitness& bc) {
  EquidecompositionWitness out;
  out.equi = ab.equi && bc.equi;
  out.budget = ab.budget;
  out.budget.max_word_len += bc.budget.max_word_len;
  for (auto& p : ab.pieces) {
    for (auto& q : bc.pieces) {
      if (q.copy != p.copy_to) continue;
      ExprPtr mid = apply_word(action, p.clopen, p.word);
      ExprPtr overlap = expr_intersect(mid, q.clopen);
      if (is_empty(action, overlap)) continue;
      ExprPtr piece = expr_intersect(p.clopen, apply_word(action, q.clopen, p.word.inverse()));
      out.pieces.push_back({p.copy, piece, p.word.concat(q.word), q.copy_to});
    }
  }
  return out;
}

ExhaustionTrace exhaustion_compare(const ActionPtr& action, const ExprPtr& A, const ExprPtr& B,
                                   const std::vector<GroupWord>& words, std::size_t atom_cap) {
  ExhaustionTrace tr;
  ExprPtr usedA = expr_empty(), usedB = expr_empty();
  for (auto& w : words) {
    ExprPtr rest = expr_difference(A, usedA);
    ExprPtr target = expr_difference(B, usedB);
    ExprPtr piece =
        expr_intersect(rest, apply_word(action, target, w.inverse(), atom_cap));
    if (is_empty(action, piece, atom_cap)) piece = expr_empty();
    ExprPtr image = piece->kind == ClopenExpr::Kind::Empty
                        ? expr_empty()
                        : apply_word(action, piece, w, atom_cap);
    tr.steps.push_back({piece, w, image});
    usedA = expr_union(usedA, piece);
    usedB = expr_union(usedB, image);
  }
  tr.residual = expr_difference(A, usedA);
  tr.residual_empty = is_empty(action, tr.residual, atom_cap);
  return tr;
}

std::string witness_to_json(const EquidecompositionWitness& w) {
  nlohmann::json j;
  j["pieces"] = nlohmann::json::array();
  for (auto& p : w.pieces)
    j["pieces"].push_back({{"copy", p.copy},
                           {"clopen", print_clopen(p.clopen)},
                           {"word", p.word.str()},
                           {"copy_to", p.copy_to}});
  j["mode"] = w.equi ? "equi" : "sub";
  j["budget"] = {{"wordlen", w.budget.max_word_len},
                 {"depth", w.budget.max_depth},
                 {"nodes", w.budget.max_nodes},
                 {"time_s", w.budget.time_cap_s}};
  return j.dump();
}

EquidecompositionWitness witness_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  EquidecompositionWitness w;
  for (auto& p : j.at("pieces"))
    w.pieces.push_back({p.at("copy").get<int>(), parse_clopen(p.at("clopen").get<std::string>()),
                        GroupWord::parse(p.at("word").get<std::string>()),
                        p.value("copy_to", 0)});
  w.equi = j.at("mode").get<std::string>() == "equi";
  if (j.contains("budget")) {
    w.budget.max_word_len = j["budget"].value("wordlen", 0);
    w.budget.max_depth = j["budget"].value("depth", 0);
    w.budget.max_nodes = j["budget"].value("nodes", 0L);
    w.budget.time_cap_s = j["budget"].value("time_s", 0.0);
  }
  return w;
}

std::string witness_to_dot(const EquidecompositionWitness& w) {
  std::ostringstream os;
  os << "graph witness {\n";
  for (std::size_t i = 0; i < w.pieces.size(); ++i) {
    os << "  a" << i << " [label=\"" << w.pieces[i].copy << ":"
       << print_clopen(w.pieces[i].clopen) << "\"];\n";
    os << "  b" << i << " [label=\"" << w.pieces[i].copy_to << "\"];\n";
    os << "  a" << i << " -- b" << i << " [label=\"" << w.pieces[i].word.str() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace clopen
