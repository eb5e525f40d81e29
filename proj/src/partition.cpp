#include "clopenlab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace clopen {

std::string Depth::str() const {
  std::ostringstream os;
  if (!factors.empty()) {
    os << '(';
    for (size_t i = 0; i < factors.size(); ++i) os << (i ? ", " : "") << factors[i].str();
    os << ')';
  } else if (level > 0) {
    os << "level " << level;
  } else if (hi[0] >= lo[0]) {
    if (hi[1] >= lo[1] && (lo[1] != 0 || hi[1] != 0))
      os << "box [" << lo[0] << ".." << hi[0] << "]x[" << lo[1] << ".." << hi[1] << "]";
    else
      os << "window [" << lo[0] << ".." << hi[0] << "]";
  } else {
    os << "trivial";
  }
  return os.str();
}

Depth join_depth(const ActionPtr& action, const Depth& a, const Depth& b) {
  if (action->is_shift_kind()) {
    Depth d;
    int dim = action->shift_dim();
    for (int i = 0; i < dim; ++i) {
      d.lo[i] = std::min(a.lo[i], b.lo[i]);
      d.hi[i] = std::max(a.hi[i], b.hi[i]);
    }
    return d;
  }
  if (action->as_odometer()) return Depth::odometer_level(std::max(a.level, b.level));
  if (action->as_finite()) return Depth::trivial();
  auto* p = action->as_product();
  std::vector<Depth> fs;
  for (size_t i = 0; i < p->factors.size(); ++i)
    fs.push_back(join_depth(p->factors[i], a.factors.at(i), b.factors.at(i)));
  return Depth::product(std::move(fs));
}

bool depth_covers(const ActionPtr& action, const Depth& big, const Depth& small) {
  return join_depth(action, big, small) == big;
}

Depth grow_depth(const ActionPtr& action, const Depth& d, int amount) {
  if (action->is_shift_kind()) {
    Depth g = d;
    int dim = action->shift_dim();
    for (int i = 0; i < dim; ++i) {
      g.lo[i] -= amount;
      g.hi[i] += amount;
    }
    return g;
  }
  if (action->as_odometer()) return Depth::odometer_level(d.level + amount);
  if (action->as_finite()) return d;
  auto* p = action->as_product();
  std::vector<Depth> fs;
  for (size_t i = 0; i < p->factors.size(); ++i)
    fs.push_back(grow_depth(p->factors[i], d.factors.at(i), amount));
  return Depth::product(std::move(fs));
}

namespace {

// --- shift-pattern admissibility -------------------------------------------

bool pattern_locally_allowed(const SubshiftSpec& s, const std::vector<int>& pattern,
                             const Depth& d) {
  int w0 = d.hi[0] - d.lo[0] + 1;
  int w1 = s.dim == 2 ? d.hi[1] - d.lo[1] + 1 : 1;
  auto at = [&](int x, int y) { return pattern[(y - d.lo[1]) * w0 + (x - d.lo[0])]; };
  if (s.at_most_one_one) {
    int ones = 0;
    for (int v : pattern) ones += (v == 1);
    return ones <= 1;
  }
  for (auto& pat : s.forbidden) {
    int minx = 0, maxx = 0, miny = 0, maxy = 0;
    bool first = true;
    for (auto& c : pat.cells) {
      minx = first ? c[0] : std::min(minx, c[0]);
      maxx = first ? c[0] : std::max(maxx, c[0]);
      miny = first ? c[1] : std::min(miny, c[1]);
      maxy = first ? c[1] : std::max(maxy, c[1]);
      first = false;
    }
    for (int ty = d.lo[1] - miny; ty + maxy <= d.hi[1] || (s.dim == 1 && ty == 0); ++ty) {
      if (s.dim == 1 && ty != 0) break;
      for (int tx = d.lo[0] - minx; tx + maxx <= d.hi[0]; ++tx) {
        bool all = true;
        for (auto& c : pat.cells)
          if (at(tx + c[0], ty + c[1]) != c[2]) {
            all = false;
            break;
          }
        if (all) return false;
      }
      if (s.dim == 1) break;
    }
  }
  return true;
}

// Bi-infinite extendability for 1d finite-type subshifts via the transfer
// graph on blocks, trimmed to vertices lying on two-sided infinite paths.
struct TransferGraph {
  int block_len = 1;
  std::vector<std::vector<int>> blocks;                 // surviving blocks
  std::map<std::vector<int>, int> index;                // block -> id
  std::vector<std::set<int>> out;

  bool has_block(const std::vector<int>& b) const { return index.count(b) > 0; }
};

TransferGraph build_transfer_graph(const SubshiftSpec& s) {
  TransferGraph g;
  int extent = 1;
  for (auto& pat : s.forbidden) {
    int minx = pat.cells[0][0], maxx = pat.cells[0][0];
    for (auto& c : pat.cells) {
      minx = std::min(minx, c[0]);
      maxx = std::max(maxx, c[0]);
    }
    extent = std::max(extent, maxx - minx + 1);
  }
  g.block_len = std::max(1, extent - 1);
  int L = g.block_len;
  Depth dblock = Depth::window(0, L - 1);
  // enumerate locally allowed blocks
  std::vector<int> cur(L, 0);
  std::vector<std::vector<int>> blocks;
  for (;;) {
    if (pattern_locally_allowed(s, cur, dblock)) blocks.push_back(cur);
    int i = L - 1;
    while (i >= 0 && ++cur[i] == s.alphabet) cur[i--] = 0;
    if (i < 0) break;
  }
  std::map<std::vector<int>, int> idx;
  for (size_t i = 0; i < blocks.size(); ++i) idx[blocks[i]] = static_cast<int>(i);
  std::vector<std::set<int>> out(blocks.size()), in(blocks.size());
  Depth dedge = Depth::window(0, L);
  for (size_t u = 0; u < blocks.size(); ++u) {
    for (int a = 0; a < s.alphabet; ++a) {
      std::vector<int> w = blocks[u];
      w.push_back(a);
      if (!pattern_locally_allowed(s, w, dedge)) continue;
      std::vector<int> vblk(w.begin() + 1, w.end());
      auto it = idx.find(vblk);
      if (it == idx.end()) continue;
      out[u].insert(it->second);
      in[it->second].insert(static_cast<int>(u));
    }
  }
  // trim vertices with no successor or no predecessor
  std::vector<char> alive(blocks.size(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t v = 0; v < blocks.size(); ++v) {
      if (!alive[v]) continue;
      bool has_out = std::any_of(out[v].begin(), out[v].end(), [&](int w) { return alive[w]; });
      bool has_in = std::any_of(in[v].begin(), in[v].end(), [&](int w) { return alive[w]; });
      if (!has_out || !has_in) {
        alive[v] = 0;
        changed = true;
      }
    }
  }
  for (size_t v = 0; v < blocks.size(); ++v) {
    if (!alive[v]) continue;
    int id = static_cast<int>(g.blocks.size());
    g.index[blocks[v]] = id;
    g.blocks.push_back(blocks[v]);
    g.out.emplace_back();
  }
  for (auto& [blk, id] : g.index) {
    size_t orig = std::find(blocks.begin(), blocks.end(), blk) - blocks.begin();
    for (int w : out[orig]) {
      if (!alive[w]) continue;
      g.out[id].insert(g.index.at(blocks[w]));
    }
  }
  return g;
}

bool word_extendable(const TransferGraph& g, const std::vector<int>& word) {
  int L = g.block_len;
  int n = static_cast<int>(word.size());
  if (n < L) {
    for (auto& blk : g.blocks)
      for (int off = 0; off + n <= L; ++off)
        if (std::equal(word.begin(), word.end(), blk.begin() + off)) return true;
    return false;
  }
  int prev = -1;
  for (int i = 0; i + L <= n; ++i) {
    std::vector<int> blk(word.begin() + i, word.begin() + i + L);
    auto it = g.index.find(blk);
    if (it == g.index.end()) return false;
    if (prev >= 0 && !g.out[prev].count(it->second)) return false;
    prev = it->second;
  }
  return true;
}

bool shift_pattern_allowed(const ActionSpec& a, const std::vector<int>& pattern, const Depth& d,
                           const TransferGraph* tg) {
  if (a.as_full_shift()) return true;
  auto* s = a.as_subshift();
  if (!pattern_locally_allowed(*s, pattern, d)) return false;
  if (s->dim == 1 && !s->forbidden.empty() && tg) return word_extendable(*tg, pattern);
  return true;
}

// dispatch targets for cylinders inside products
int shift_factor_index(const ProductSpec& p) {
  for (size_t i = 0; i < p.factors.size(); ++i)
    if (p.factors[i]->is_shift_kind()) return static_cast<int>(i);
  for (size_t i = 0; i < p.factors.size(); ++i)
    if (p.factors[i]->as_finite()) return static_cast<int>(i);
  return -1;
}
int odometer_factor_index(const ProductSpec& p) {
  for (size_t i = 0; i < p.factors.size(); ++i)
    if (p.factors[i]->as_odometer()) return static_cast<int>(i);
  return -1;
}

}  // namespace

// --- evaluation -------------------------------------------------------------

namespace {

std::vector<char> eval_rec(const Partition& p, const ExprPtr& e);

std::vector<char> eval_leaf(const Partition& p, const ExprPtr& e) {
  const ActionSpec& a = *p.action;
  std::vector<char> out(p.size(), 0);
  if (a.is_shift_kind()) {
    if (e->kind != ClopenExpr::Kind::Cylinder)
      throw std::runtime_error("level cylinder used on a shift action");
    int dim = a.shift_dim();
    int w0 = p.depth.hi[0] - p.depth.lo[0] + 1;
    for (size_t i = 0; i < p.size(); ++i) {
      bool ok = true;
      for (size_t k = 0; k < e->symbols.size() && ok; ++k) {
        int x = e->coord[0] + static_cast<int>(k), y = e->coord[1];
        if (x < p.depth.lo[0] || x > p.depth.hi[0] ||
            (dim == 2 && (y < p.depth.lo[1] || y > p.depth.hi[1])) || (dim == 1 && y != 0))
          throw std::runtime_error("partition depth does not cover the expression (coordinate " +
                                   std::to_string(x) + ")");
        int idx = (dim == 2 ? (y - p.depth.lo[1]) * w0 : 0) + (x - p.depth.lo[0]);
        ok = p.atoms[i][idx] == e->symbols[k];
      }
      out[i] = ok;
    }
    return out;
  }
  if (a.as_odometer()) {
    if (e->kind != ClopenExpr::Kind::LevelCylinder)
      throw std::runtime_error("coordinate cylinder used on an odometer (use [d]@L<level>)");
    if (e->level > p.depth.level)
      throw std::runtime_error("partition level does not cover the expression");
    for (size_t i = 0; i < p.size(); ++i) out[i] = p.atoms[i][e->level - 1] == e->digit;
    return out;
  }
  if (a.as_finite()) {
    if (e->kind != ClopenExpr::Kind::Cylinder || e->coord != std::array<int, 2>{0, 0} ||
        e->symbols.size() != 1)
      throw std::runtime_error("finite actions use point cylinders [p]@0");
    for (size_t i = 0; i < p.size(); ++i) out[i] = p.atoms[i][0] == e->symbols[0];
    return out;
  }
  // product: dispatch to one factor, lift to tuples
  auto* pr = a.as_product();
  int f = e->kind == ClopenExpr::Kind::LevelCylinder ? odometer_factor_index(*pr)
                                                     : shift_factor_index(*pr);
  if (f < 0) throw std::runtime_error("no product factor accepts this cylinder kind");
  std::vector<char> fac = eval_rec(p.factor_parts[f], e);
  for (size_t i = 0; i < p.size(); ++i) out[i] = fac[p.atoms[i][f]];
  return out;
}

std::vector<char> eval_rec(const Partition& p, const ExprPtr& e) {
  switch (e->kind) {
    case ClopenExpr::Kind::Empty:
      return std::vector<char>(p.size(), 0);
    case ClopenExpr::Kind::Full:
      return std::vector<char>(p.size(), 1);
    case ClopenExpr::Kind::Cylinder:
    case ClopenExpr::Kind::LevelCylinder:
      return eval_leaf(p, e);
    case ClopenExpr::Kind::Union: {
      auto l = eval_rec(p, e->lhs), r = eval_rec(p, e->rhs);
      for (size_t i = 0; i < l.size(); ++i) l[i] |= r[i];
      return l;
    }
    case ClopenExpr::Kind::Intersect: {
      auto l = eval_rec(p, e->lhs), r = eval_rec(p, e->rhs);
      for (size_t i = 0; i < l.size(); ++i) l[i] &= r[i];
      return l;
    }
    case ClopenExpr::Kind::Complement: {
      auto v = eval_rec(p, e->inner);
      for (auto& b : v) b = !b;
      return v;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::vector<char> Partition::eval(const ExprPtr& e) const { return eval_rec(*this, e); }

std::optional<std::vector<int>> Partition::word_permutation(const GroupWord& w) const {
  const ActionSpec& a = *action;
  if (a.is_shift_kind()) {
    auto disp = w.abelian_displacement(a.shift_dim());
    if (std::all_of(disp.begin(), disp.end(), [](int x) { return x == 0; })) {
      std::vector<int> id(size());
      std::iota(id.begin(), id.end(), 0);
      return id;
    }
    return std::nullopt;
  }
  if (auto* o = a.as_odometer()) {
    long long B = 1;
    for (int l = 0; l < depth.level; ++l) B *= o->base(l);
    long long m = w.abelian_displacement(1)[0] % B;
    if (m < 0) m += B;
    std::vector<int> perm(size());
    for (size_t i = 0; i < size(); ++i) {
      // digit string -> residue, add m, residue -> index (atoms are in
      // lexicographic digit order, which is not residue order)
      long long r = 0, place = 1;
      for (int l = 0; l < depth.level; ++l) {
        r += atoms[i][l] * place;
        place *= o->base(l);
      }
      long long r2 = (r + m) % B;
      std::vector<int> digits(depth.level);
      for (int l = 0; l < depth.level; ++l) {
        digits[l] = static_cast<int>(r2 % o->base(l));
        r2 /= o->base(l);
      }
      perm[i] = atom_index(digits);
    }
    return perm;
  }
  if (auto* fa = a.as_finite()) {
    int el = w.finite_element(action->schema());
    std::vector<int> perm(size());
    for (size_t i = 0; i < size(); ++i) perm[i] = fa->action_table[el][atoms[i][0]];
    return perm;
  }
  auto* pr = a.as_product();
  std::vector<std::vector<int>> fperms;
  for (auto& fp : factor_parts) {
    auto perm = fp.word_permutation(w);
    if (!perm) return std::nullopt;
    fperms.push_back(std::move(*perm));
  }
  std::vector<int> perm(size());
  for (size_t i = 0; i < size(); ++i) {
    std::vector<int> img(atoms[i]);
    for (size_t f = 0; f < fperms.size(); ++f) img[f] = fperms[f][atoms[i][f]];
    perm[i] = atom_index(img);
  }
  (void)pr;
  return perm;
}

ExprPtr Partition::atom_expr(std::size_t atom) const {
  const ActionSpec& a = *action;
  const auto& desc = atoms.at(atom);
  if (a.is_shift_kind()) {
    if (a.shift_dim() == 1) return expr_cylinder(depth.lo[0], desc);
    int w0 = depth.hi[0] - depth.lo[0] + 1;
    std::vector<ExprPtr> rows;
    for (int y = depth.lo[1]; y <= depth.hi[1]; ++y) {
      std::vector<int> row(desc.begin() + (y - depth.lo[1]) * w0,
                           desc.begin() + (y - depth.lo[1] + 1) * w0);
      rows.push_back(expr_cylinder2({depth.lo[0], y}, std::move(row)));
    }
    ExprPtr acc = rows[0];
    for (size_t i = 1; i < rows.size(); ++i) acc = expr_intersect(acc, rows[i]);
    return acc;
  }
  if (a.as_odometer()) {
    ExprPtr acc = expr_level_cylinder(1, desc[0]);
    for (int l = 2; l <= depth.level; ++l) acc = expr_intersect(acc, expr_level_cylinder(l, desc[l - 1]));
    return acc;
  }
  if (a.as_finite()) return expr_cylinder(0, {desc[0]});
  ExprPtr acc;
  for (size_t f = 0; f < factor_parts.size(); ++f) {
    ExprPtr fe = factor_parts[f].atom_expr(desc[f]);
    acc = acc ? expr_intersect(acc, fe) : fe;
  }
  return acc;
}

ExprPtr Partition::atom_image_expr(std::size_t atom, const GroupWord& w) const {
  const ActionSpec& a = *action;
  if (a.is_shift_kind()) {
    auto disp = w.abelian_displacement(a.shift_dim());
    const auto& desc = atoms.at(atom);
    if (a.shift_dim() == 1) return expr_cylinder(depth.lo[0] + disp[0], desc);
    int w0 = depth.hi[0] - depth.lo[0] + 1;
    std::vector<ExprPtr> rows;
    for (int y = depth.lo[1]; y <= depth.hi[1]; ++y) {
      std::vector<int> row(desc.begin() + (y - depth.lo[1]) * w0,
                           desc.begin() + (y - depth.lo[1] + 1) * w0);
      rows.push_back(expr_cylinder2({depth.lo[0] + disp[0], y + disp[1]}, std::move(row)));
    }
    ExprPtr acc = rows[0];
    for (size_t i = 1; i < rows.size(); ++i) acc = expr_intersect(acc, rows[i]);
    return acc;
  }
  if (a.as_product()) {
    const auto& desc = atoms.at(atom);
    ExprPtr acc;
    for (size_t f = 0; f < factor_parts.size(); ++f) {
      ExprPtr fe = factor_parts[f].atom_image_expr(desc[f], w);
      acc = acc ? expr_intersect(acc, fe) : fe;
    }
    return acc;
  }
  auto perm = word_permutation(w);
  if (!perm) throw std::runtime_error("atom_image_expr: word does not act on this partition");
  return atom_expr((*perm)[atom]);
}

std::string Partition::atom_name(std::size_t atom) const {
  const auto& desc = atoms.at(atom);
  std::ostringstream os;
  if (action->as_product()) {
    os << '(';
    for (size_t f = 0; f < factor_parts.size(); ++f)
      os << (f ? "," : "") << factor_parts[f].atom_name(desc[f]);
    os << ')';
    return os.str();
  }
  if (action->as_finite()) return "p" + std::to_string(desc[0]);
  for (int s : desc) os << (s < 10 ? char('0' + s) : char('a' + s - 10));
  return os.str();
}

int Partition::atom_index(const std::vector<int>& descriptor) const {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), descriptor);
  if (it == atoms.end() || *it != descriptor)
    throw std::runtime_error("atom descriptor not in partition");
  return static_cast<int>(it - atoms.begin());
}

// --- construction -----------------------------------------------------------

Partition level_partition(const ActionPtr& action, const Depth& depth, std::size_t atom_cap) {
  Partition p;
  p.action = action;
  p.depth = depth;
  const ActionSpec& a = *action;
  auto check_cap = [&](std::size_t n) {
    if (n > atom_cap)
      throw AtomCapExceeded("atom count " + std::to_string(n) + " exceeds cap " +
                            std::to_string(atom_cap) + " at depth " + depth.str());
  };
  if (a.is_shift_kind()) {
    int dim = a.shift_dim();
    if (depth.hi[0] < depth.lo[0] || (dim == 2 && depth.hi[1] < depth.lo[1]))
      throw std::invalid_argument("invalid shift window");
    std::size_t cells = static_cast<std::size_t>(depth.hi[0] - depth.lo[0] + 1) *
                        (dim == 2 ? depth.hi[1] - depth.lo[1] + 1 : 1);
    double total = std::pow(static_cast<double>(a.alphabet_size()), static_cast<double>(cells));
    if (total > static_cast<double>(atom_cap) * 64)
      throw AtomCapExceeded("window too large at depth " + depth.str());
    std::unique_ptr<TransferGraph> tg;
    if (auto* s = a.as_subshift(); s && s->dim == 1 && !s->forbidden.empty())
      tg = std::make_unique<TransferGraph>(build_transfer_graph(*s));
    std::vector<int> cur(cells, 0);
    for (;;) {
      if (shift_pattern_allowed(a, cur, depth, tg.get())) {
        p.atoms.push_back(cur);
        check_cap(p.atoms.size());
      }
      int i = static_cast<int>(cells) - 1;
      while (i >= 0 && ++cur[i] == a.alphabet_size()) cur[i--] = 0;
      if (i < 0) break;
    }
  } else if (auto* o = a.as_odometer()) {
    if (depth.level < 1) throw std::invalid_argument("odometer level must be >= 1");
    std::size_t count = 1;
    for (int l = 0; l < depth.level; ++l) {
      count *= o->base(l);
      check_cap(count);
    }
    std::vector<int> cur(depth.level, 0);
    for (;;) {
      p.atoms.push_back(cur);
      int i = depth.level - 1;
      while (i >= 0 && ++cur[i] == o->base(i)) cur[i--] = 0;
      if (i < 0) break;
    }
    std::sort(p.atoms.begin(), p.atoms.end());
  } else if (auto* fa = a.as_finite()) {
    for (int pt = 0; pt < fa->points; ++pt) p.atoms.push_back({pt});
  } else {
    auto* pr = a.as_product();
    if (depth.factors.size() != pr->factors.size())
      throw std::invalid_argument("product depth arity mismatch");
    std::size_t count = 1;
    for (size_t f = 0; f < pr->factors.size(); ++f) {
      p.factor_parts.push_back(level_partition(pr->factors[f], depth.factors[f], atom_cap));
      count *= p.factor_parts.back().size();
      check_cap(count);
    }
    std::vector<int> cur(pr->factors.size(), 0);
    for (;;) {
      p.atoms.push_back(cur);
      int i = static_cast<int>(cur.size()) - 1;
      while (i >= 0 && ++cur[i] == static_cast<int>(p.factor_parts[i].size())) cur[i--] = 0;
      if (i < 0) break;
    }
  }
  std::sort(p.atoms.begin(), p.atoms.end());
  return p;
}

namespace {

void collect_depth(const ActionPtr& action, const ExprPtr& e, Depth& d, bool& any) {
  switch (e->kind) {
    case ClopenExpr::Kind::Empty:
    case ClopenExpr::Kind::Full:
      return;
    case ClopenExpr::Kind::Union:
    case ClopenExpr::Kind::Intersect:
      collect_depth(action, e->lhs, d, any);
      collect_depth(action, e->rhs, d, any);
      return;
    case ClopenExpr::Kind::Complement:
      collect_depth(action, e->inner, d, any);
      return;
    case ClopenExpr::Kind::Cylinder: {
      if (action->as_odometer())
        throw std::runtime_error("coordinate cylinder on an odometer (use [d]@L<level>)");
      if (auto* pr = action->as_product()) {
        int f = shift_factor_index(*pr);
        if (f < 0) throw std::runtime_error("no product factor accepts coordinate cylinders");
        bool sub_any = false;
        collect_depth(pr->factors[f], e, d.factors[f], sub_any);
        any = true;
        return;
      }
      int x0 = e->coord[0], x1 = e->coord[0] + static_cast<int>(e->symbols.size()) - 1;
      if (!any && d.hi[0] < d.lo[0]) {
        d.lo[0] = x0;
        d.hi[0] = x1;
        d.lo[1] = d.hi[1] = e->coord[1];
      } else {
        d.lo[0] = std::min(d.lo[0], x0);
        d.hi[0] = std::max(d.hi[0], x1);
        d.lo[1] = std::min(d.lo[1], e->coord[1]);
        d.hi[1] = std::max(d.hi[1], e->coord[1]);
      }
      any = true;
      return;
    }
    case ClopenExpr::Kind::LevelCylinder: {
      if (auto* pr = action->as_product()) {
        int f = odometer_factor_index(*pr);
        if (f < 0) throw std::runtime_error("no odometer factor for a level cylinder");
        bool sub_any = false;
        collect_depth(pr->factors[f], e, d.factors[f], sub_any);
        any = true;
        return;
      }
      if (!action->as_odometer()) throw std::runtime_error("level cylinder on a non-odometer");
      d.level = std::max(d.level, e->level);
      any = true;
      return;
    }
  }
}

Depth default_depth(const ActionPtr& action) {
  if (action->is_shift_kind()) return Depth::window(0, 0);
  if (action->as_odometer()) return Depth::odometer_level(1);
  if (action->as_finite()) return Depth::trivial();
  std::vector<Depth> fs;
  for (auto& f : action->as_product()->factors) fs.push_back(default_depth(f));
  return Depth::product(std::move(fs));
}

}  // namespace

Depth minimal_depth(const ActionPtr& action, const ExprPtr& e) {
  Depth d = default_depth(action);
  if (action->is_shift_kind()) d = Depth{{0, 0}, {-1, -1}, 0, {}};
  if (action->as_odometer()) d.level = 1;
  bool any = false;
  collect_depth(action, e, d, any);
  if (action->is_shift_kind() && d.hi[0] < d.lo[0]) d = default_depth(action);
  return join_depth(action, d, default_depth(action));
}

std::variant<InvariantPartition, InvariantRefusal> invariant_partition(
    const ActionPtr& action, const std::vector<GroupWord>& words, const Depth& depth,
    std::size_t atom_cap) {
  if (words.empty())
    throw std::invalid_argument("invariant_partition needs a nonempty word set");
  Partition p = level_partition(action, depth, atom_cap);
  InvariantPartition out{std::move(p), {}};
  for (auto& w : words) {
    auto perm = out.partition.word_permutation(w);
    if (!perm)
      return InvariantRefusal{
          "no finite window algebra is invariant under shift words; use the CSP backend"};
    out.permutations.push_back(std::move(*perm));
  }
  return out;
}

AtomImage atom_image(const ActionPtr& action, const GroupWord& w, const Partition& p,
                     std::size_t atom, const Partition* fine) {
  AtomImage img;
  img.source = atom;
  img.word = w;
  auto perm = p.word_permutation(w);
  if (perm) {
    img.exact_image = (*perm)[atom];
    img.cylinder = p.atom_expr(*img.exact_image);
    return img;
  }
  (void)action;
  img.cylinder = p.atom_image_expr(atom, w);
  if (fine) {
    auto bits = fine->eval(img.cylinder);
    for (size_t i = 0; i < bits.size(); ++i)
      if (bits[i]) img.refined_atoms.push_back(i);
  }
  return img;
}

}  // namespace clopen
