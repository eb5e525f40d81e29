#include "clopenlab/actions.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace clopen {

int ActionSpec::shift_dim() const {
  if (auto* f = as_full_shift()) return f->dim;
  if (auto* s = as_subshift()) return s->dim;
  throw std::runtime_error("shift_dim on non-shift action");
}

int ActionSpec::alphabet_size() const {
  if (auto* f = as_full_shift()) return f->alphabet;
  if (auto* s = as_subshift()) return s->alphabet;
  throw std::runtime_error("alphabet_size on non-shift action");
}

std::string ActionSpec::kind_name() const {
  if (as_full_shift()) return "full-shift";
  if (as_subshift()) return "subshift";
  if (as_odometer()) return "odometer";
  if (as_finite()) return "finite-action";
  return "product";
}

GroupSchema ActionSpec::schema() const {
  GroupSchema s;
  if (is_shift_kind()) {
    s.kind = GroupSchema::Kind::FreeAbelian;
    s.rank = shift_dim();
  } else if (as_odometer()) {
    s.kind = GroupSchema::Kind::FreeAbelian;
    s.rank = 1;
  } else if (auto* fa = as_finite()) {
    s.kind = GroupSchema::Kind::FiniteTable;
    s.table = fa->group_table;
  } else {
    auto* p = as_product();
    if (p->factors.empty()) throw std::invalid_argument("empty product action");
    s = p->factors.front()->schema();
    for (auto& f : p->factors)
      if (!(f->schema() == s))
        throw std::invalid_argument("product factors must share one group schema");
  }
  return s;
}

void ActionSpec::validate() const {
  if (auto* f = as_full_shift()) {
    if (f->alphabet < 2) throw std::invalid_argument("alphabet size must be >= 2");
    if (f->dim != 1 && f->dim != 2) throw std::invalid_argument("dimension must be 1 or 2");
  } else if (auto* s = as_subshift()) {
    if (s->alphabet < 2) throw std::invalid_argument("alphabet size must be >= 2");
    if (s->dim != 1 && s->dim != 2) throw std::invalid_argument("dimension must be 1 or 2");
    for (auto& p : s->forbidden) {
      if (p.cells.empty()) throw std::invalid_argument("empty forbidden pattern");
      for (auto& c : p.cells) {
        if (c[2] < 0 || c[2] >= s->alphabet)
          throw std::invalid_argument("forbidden pattern symbol outside alphabet");
        if (s->dim == 1 && c[1] != 0)
          throw std::invalid_argument("2d offset in a 1d forbidden pattern");
      }
    }
  } else if (auto* o = as_odometer()) {
    if (o->entries.empty()) throw std::invalid_argument("odometer base sequence is empty");
    if (o->period_len < 1 || o->period_len > static_cast<int>(o->entries.size()))
      throw std::invalid_argument("odometer period length out of range");
    for (int b : o->entries)
      if (b < 2) throw std::invalid_argument("odometer base entries must be >= 2");
  } else if (auto* fa = as_finite()) {
    int g = static_cast<int>(fa->group_table.size());
    if (g < 1) throw std::invalid_argument("empty group table");
    if (fa->points < 1) throw std::invalid_argument("finite action needs >= 1 point");
    for (auto& row : fa->group_table) {
      if (static_cast<int>(row.size()) != g) throw std::invalid_argument("group table not square");
      for (int x : row)
        if (x < 0 || x >= g) throw std::invalid_argument("group table entry out of range");
    }
    // element 0 must be the identity
    for (int a = 0; a < g; ++a)
      if (fa->group_table[0][a] != a || fa->group_table[a][0] != a)
        throw std::invalid_argument("group table element 0 is not the identity");
    // associativity and inverses (tables are tiny)
    for (int a = 0; a < g; ++a) {
      bool has_inverse = false;
      for (int b = 0; b < g; ++b) {
        if (fa->group_table[a][b] == 0) has_inverse = true;
        for (int c = 0; c < g; ++c)
          if (fa->group_table[fa->group_table[a][b]][c] != fa->group_table[a][fa->group_table[b][c]])
            throw std::invalid_argument("group table is not associative");
      }
      if (!has_inverse) throw std::invalid_argument("group table lacks inverses");
    }
    if (static_cast<int>(fa->action_table.size()) != g)
      throw std::invalid_argument("action table must have one row per group element");
    for (auto& row : fa->action_table) {
      if (static_cast<int>(row.size()) != fa->points)
        throw std::invalid_argument("action table row has wrong length");
      std::set<int> image(row.begin(), row.end());
      if (static_cast<int>(image.size()) != fa->points || *image.begin() < 0 ||
          *image.rbegin() >= fa->points)
        throw std::invalid_argument("group element does not act bijectively");
    }
    for (int p = 0; p < fa->points; ++p)
      if (fa->action_table[0][p] != p)
        throw std::invalid_argument("identity does not act trivially");
    // homomorphism check
    for (int a = 0; a < g; ++a)
      for (int b = 0; b < g; ++b)
        for (int p = 0; p < fa->points; ++p)
          if (fa->action_table[fa->group_table[a][b]][p] !=
              fa->action_table[a][fa->action_table[b][p]])
            throw std::invalid_argument("action table is not a group action");
  } else if (auto* pr = as_product()) {
    if (pr->factors.empty()) throw std::invalid_argument("empty product action");
    int shift_factors = 0, odo_factors = 0;
    for (auto& f : pr->factors) {
      f->validate();
      if (f->as_product()) throw std::invalid_argument("nested products are not supported");
      if (f->is_shift_kind()) shift_factors++;
      if (f->as_odometer()) odo_factors++;
    }
    if (shift_factors > 1 || odo_factors > 1)
      throw std::invalid_argument(
          "a product may contain at most one shift factor and one odometer factor");
    schema();  // throws on mismatch
  }
}

ActionPtr make_full_shift(int alphabet, int dim) {
  auto a = std::make_shared<ActionSpec>(ActionSpec{FullShiftSpec{alphabet, dim}});
  a->validate();
  return a;
}

ActionPtr make_subshift(int alphabet, int dim, std::vector<ForbiddenPattern> forbidden) {
  auto a = std::make_shared<ActionSpec>(
      ActionSpec{SubshiftSpec{alphabet, dim, std::move(forbidden), false}});
  a->validate();
  return a;
}

ActionPtr make_at_most_one_one(int dim) {
  auto a = std::make_shared<ActionSpec>(ActionSpec{SubshiftSpec{2, dim, {}, true}});
  a->validate();
  return a;
}

ActionPtr make_odometer(std::vector<int> entries, int period_len) {
  auto a = std::make_shared<ActionSpec>(ActionSpec{OdometerSpec{std::move(entries), period_len}});
  a->validate();
  return a;
}

ActionPtr make_finite_action(std::vector<std::vector<int>> group_table,
                             std::vector<std::vector<int>> action_table) {
  FiniteActionSpec fa;
  fa.group_table = std::move(group_table);
  fa.action_table = std::move(action_table);
  fa.points = fa.action_table.empty() ? 0 : static_cast<int>(fa.action_table.front().size());
  auto a = std::make_shared<ActionSpec>(ActionSpec{std::move(fa)});
  a->validate();
  return a;
}

ActionPtr make_product(std::vector<ActionPtr> factors) {
  auto a = std::make_shared<ActionSpec>(ActionSpec{ProductSpec{std::move(factors)}});
  a->validate();
  return a;
}

// ---------------------------------------------------------------------------
// structured-text parsing

namespace {

struct Section {
  std::map<std::string, std::vector<std::string>> fields;
  std::vector<std::pair<std::string, Section>> children;
};

Section parse_section(std::istream& is) {
  Section sec;
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "}") return sec;
    if (!head.empty() && head.back() == ':') head.pop_back();
    std::string rest;
    std::getline(ls, rest);
    // trim
    auto b = rest.find_first_not_of(" \t");
    rest = b == std::string::npos ? "" : rest.substr(b);
    if (!rest.empty() && rest.back() == '\r') rest.pop_back();
    if (rest == "{") {
      sec.children.emplace_back(head, parse_section(is));
    } else {
      if (!rest.empty() && rest[0] == ':') rest = rest.substr(rest.find_first_not_of(" \t", 1));
      sec.fields[head].push_back(rest);
    }
  }
  return sec;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::string t = s;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream is(t);
  int x;
  while (is >> x) out.push_back(x);
  return out;
}

std::string field_or(const Section& s, const std::string& key, const std::string& dflt) {
  auto it = s.fields.find(key);
  if (it == s.fields.end() || it->second.empty()) return dflt;
  return it->second.front();
}

std::vector<std::vector<int>> parse_table(const Section& s, const std::string& key) {
  std::vector<std::vector<int>> rows;
  auto it = s.fields.find(key);
  if (it == s.fields.end()) return rows;
  for (auto& line : it->second) {
    // rows may be separated by ';' within one line or given as repeated keys
    std::istringstream ls(line);
    std::string part;
    while (std::getline(ls, part, ';')) {
      auto row = parse_ints(part);
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  return rows;
}

ActionPtr build_action(const Section& sec) {
  std::string kind = field_or(sec, "kind", "");
  if (kind == "full-shift" || kind == "fullshift" || kind == "shift") {
    return make_full_shift(std::stoi(field_or(sec, "alphabet", "2")),
                           std::stoi(field_or(sec, "dimension", "1")));
  }
  if (kind == "subshift") {
    int alphabet = std::stoi(field_or(sec, "alphabet", "2"));
    int dim = std::stoi(field_or(sec, "dimension", "1"));
    auto it = sec.fields.find("forbidden");
    std::vector<ForbiddenPattern> pats;
    if (it != sec.fields.end()) {
      for (auto& entry : it->second) {
        if (entry == "at-most-one-one") {
          auto a = std::make_shared<ActionSpec>(ActionSpec{SubshiftSpec{alphabet, dim, {}, true}});
          a->validate();
          return a;
        }
        // 1d: a word like "11"; 2d: cells "dx dy sym ; dx dy sym"
        ForbiddenPattern p;
        if (dim == 1 && entry.find(' ') == std::string::npos && entry.find(';') == std::string::npos) {
          for (int i = 0; i < static_cast<int>(entry.size()); ++i)
            p.cells.push_back({i, 0, entry[i] - '0'});
        } else {
          std::istringstream ls(entry);
          std::string part;
          while (std::getline(ls, part, ';')) {
            auto c = parse_ints(part);
            if (c.size() == 3)
              p.cells.push_back({c[0], c[1], c[2]});
            else if (c.size() == 2 && dim == 1)
              p.cells.push_back({c[0], 0, c[1]});
            else if (!c.empty())
              throw std::invalid_argument("bad forbidden pattern cell: " + part);
          }
        }
        if (!p.cells.empty()) pats.push_back(std::move(p));
      }
    }
    return make_subshift(alphabet, dim, std::move(pats));
  }
  if (kind == "odometer") {
    auto entries = parse_ints(field_or(sec, "base", "2"));
    int period = std::stoi(field_or(sec, "period", "1"));
    return make_odometer(entries, period);
  }
  if (kind == "finite" || kind == "finite-action") {
    auto gt = parse_table(sec, "group_table");
    auto at = parse_table(sec, "action_table");
    (void)std::stoi(field_or(sec, "points", std::to_string(at.empty() ? 0 : at[0].size())));
    return make_finite_action(std::move(gt), std::move(at));
  }
  if (kind == "product") {
    std::vector<ActionPtr> factors;
    for (auto& [name, child] : sec.children)
      if (name == "factors") factors.push_back(build_action(child));
    return make_product(std::move(factors));
  }
  throw std::invalid_argument("unknown action kind: '" + kind + "'");
}

}  // namespace

ActionPtr parse_action_spec(const std::string& text) {
  std::istringstream is(text);
  return build_action(parse_section(is));
}

ActionPtr load_action_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open action spec: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_action_spec(ss.str());
}

}  // namespace clopen
