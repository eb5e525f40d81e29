#include "clopenlab/words.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace clopen {

int GroupSchema::inverse(int a) const {
  for (int b = 0; b < order(); ++b)
    if (multiply(a, b) == 0) return b;
  throw std::runtime_error("group table has no inverse for element " + std::to_string(a));
}

GroupWord GroupWord::generator(int g, int exp) {
  if (exp != 1 && exp != -1) throw std::invalid_argument("letter exponent must be +-1");
  GroupWord w;
  w.letters.emplace_back(g, exp);
  return w;
}

GroupWord GroupWord::displacement(const std::vector<int>& disp) {
  GroupWord w;
  for (int g = 0; g < static_cast<int>(disp.size()); ++g) {
    int e = disp[g] >= 0 ? 1 : -1;
    for (int i = 0; i < std::abs(disp[g]); ++i) w.letters.emplace_back(g, e);
  }
  return w;
}

GroupWord GroupWord::concat(const GroupWord& other) const {
  GroupWord w = *this;
  w.letters.insert(w.letters.end(), other.letters.begin(), other.letters.end());
  return w;
}

GroupWord GroupWord::inverse() const {
  GroupWord w;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    w.letters.emplace_back(it->first, -it->second);
  return w;
}

std::vector<int> GroupWord::abelian_displacement(int rank) const {
  std::vector<int> v(rank, 0);
  for (auto& [g, e] : letters) {
    if (g < 0 || g >= rank)
      throw std::runtime_error("word uses generator g" + std::to_string(g) +
                               " outside schema of rank " + std::to_string(rank));
    v[g] += e;
  }
  return v;
}

int GroupWord::finite_element(const GroupSchema& schema) const {
  if (schema.kind != GroupSchema::Kind::FiniteTable)
    throw std::runtime_error("finite_element on non-finite schema");
  int acc = 0;
  for (auto& [g, e] : letters) {
    if (g < 0 || g >= schema.order())
      throw std::runtime_error("word letter outside finite group");
    acc = schema.multiply(acc, e == 1 ? g : schema.inverse(g));
  }
  return acc;
}

GroupWord GroupWord::normal_form(const GroupSchema& schema) const {
  if (schema.kind == GroupSchema::Kind::FiniteTable) return *this;
  return displacement(abelian_displacement(schema.rank));
}

std::string GroupWord::str() const {
  if (letters.empty()) return "e";
  // merge consecutive letters with the same generator for readability
  std::ostringstream os;
  size_t i = 0;
  bool first = true;
  while (i < letters.size()) {
    size_t j = i;
    int sum = 0;
    while (j < letters.size() && letters[j].first == letters[i].first) sum += letters[j++].second;
    if (!first) os << ' ';
    first = false;
    os << 'g' << letters[i].first << '^' << sum;
    i = j;
  }
  return os.str();
}

GroupWord GroupWord::parse(const std::string& text) {
  GroupWord w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "e") continue;
    if (tok.size() < 2 || tok[0] != 'g')
      throw std::invalid_argument("bad word token '" + tok + "' (expected g<i>^<k> or e)");
    size_t caret = tok.find('^');
    int gen, exp = 1;
    try {
      gen = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
      if (caret != std::string::npos) exp = std::stoi(tok.substr(caret + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad word token '" + tok + "'");
    }
    int e = exp >= 0 ? 1 : -1;
    for (int i = 0; i < std::abs(exp); ++i) w.letters.emplace_back(gen, e);
  }
  return w;
}

namespace {

void enumerate_abelian(int rank, int max_len, std::vector<GroupWord>& out) {
  // all integer vectors with l1 norm <= max_len, by norm then lexicographic
  std::vector<int> v(rank, 0);
  for (int n = 0; n <= max_len; ++n) {
    std::vector<std::vector<int>> level;
    std::vector<int> cur(rank, 0);
    // distribute total |.|-mass n over coordinates with signs
    auto rec = [&](auto&& self, int idx, int rem) -> void {
      if (idx == rank) {
        if (rem == 0) level.push_back(cur);
        return;
      }
      for (int a = -rem; a <= rem; ++a) {
        cur[idx] = a;
        self(self, idx + 1, rem - std::abs(a));
      }
      cur[idx] = 0;
    };
    rec(rec, 0, n);
    std::sort(level.begin(), level.end());
    for (auto& d : level) out.push_back(GroupWord::displacement(d));
  }
}

}  // namespace

std::vector<GroupWord> word_ball(const GroupSchema& schema, int max_len) {
  std::vector<GroupWord> out;
  if (schema.kind == GroupSchema::Kind::FreeAbelian) {
    enumerate_abelian(schema.rank, max_len, out);
    return out;
  }
  // finite: grow ball by multiplication, keep one shortest word per element
  std::map<int, GroupWord> found;
  found.emplace(0, GroupWord::identity());
  std::vector<int> frontier{0};
  for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<int> next;
    for (int el : frontier) {
      for (int g = 1; g < schema.order(); ++g) {
        int m = schema.multiply(el, g);
        if (!found.count(m)) {
          found.emplace(m, found.at(el).concat(GroupWord::generator(g)));
          next.push_back(m);
        }
      }
    }
    frontier = std::move(next);
  }
  for (auto& [el, w] : found) out.push_back(w);
  std::stable_sort(out.begin(), out.end(), [](const GroupWord& a, const GroupWord& b) {
    return a.length() < b.length();
  });
  return out;
}

}  // namespace clopen
