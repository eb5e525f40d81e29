#include "clopenlab/expr.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace clopen {

bool ClopenExpr::structurally_equal(const ClopenExpr& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Empty:
    case Kind::Full:
      return true;
    case Kind::Cylinder:
      return coord == o.coord && symbols == o.symbols;
    case Kind::LevelCylinder:
      return level == o.level && digit == o.digit;
    case Kind::Union:
    case Kind::Intersect:
      return lhs->structurally_equal(*o.lhs) && rhs->structurally_equal(*o.rhs);
    case Kind::Complement:
      return inner->structurally_equal(*o.inner);
  }
  return false;
}

namespace {
ExprPtr mk(ClopenExpr e) { return std::make_shared<const ClopenExpr>(std::move(e)); }
}  // namespace

ExprPtr expr_empty() {
  static ExprPtr e = mk({ClopenExpr::Kind::Empty});
  return e;
}
ExprPtr expr_full() {
  static ExprPtr e = mk({ClopenExpr::Kind::Full});
  return e;
}
ExprPtr expr_cylinder(int coord, std::vector<int> symbols) {
  return expr_cylinder2({coord, 0}, std::move(symbols));
}
ExprPtr expr_cylinder2(std::array<int, 2> coord, std::vector<int> symbols) {
  if (symbols.empty()) throw std::invalid_argument("cylinder needs at least one symbol");
  ClopenExpr e{ClopenExpr::Kind::Cylinder};
  e.coord = coord;
  e.symbols = std::move(symbols);
  return mk(std::move(e));
}
ExprPtr expr_level_cylinder(int level, int digit) {
  if (level < 1) throw std::invalid_argument("odometer levels are 1-based");
  ClopenExpr e{ClopenExpr::Kind::LevelCylinder};
  e.level = level;
  e.digit = digit;
  return mk(std::move(e));
}
ExprPtr expr_union(ExprPtr a, ExprPtr b) {
  ClopenExpr e{ClopenExpr::Kind::Union};
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return mk(std::move(e));
}
ExprPtr expr_intersect(ExprPtr a, ExprPtr b) {
  ClopenExpr e{ClopenExpr::Kind::Intersect};
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return mk(std::move(e));
}
ExprPtr expr_complement(ExprPtr a) {
  ClopenExpr e{ClopenExpr::Kind::Complement};
  e.inner = std::move(a);
  return mk(std::move(e));
}
ExprPtr expr_difference(ExprPtr a, ExprPtr b) {
  return expr_intersect(std::move(a), expr_complement(std::move(b)));
}
ExprPtr expr_union_all(const std::vector<ExprPtr>& parts) {
  if (parts.empty()) return expr_empty();
  ExprPtr acc = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) acc = expr_union(acc, parts[i]);
  return acc;
}

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                         std::to_string(column)),
      line(line),
      column(column) {}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  ExprPtr parse() {
    skip_ws();
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) {
    int line = 1, col = 1;
    for (size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else
        ++col;
    }
    throw ParseError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  int parse_int() {
    skip_ws();
    size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(text_[start]))))
      fail("expected integer");
    return std::stoi(text_.substr(start, pos_ - start));
  }

  ExprPtr parse_expr() {
    ExprPtr acc = parse_term();
    for (;;) {
      skip_ws();
      if (eat('|'))
        acc = expr_union(acc, parse_term());
      else if (eat('&'))
        acc = expr_intersect(acc, parse_term());
      else
        return acc;
    }
  }

  ExprPtr parse_term() {
    skip_ws();
    if (eat('~')) return expr_complement(parse_atom());
    return parse_atom();
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (eat('(')) {
      ExprPtr e = parse_expr();
      skip_ws();
      expect(')');
      return e;
    }
    if (eat('0')) return expr_empty();
    if (eat('X')) return expr_full();
    if (peek() == '[') return parse_cylinder();
    fail("expected '(', '[', '0' or 'X'");
  }

  ExprPtr parse_cylinder() {
    expect('[');
    std::vector<int> symbols;
    while (std::isalnum(static_cast<unsigned char>(peek()))) {
      char c = text_[pos_++];
      symbols.push_back(std::isdigit(static_cast<unsigned char>(c)) ? c - '0'
                                                                    : 10 + (std::tolower(c) - 'a'));
    }
    if (symbols.empty()) fail("cylinder needs at least one symbol");
    expect(']');
    expect('@');
    skip_ws();
    if (peek() == 'L') {
      ++pos_;
      int level = parse_int();
      if (level < 1) fail("odometer level must be >= 1");
      if (symbols.size() != 1) fail("level cylinder fixes exactly one digit");
      return expr_level_cylinder(level, symbols[0]);
    }
    if (eat('(')) {
      int x = parse_int();
      skip_ws();
      expect(',');
      int y = parse_int();
      skip_ws();
      expect(')');
      return expr_cylinder2({x, y}, std::move(symbols));
    }
    int x = parse_int();
    return expr_cylinder(x, std::move(symbols));
  }
};

char symbol_char(int s) {
  if (s < 0 || s >= 36) throw std::invalid_argument("symbol out of printable range");
  return s < 10 ? static_cast<char>('0' + s) : static_cast<char>('a' + s - 10);
}

void print_rec(const ExprPtr& e, std::ostream& os, bool parenthesize) {
  switch (e->kind) {
    case ClopenExpr::Kind::Empty:
      os << '0';
      return;
    case ClopenExpr::Kind::Full:
      os << 'X';
      return;
    case ClopenExpr::Kind::Cylinder:
      os << '[';
      for (int s : e->symbols) os << symbol_char(s);
      os << "]@";
      if (e->coord[1] == 0)
        os << e->coord[0];
      else
        os << '(' << e->coord[0] << ',' << e->coord[1] << ')';
      return;
    case ClopenExpr::Kind::LevelCylinder:
      os << '[' << symbol_char(e->digit) << "]@L" << e->level;
      return;
    case ClopenExpr::Kind::Complement:
      os << '~';
      print_rec(e->inner, os, true);
      return;
    case ClopenExpr::Kind::Union:
    case ClopenExpr::Kind::Intersect: {
      if (parenthesize) os << '(';
      print_rec(e->lhs, os, true);
      os << (e->kind == ClopenExpr::Kind::Union ? " | " : " & ");
      print_rec(e->rhs, os, true);
      if (parenthesize) os << ')';
      return;
    }
  }
}

}  // namespace

ExprPtr parse_clopen(const std::string& text) { return Parser(text).parse(); }

std::string print_clopen(const ExprPtr& e) {
  std::ostringstream os;
  print_rec(e, os, false);
  return os.str();
}

TypeExpr TypeExpr::copies(const ExprPtr& e, int n, int base) {
  TypeExpr t;
  for (int i = 0; i < n; ++i) t.summands.emplace_back(base + i, e);
  return t;
}

void TypeExpr::validate() const {
  for (size_t i = 0; i < summands.size(); ++i) {
    if (summands[i].first < 0) throw std::invalid_argument("copy indices must be >= 0");
    if (i > 0 && summands[i].first <= summands[i - 1].first)
      throw std::invalid_argument("copy indices must be strictly increasing");
  }
}

TypeExpr parse_type_expr(const std::string& text) {
  TypeExpr t;
  int copy = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t next = pos;
    int depth = 0;
    while (next < text.size() && !(depth == 0 && text[next] == '+')) {
      if (text[next] == '(' || text[next] == '[') ++depth;
      if (text[next] == ')' || text[next] == ']') --depth;
      ++next;
    }
    std::string part = text.substr(pos, next - pos);
    auto star = part.find('*');
    int mult = 1;
    if (star != std::string::npos) {
      mult = std::stoi(part.substr(0, star));
      part = part.substr(star + 1);
      if (mult < 0) throw std::invalid_argument("negative multiplicity in type expression");
    }
    ExprPtr e = parse_clopen(part);
    for (int i = 0; i < mult; ++i) t.summands.emplace_back(copy++, e);
    pos = next + (next < text.size() ? 1 : 0);
  }
  t.validate();
  return t;
}

std::string print_type_expr(const TypeExpr& t) {
  if (t.is_zero()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < t.summands.size(); ++i) {
    if (i) os << " + ";
    os << print_clopen(t.summands[i].second);
  }
  return os.str();
}

}  // namespace clopen
