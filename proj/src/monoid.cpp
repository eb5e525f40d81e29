#include "clopenlab/monoid.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace clopen {

using boost::multiprecision::cpp_int;

long long degree(const Vec& v) { return std::accumulate(v.begin(), v.end(), 0LL); }

Vec vec_add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

static bool vec_geq(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

static Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

static Vec vec_scale(long long n, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = n * a[i];
  return r;
}

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

void MonoidPresentation::normalize() {
  std::vector<std::pair<Vec, Vec>> out;
  for (auto& [l, r] : relations) {
    if (l == r) continue;
    if (r < l) out.emplace_back(r, l);
    else out.emplace_back(l, r);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  relations = std::move(out);
}

void MonoidPresentation::validate() const {
  if (gens < 0) throw std::invalid_argument("monoid: negative generator count");
  for (auto& [l, r] : relations) {
    if ((int)l.size() != gens || (int)r.size() != gens)
      throw std::invalid_argument("monoid: relation arity mismatch");
    for (long long x : l)
      if (x < 0) throw std::invalid_argument("monoid: negative exponent");
    for (long long x : r)
      if (x < 0) throw std::invalid_argument("monoid: negative exponent");
  }
}

MonoidPresentation MonoidPresentation::parse(const std::string& text) {
  MonoidPresentation p;
  bool saw_gens = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("monoid line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "gens:") {
      if (saw_gens) fail("duplicate gens");
      if (!(ls >> p.gens) || p.gens < 0) fail("bad generator count");
      saw_gens = true;
    } else if (key == "rel:") {
      if (!saw_gens) fail("rel before gens");
      Vec l, r;
      std::string tok;
      bool rhs = false;
      while (ls >> tok) {
        if (tok == "=") {
          if (rhs) fail("two '=' in relation");
          rhs = true;
          continue;
        }
        long long x;
        try {
          x = std::stoll(tok);
        } catch (...) {
          fail("bad exponent '" + tok + "'");
          return p;
        }
        if (x < 0) fail("negative exponent");
        (rhs ? r : l).push_back(x);
      }
      if (!rhs) fail("relation missing '='");
      if ((int)l.size() != p.gens || (int)r.size() != p.gens) fail("relation arity mismatch");
      p.relations.emplace_back(std::move(l), std::move(r));
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!saw_gens) throw std::invalid_argument("monoid: missing gens line");
  p.normalize();
  return p;
}

std::string MonoidPresentation::str() const {
  std::string s = "gens: " + std::to_string(gens) + "\n";
  for (auto& [l, r] : relations) {
    s += "rel:";
    for (long long x : l) s += " " + std::to_string(x);
    s += " =";
    for (long long x : r) s += " " + std::to_string(x);
    s += "\n";
  }
  return s;
}

CongClass congruence_class(const MonoidPresentation& p, const Vec& v, long long bound) {
  CongClass cls;
  if (degree(v) > bound) {
    cls.complete = false;
    return cls;
  }
  std::deque<Vec> queue;
  cls.members.insert(v);
  queue.push_back(v);
  while (!queue.empty()) {
    Vec w = queue.front();
    queue.pop_front();
    for (auto& [l, r] : p.relations) {
      for (int dir = 0; dir < 2; ++dir) {
        const Vec& from = dir ? r : l;
        const Vec& to = dir ? l : r;
        if (!vec_geq(w, from)) continue;
        Vec next = vec_add(vec_sub(w, from), to);
        if (degree(next) > bound) {
          cls.complete = false;
          continue;
        }
        if (cls.members.insert(next).second) queue.push_back(next);
      }
    }
  }
  return cls;
}

Tri monoid_eq(const MonoidPresentation& p, const Vec& a, const Vec& b, long long bound) {
  CongClass ca = congruence_class(p, a, bound);
  if (ca.members.count(b)) return Tri::Yes;
  if (ca.complete && degree(b) <= bound) return Tri::No;
  CongClass cb = congruence_class(p, b, bound);
  if (cb.members.count(a)) return Tri::Yes;
  if (cb.complete) return Tri::No;
  return Tri::Unknown;
}

LeqResult monoid_leq(const MonoidPresentation& p, const Vec& a, const Vec& b, long long bound) {
  CongClass cb = congruence_class(p, b, bound);
  for (const Vec& w : cb.members)
    if (vec_geq(w, a)) return {Tri::Yes, vec_sub(w, a)};
  // a <= b iff some member of class(b) dominates a, so a complete class
  // with no dominating member is a definitive refusal.
  if (cb.complete) return {Tri::No, {}};
  return {Tri::Unknown, {}};
}

// ---------------------------------------------------------------------------
// property catalog

static std::vector<Vec> vectors_up_to(int gens, long long bound) {
  std::vector<Vec> out;
  Vec cur(gens, 0);
  std::function<void(int, long long)> rec = [&](int i, long long left) {
    if (i == gens) {
      out.push_back(cur);
      return;
    }
    for (long long x = 0; x <= left; ++x) {
      cur[i] = x;
      rec(i + 1, left - x);
    }
    cur[i] = 0;
  };
  rec(0, bound);
  return out;
}

namespace {

struct Checker {
  const MonoidPresentation& p;
  long long bound;
  bool any_unknown = false;
  PropertyVerdict out;

  Checker(const MonoidPresentation& pp, const std::string& name, long long b) : p(pp), bound(b) {
    out.property = name;
    out.bound = b;
  }

  Tri eq(const Vec& a, const Vec& b) {
    Tri t = monoid_eq(p, a, b, bound);
    if (t == Tri::Unknown) any_unknown = true;
    return t;
  }
  Tri leq(const Vec& a, const Vec& b) {
    Tri t = monoid_leq(p, a, b, bound).verdict;
    if (t == Tri::Unknown) any_unknown = true;
    return t;
  }
  void fail(const std::string& cert, std::vector<Vec> wit) {
    out.verdict = Verdict::Fails;
    out.certificate = cert;
    out.witness_vectors = std::move(wit);
  }
  PropertyVerdict finish() {
    if (out.verdict != Verdict::Fails)
      out.verdict = any_unknown ? Verdict::Unknown : Verdict::HoldsWithinBound;
    return out;
  }
};

}  // namespace

static PropertyVerdict check_conical(const MonoidPresentation& p, long long bound) {
  Checker c(p, "conical", bound);
  Vec zero(p.gens, 0);
  CongClass z = congruence_class(p, zero, bound);
  if (!z.complete) c.any_unknown = true;
  for (const Vec& w : z.members) {
    // every split u + v = w ~ 0 forces u ~ 0 and v ~ 0
    for (const Vec& u : vectors_up_to(p.gens, degree(w))) {
      if (!vec_geq(w, u)) continue;
      Vec v = vec_sub(w, u);
      Tri tu = c.eq(u, zero), tv = c.eq(v, zero);
      if (tu == Tri::No || tv == Tri::No) {
        c.fail("u + v ~ 0 with u = " + vec_str(u) + ", v = " + vec_str(v) +
                   " and a summand not ~ 0",
               {u, v});
        return c.finish();
      }
    }
  }
  return c.finish();
}

static PropertyVerdict check_cancellative(const MonoidPresentation& p, long long bound) {
  Checker chk(p, "cancellative", bound);
  auto vecs = vectors_up_to(p.gens, bound);
  for (const Vec& a : vecs)
    for (const Vec& b : vecs) {
      if (!(a < b)) continue;
      for (const Vec& c : vecs) {
        if (degree(a) + degree(c) > bound || degree(b) + degree(c) > bound) continue;
        if (chk.eq(vec_add(a, c), vec_add(b, c)) != Tri::Yes) continue;
        if (chk.eq(a, b) == Tri::No) {
          chk.fail("a + c ~ b + c but a !~ b with a = " + vec_str(a) + ", b = " + vec_str(b) +
                       ", c = " + vec_str(c),
                   {a, b, c});
          return chk.finish();
        }
      }
    }
  return chk.finish();
}

static PropertyVerdict check_stably_finite(const MonoidPresentation& p, long long bound) {
  Checker c(p, "stably-finite", bound);
  Vec zero(p.gens, 0);
  auto vecs = vectors_up_to(p.gens, bound);
  for (const Vec& b : vecs)
    for (const Vec& a : vecs) {
      if (degree(a) + degree(b) > bound) continue;
      if (a == zero) continue;
      if (c.eq(vec_add(a, b), b) != Tri::Yes) continue;
      if (c.eq(a, zero) == Tri::No) {
        c.fail("a + b ~ b with a !~ 0: a = " + vec_str(a) + ", b = " + vec_str(b), {a, b});
        return c.finish();
      }
    }
  return c.finish();
}

static PropertyVerdict check_directly_finite(const MonoidPresentation& p, long long bound,
                                             const Vec& x) {
  Checker c(p, "directly-finite", bound);
  Vec zero(p.gens, 0);
  for (const Vec& a : vectors_up_to(p.gens, bound)) {
    if (a == zero || degree(a) + degree(x) > bound) continue;
    if (c.eq(vec_add(a, x), x) != Tri::Yes) continue;
    if (c.eq(a, zero) == Tri::No) {
      c.fail("a + x ~ x with a !~ 0: a = " + vec_str(a) + ", x = " + vec_str(x), {a, x});
      return c.finish();
    }
  }
  return c.finish();
}

static PropertyVerdict check_unperforated(const MonoidPresentation& p, long long bound,
                                          bool almost) {
  Checker c(p, almost ? "almost-unperforated" : "unperforated", bound);
  auto vecs = vectors_up_to(p.gens, bound);
  for (long long n = 1; n <= bound; ++n) {
    long long mult = almost ? n + 1 : n;
    if (mult < 2) continue;  // n = 1 instance is trivially true for plain unperforation
    for (const Vec& a : vecs) {
      if (degree(a) * mult > bound) continue;
      for (const Vec& b : vecs) {
        if (degree(b) * n > bound) continue;
        if (c.leq(vec_scale(mult, a), vec_scale(n, b)) != Tri::Yes) continue;
        if (c.leq(a, b) == Tri::No) {
          c.fail((almost ? std::string("(n+1)a <= nb") : std::string("na <= nb")) +
                     " but a !<= b with n = " + std::to_string(n) + ", a = " + vec_str(a) +
                     ", b = " + vec_str(b),
                 {a, b, Vec{n}});
          return c.finish();
        }
      }
    }
  }
  return c.finish();
}

static PropertyVerdict check_refinement(const MonoidPresentation& p, long long bound) {
  Checker c(p, "refinement", bound);
  auto vecs = vectors_up_to(p.gens, bound);
  auto splits_of = [&](const Vec& a) {
    // all (c1, c2) with c1 + c2 ~ a, componentwise splits over class(a)
    std::vector<std::pair<Vec, Vec>> out;
    CongClass ca = congruence_class(p, a, bound);
    if (!ca.complete) c.any_unknown = true;
    for (const Vec& w : ca.members)
      for (const Vec& c1 : vectors_up_to(p.gens, degree(w)))
        if (vec_geq(w, c1)) out.emplace_back(c1, vec_sub(w, c1));
    return out;
  };
  for (const Vec& a1 : vecs)
    for (const Vec& a2 : vecs) {
      if (degree(a1) + degree(a2) > bound) continue;
      Vec sum = vec_add(a1, a2);
      auto s1 = splits_of(a1);
      auto s2 = splits_of(a2);
      for (const Vec& b1 : vecs) {
        for (const Vec& b2 : vecs) {
          if (degree(b1) + degree(b2) > bound) continue;
          if (c.eq(sum, vec_add(b1, b2)) != Tri::Yes) continue;
          bool found = false, blocked = false;
          for (auto& [c11, c12] : s1) {
            for (auto& [c21, c22] : s2) {
              Tri t1 = c.eq(vec_add(c11, c21), b1);
              Tri t2 = c.eq(vec_add(c12, c22), b2);
              if (t1 == Tri::Yes && t2 == Tri::Yes) {
                found = true;
                break;
              }
              if (t1 == Tri::Unknown || t2 == Tri::Unknown) blocked = true;
            }
            if (found) break;
          }
          if (found) continue;
          if (blocked) {
            c.any_unknown = true;
            continue;
          }
          c.fail("no refinement matrix for a1 + a2 ~ b1 + b2: a1 = " + vec_str(a1) +
                     ", a2 = " + vec_str(a2) + ", b1 = " + vec_str(b1) + ", b2 = " + vec_str(b2),
                 {a1, a2, b1, b2});
          return c.finish();
        }
      }
    }
  return c.finish();
}

static PropertyVerdict check_simple(const MonoidPresentation& p, long long bound) {
  Checker c(p, "simple", bound);
  // multiples n x have degree up to bound^2; the rewrite search must reach them
  long long cbound = bound * bound;
  Vec zero(p.gens, 0);
  auto vecs = vectors_up_to(p.gens, bound);
  for (const Vec& x : vecs) {
    if (c.eq(x, zero) != Tri::No) continue;  // x must be provably nonzero
    for (const Vec& y : vecs) {
      bool found = false;
      for (long long n = 1; n <= bound; ++n) {
        if (monoid_leq(p, y, vec_scale(n, x), cbound).verdict == Tri::Yes) {
          found = true;
          break;
        }
      }
      if (!found) {
        // n beyond the bound may still work; failure is never definitive here
        c.any_unknown = true;
        return c.finish();
      }
    }
  }
  return c.finish();
}

static PropertyVerdict check_order_unit(const MonoidPresentation& p, long long bound,
                                        const Vec& x) {
  Checker c(p, "order-unit", bound);
  long long cbound = bound * bound;
  for (int g = 0; g < p.gens; ++g) {
    Vec e(p.gens, 0);
    e[g] = 1;
    bool found = false;
    for (long long n = 1; n <= bound; ++n)
      if (monoid_leq(p, e, vec_scale(n, x), cbound).verdict == Tri::Yes) {
        found = true;
        break;
      }
    if (!found) {
      c.any_unknown = true;  // larger multiples are out of reach
      return c.finish();
    }
  }
  return c.finish();
}

static PropertyVerdict check_weak_comparability(const MonoidPresentation& p, long long bound,
                                                const Vec& unit) {
  Checker c(p, "weak-comparability", bound);
  Vec zero(p.gens, 0);
  auto vecs = vectors_up_to(p.gens, bound);
  for (const Vec& a : vecs) {
    if (c.eq(a, zero) != Tri::No) continue;
    bool some_k = false;
    for (long long k = 1; k <= bound && !some_k; ++k) {
      // the premise kb <= unit only needs the class of the unit, so large k
      // stays decidable whenever that class is complete
      bool k_ok = true;
      for (const Vec& b : vecs) {
        Tri prem = monoid_leq(p, vec_scale(k, b), unit, bound * bound).verdict;
        if (prem == Tri::No) continue;
        if (prem == Tri::Unknown || c.leq(b, a) != Tri::Yes) {
          k_ok = false;
          break;
        }
      }
      if (k_ok) some_k = true;
    }
    if (!some_k) {
      c.any_unknown = true;  // a witnessing k may lie beyond the bound
      return c.finish();
    }
  }
  return c.finish();
}

std::vector<std::string> property_catalog() {
  return {"conical",       "cancellative",        "stably-finite", "directly-finite",
          "unperforated",  "almost-unperforated", "refinement",    "simple",
          "order-unit",    "weak-comparability"};
}

PropertyVerdict check_property(const MonoidPresentation& p, const std::string& property,
                               long long bound, const Vec* param) {
  p.validate();
  if (bound < 1) throw std::invalid_argument("monoid: bound must be >= 1");
  Vec sum_of_gens(p.gens, 1);
  const Vec& x = param ? *param : sum_of_gens;
  if (param && (int)param->size() != p.gens)
    throw std::invalid_argument("monoid: parameter arity mismatch");
  if (property == "conical") return check_conical(p, bound);
  if (property == "cancellative") return check_cancellative(p, bound);
  if (property == "stably-finite") return check_stably_finite(p, bound);
  if (property == "directly-finite") return check_directly_finite(p, bound, x);
  if (property == "unperforated") return check_unperforated(p, bound, false);
  if (property == "almost-unperforated") return check_unperforated(p, bound, true);
  if (property == "refinement") return check_refinement(p, bound);
  if (property == "simple") return check_simple(p, bound);
  if (property == "order-unit") return check_order_unit(p, bound, x);
  if (property == "weak-comparability") return check_weak_comparability(p, bound, x);
  throw std::invalid_argument("monoid: unknown property '" + property + "'");
}

AntisymmetricQuotient antisymmetric_quotient(const MonoidPresentation& p, const Vec& b,
                                             long long bound) {
  p.validate();
  AntisymmetricQuotient out;
  for (int g = 0; g < p.gens; ++g) {
    Vec e(p.gens, 0);
    e[g] = 1;
    for (long long n = 1; n <= bound && degree(b) * n <= bound; ++n) {
      LeqResult r = monoid_leq(p, e, vec_scale(n, b), bound);
      if (r.verdict == Tri::Unknown) out.bound_exhausted = true;
      if (r.verdict == Tri::Yes) {
        out.kept_generators.push_back(g);
        break;
      }
    }
  }
  auto project = [&](const Vec& v, Vec& res) {
    res.assign(out.kept_generators.size(), 0);
    for (std::size_t i = 0; i < out.kept_generators.size(); ++i) res[i] = v[out.kept_generators[i]];
    for (int g = 0; g < p.gens; ++g) {
      if (std::find(out.kept_generators.begin(), out.kept_generators.end(), g) ==
              out.kept_generators.end() &&
          v[g] != 0)
        return false;
    }
    return true;
  };
  MonoidPresentation q;
  q.gens = (int)out.kept_generators.size();
  for (auto& [l, r] : p.relations) {
    Vec pl, pr;
    if (project(l, pl) && project(r, pr)) q.relations.emplace_back(pl, pr);
  }
  // collapse u ~ v whenever u <= v <= u within the bound
  auto vecs = vectors_up_to(p.gens, bound);
  for (const Vec& u : vecs)
    for (const Vec& v : vecs) {
      if (!(u < v)) continue;
      LeqResult uv = monoid_leq(p, u, v, bound);
      LeqResult vu = monoid_leq(p, v, u, bound);
      if (uv.verdict == Tri::Unknown || vu.verdict == Tri::Unknown) out.bound_exhausted = true;
      if (uv.verdict == Tri::Yes && vu.verdict == Tri::Yes) {
        Vec pu, pv;
        if (project(u, pu) && project(v, pv)) q.relations.emplace_back(pu, pv);
      }
    }
  q.normalize();
  out.presentation = std::move(q);
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form and abelianizations

std::vector<cpp_int> smith_normal_form(std::vector<std::vector<cpp_int>> m) {
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  std::vector<cpp_int> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // find a nonzero pivot with minimal absolute value
    std::size_t pi = t, pj = t;
    bool found = false;
    cpp_int best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (!found || abs(m[i][j]) < abs(best))) {
          best = m[i][j];
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    std::swap(m[t], m[pi]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (m[i][t] != 0) {
          cpp_int q = m[i][t] / m[t][t];
          for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
          if (m[i][t] != 0) {
            std::swap(m[t], m[i]);
            dirty = true;
          }
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (m[t][j] != 0) {
          cpp_int q = m[t][j] / m[t][t];
          for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
          if (m[t][j] != 0) {
            for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][j]);
            dirty = true;
          }
        }
    }
    // pivot must divide every remaining entry for the divisibility chain
    bool restart = false;
    for (std::size_t i = t + 1; i < rows && !restart; ++i)
      for (std::size_t j = t + 1; j < cols && !restart; ++j)
        if (m[i][j] % m[t][t] != 0) {
          for (std::size_t jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
          restart = true;
        }
    if (restart) continue;
    diag.push_back(abs(m[t][t]));
    ++t;
  }
  return diag;
}

std::string GroupInvariants::str() const {
  std::vector<std::string> parts;
  for (int i = 0; i < rank; ++i) parts.push_back("Z");
  for (const auto& d : torsion) parts.push_back("Z/" + d.str());
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

static GroupInvariants quotient_invariants(const std::vector<std::vector<cpp_int>>& rows,
                                           int gens) {
  GroupInvariants out;
  auto diag = smith_normal_form(rows);
  int nonzero = 0;
  for (const auto& d : diag)
    if (d != 0) {
      ++nonzero;
      if (d > 1) out.torsion.push_back(d);
    }
  out.rank = gens - nonzero;
  return out;
}

GroupInvariants grothendieck(const MonoidPresentation& p) {
  p.validate();
  std::vector<std::vector<cpp_int>> rows;
  for (auto& [l, r] : p.relations) {
    std::vector<cpp_int> row(p.gens);
    for (int g = 0; g < p.gens; ++g) row[g] = cpp_int(l[g]) - cpp_int(r[g]);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) rows.emplace_back(p.gens, cpp_int(0));
  return quotient_invariants(rows, p.gens);
}

static std::vector<GroupWord> schema_generators(const GroupSchema& schema) {
  std::vector<GroupWord> gens;
  for (auto& w : word_ball(schema, 1))
    if (!(w == GroupWord::identity())) gens.push_back(w);
  return gens;
}

std::variant<CoinvariantsGroup, std::string> coinvariants(const ActionPtr& action,
                                                          const Depth& depth) {
  auto inv = invariant_partition(action, schema_generators(action->schema()), depth);
  if (auto* refusal = std::get_if<InvariantRefusal>(&inv)) return refusal->reason;
  auto& ip = std::get<InvariantPartition>(inv);
  std::size_t n = ip.partition.size();
  std::vector<std::vector<cpp_int>> rows;
  for (auto& perm : ip.permutations)
    for (std::size_t a = 0; a < n; ++a) {
      if ((std::size_t)perm[a] == a) continue;
      std::vector<cpp_int> row(n, 0);
      row[a] += 1;
      row[perm[a]] -= 1;
      rows.push_back(std::move(row));
    }
  if (rows.empty()) rows.emplace_back(n, cpp_int(0));
  CoinvariantsGroup out;
  out.atoms = n;
  out.boundary_rows = rows.size();
  out.invariants = quotient_invariants(rows, (int)n);
  return out;
}

// ---------------------------------------------------------------------------
// type monoid snapshots

Vec FiniteTypeSemigroup::type_of(const std::vector<char>& subset) const {
  Vec counts(orbits.size(), 0);
  for (std::size_t o = 0; o < orbits.size(); ++o)
    for (int pt : orbits[o])
      if (pt < (int)subset.size() && subset[pt]) ++counts[o];
  return counts;
}

FiniteTypeSemigroup finite_action_type_semigroup(const ActionPtr& fa) {
  const auto* spec = fa->as_finite();
  if (!spec) throw std::invalid_argument("finite type semigroup requires a finite action");
  int n = spec->points;
  // orbit partition: closure of each point under the full group table
  std::vector<int> orbit(n, -1);
  FiniteTypeSemigroup out;
  for (int s = 0; s < n; ++s) {
    if (orbit[s] >= 0) continue;
    int id = (int)out.orbits.size();
    std::vector<int> stack{s}, members{s};
    orbit[s] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto& row : spec->action_table) {
        int w = row[v];
        if (orbit[w] < 0) {
          orbit[w] = id;
          stack.push_back(w);
          members.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.orbits.push_back(std::move(members));
  }
  out.presentation.gens = n;
  for (auto& row : spec->action_table)
    for (int v = 0; v < n; ++v) {
      Vec l(n, 0), r(n, 0);
      l[v] = 1;
      r[row[v]] = 1;
      out.presentation.relations.emplace_back(std::move(l), std::move(r));
    }
  out.presentation.normalize();
  return out;
}

std::variant<TypeMonoidSnapshot, std::string> resolution_type_monoid(const ActionPtr& action,
                                                                     const Depth& depth, int L) {
  Partition part = level_partition(action, depth);
  auto ball = word_ball(action->schema(), L);
  TypeMonoidSnapshot snap;
  snap.action = action;
  snap.depth = depth;
  snap.word_len = L;
  snap.presentation.gens = (int)part.size();
  for (const auto& w : ball) {
    auto perm = part.word_permutation(w);
    if (!perm)
      return std::string("word " + w.str() +
                         " does not permute the atoms at this depth; refine the depth sequence");
    for (std::size_t a = 0; a < part.size(); ++a) {
      if ((std::size_t)(*perm)[a] == a) continue;
      Vec l(part.size(), 0), r(part.size(), 0);
      l[a] = 1;
      r[(*perm)[a]] = 1;
      snap.presentation.relations.emplace_back(std::move(l), std::move(r));
    }
  }
  snap.presentation.normalize();
  return snap;
}

}  // namespace clopen
