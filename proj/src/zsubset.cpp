#include "clopenlab/zsubset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace clopen {

namespace {

std::int64_t pos_mod(std::int64_t n, std::int64_t m) {
  std::int64_t r = n % m;
  return r < 0 ? r + m : r;
}

}  // namespace

void ZSubsetSpec::normalize() {
  for (auto& p : progs_) {
    if (p.modulus < 1) throw std::invalid_argument("progression modulus must be >= 1");
    p.residue = pos_mod(p.residue, p.modulus);
  }
  std::sort(progs_.begin(), progs_.end(), [](const Progression& a, const Progression& b) {
    return std::tie(a.modulus, a.residue) < std::tie(b.modulus, b.residue);
  });
  progs_.erase(std::unique(progs_.begin(), progs_.end(),
                           [](const Progression& a, const Progression& b) {
                             return a.modulus == b.modulus && a.residue == b.residue;
                           }),
               progs_.end());
}

ZSubsetSpec ZSubsetSpec::progressions(std::vector<Progression> ps) {
  ZSubsetSpec s;
  s.progs_ = std::move(ps);
  s.normalize();
  return s;
}

ZSubsetSpec ZSubsetSpec::complement_of(ZSubsetSpec inner) {
  inner.complemented_ = !inner.complemented_;
  return inner;
}

ZSubsetSpec ZSubsetSpec::weiss(int m) {
  if (m < 1 || m > 40) throw std::invalid_argument("weiss truncation m must be in [1, 40]");
  std::vector<Progression> ps;
  for (int k = 0; k < m; ++k)
    ps.push_back({std::int64_t{1} << (k + 2), (std::int64_t{1} << k) - 1});
  ZSubsetSpec s = progressions(std::move(ps));
  s.weiss_m_ = m;
  return s;
}

ZSubsetSpec ZSubsetSpec::parse(const std::string& text) {
  if (text == "all") return progressions({{1, 0}});
  if (text == "none") return progressions({});
  if (text == "evens") return progressions({{2, 0}});
  if (text == "odds") return progressions({{2, 1}});
  if (text.rfind("weiss:", 0) == 0) return weiss(std::stoi(text.substr(6)));
  if (text == "weiss") return weiss(10);
  if (text.rfind("complement:", 0) == 0) return complement_of(parse(text.substr(11)));
  std::vector<Progression> ps;
  std::istringstream is(text);
  std::string part;
  while (std::getline(is, part, ';')) {
    auto comma = part.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("expected 'modulus,residue' in '" + part + "'");
    ps.push_back({std::stoll(part.substr(0, comma)), std::stoll(part.substr(comma + 1))});
  }
  return progressions(std::move(ps));
}

bool ZSubsetSpec::contains(std::int64_t n) const {
  bool in = false;
  for (auto& p : progs_)
    if (pos_mod(n, p.modulus) == p.residue) {
      in = true;
      break;
    }
  return complemented_ ? !in : in;
}

std::string ZSubsetSpec::str() const {
  std::ostringstream os;
  if (complemented_) os << "complement:";
  if (weiss_m_ > 0) {
    os << "weiss:" << weiss_m_;
    return os.str();
  }
  for (std::size_t i = 0; i < progs_.size(); ++i)
    os << (i ? ";" : "") << progs_[i].modulus << "," << progs_[i].residue;
  if (progs_.empty()) os << "none";
  return os.str();
}

std::int64_t ZSubsetSpec::period() const {
  std::int64_t P = 1;
  for (auto& p : progs_) P = std::lcm(P, p.modulus);
  return P;
}

std::vector<std::int64_t> ZSubsetSpec::residues() const {
  std::int64_t P = period();
  std::vector<std::int64_t> out;
  for (std::int64_t r = 0; r < P; ++r)
    if (contains(r)) out.push_back(r);
  return out;
}

Rational ZSubsetSpec::density() const {
  return Rational(static_cast<std::int64_t>(residues().size()), period());
}

std::pair<Rational, Rational> density_bounds(const ZSubsetSpec& A, std::int64_t W) {
  if (W < 1) throw std::invalid_argument("window must be >= 1");
  std::int64_t P = A.period();
  if (P <= W) {
    Rational d = A.density();
    return {d, d};
  }
  // counting estimates over prefixes N in (W/2, W]
  std::int64_t count = 0;
  Rational lo, hi;
  bool first = true;
  for (std::int64_t n = 0; n < W; ++n) {
    if (A.contains(n)) ++count;
    std::int64_t N = n + 1;
    if (N <= W / 2) continue;
    Rational r(count, N);
    if (first || r < lo) lo = r;
    if (first || r > hi) hi = r;
    first = false;
  }
  return {lo, hi};
}

namespace {

// Kuhn matching, rows in index order (deterministic)
bool augment(int u, const std::vector<std::vector<int>>& adj, std::vector<int>& mr,
             std::vector<int>& mc, std::vector<char>& seen) {
  for (int v : adj[u]) {
    if (seen[v]) continue;
    seen[v] = 1;
    if (mc[v] < 0 || augment(mc[v], adj, mr, mc, seen)) {
      mr[u] = v;
      mc[v] = u;
      return true;
    }
  }
  return false;
}

}  // namespace

ZResult zsubset_equidecompose(const ZSubsetSpec& A, const ZSubsetSpec& B,
                              const std::vector<std::int64_t>& shifts, std::int64_t window) {
  if (shifts.empty()) return ZUnknown{window, "empty shift set"};
  std::int64_t maxs = 0;
  for (auto s : shifts) maxs = std::max(maxs, s < 0 ? -s : s);
  if (window < maxs) throw std::invalid_argument("window smaller than the largest shift");

  // (i) periodic residue matching over the common period
  std::int64_t P = std::lcm(A.period(), B.period());
  if (P <= window) {
    std::vector<std::int64_t> ra, rb;
    for (std::int64_t r = 0; r < P; ++r) {
      if (A.contains(r)) ra.push_back(r);
      if (B.contains(r)) rb.push_back(r);
    }
    std::map<std::int64_t, int> bidx;
    for (std::size_t j = 0; j < rb.size(); ++j) bidx[rb[j]] = static_cast<int>(j);
    std::vector<std::vector<int>> adj(ra.size());
    std::vector<std::map<int, std::int64_t>> shift_for(ra.size());
    for (std::size_t i = 0; i < ra.size(); ++i)
      for (auto s : shifts) {
        auto it = bidx.find(pos_mod(ra[i] + s, P));
        if (it == bidx.end()) continue;
        if (shift_for[i].try_emplace(it->second, s).second) adj[i].push_back(it->second);
      }
    std::vector<int> mr(ra.size(), -1), mc(rb.size(), -1);
    int matched = 0;
    for (std::size_t u = 0; u < ra.size(); ++u) {
      std::vector<char> seen(rb.size(), 0);
      if (augment(static_cast<int>(u), adj, mr, mc, seen)) ++matched;
    }
    if (matched == static_cast<int>(ra.size())) {
      std::map<std::int64_t, std::vector<ZSubsetSpec::Progression>> fibers;
      for (std::size_t i = 0; i < ra.size(); ++i)
        fibers[shift_for[i].at(mr[i])].push_back({P, ra[i]});
      ZWitness w;
      w.period = P;
      for (auto& [s, ps] : fibers) w.fibers.emplace_back(s, ZSubsetSpec::progressions(ps));
      return w;
    }
  }

  // (ii) finite Hall violation in [-window, window] via the Koenig certificate
  std::vector<std::int64_t> av;
  for (std::int64_t n = -window + maxs; n <= window - maxs; ++n)
    if (A.contains(n)) av.push_back(n);
  std::set<std::int64_t> bset;
  for (auto a : av)
    for (auto s : shifts)
      if (B.contains(a + s)) bset.insert(a + s);
  std::vector<std::int64_t> bv(bset.begin(), bset.end());
  std::map<std::int64_t, int> bpos;
  for (std::size_t j = 0; j < bv.size(); ++j) bpos[bv[j]] = static_cast<int>(j);
  std::vector<std::vector<int>> adj(av.size());
  for (std::size_t i = 0; i < av.size(); ++i)
    for (auto s : shifts) {
      auto it = bpos.find(av[i] + s);
      if (it != bpos.end()) adj[i].push_back(it->second);
    }
  std::vector<int> mr(av.size(), -1), mc(bv.size(), -1);
  int unmatched = -1;
  for (std::size_t u = 0; u < av.size(); ++u) {
    std::vector<char> seen(bv.size(), 0);
    if (!augment(static_cast<int>(u), adj, mr, mc, seen) && unmatched < 0)
      unmatched = static_cast<int>(u);
  }
  if (unmatched >= 0) {
    // F = A-vertices reachable by alternating paths from the unmatched vertex
    std::vector<char> inF(av.size(), 0), inN(bv.size(), 0);
    std::vector<int> stack{unmatched};
    inF[unmatched] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (inN[v]) continue;
        inN[v] = 1;
        int u2 = mc[v];
        if (u2 >= 0 && !inF[u2]) {
          inF[u2] = 1;
          stack.push_back(u2);
        }
      }
    }
    HallViolation hv;
    hv.shifts = shifts;
    for (std::size_t i = 0; i < av.size(); ++i)
      if (inF[i]) hv.F.push_back(av[i]);
    // independent recount of |(F+S) n B| over all of Z
    std::set<std::int64_t> nb;
    for (auto f : hv.F)
      for (auto s : shifts)
        if (B.contains(f + s)) nb.insert(f + s);
    hv.neighborhood_count = static_cast<std::int64_t>(nb.size());
    if (hv.neighborhood_count < static_cast<std::int64_t>(hv.F.size())) return hv;
    return ZUnknown{window, "matching incomplete but the certificate did not recount"};
  }
  return ZUnknown{window, "window matching complete but period exceeds the window"};
}

bool verify_zwitness(const ZSubsetSpec& A, const ZSubsetSpec& B, const ZWitness& w,
                     std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  std::int64_t P = w.period;
  if (P < 1 || P % A.period() != 0 || P % B.period() != 0)
    return fail("witness period does not refine the spec periods");
  std::vector<int> cover(P, 0);
  std::set<std::int64_t> targets;
  for (auto& [s, piece] : w.fibers) {
    if (P % piece.period() != 0) return fail("fiber period mismatch");
    for (std::int64_t r = 0; r < P; ++r) {
      if (!piece.contains(r)) continue;
      if (!A.contains(r)) return fail("fiber outside A");
      if (++cover[r] > 1) return fail("fibers overlap");
      std::int64_t t = pos_mod(r + s, P);
      if (!B.contains(t)) return fail("image outside B");
      if (!targets.insert(t).second) return fail("images collide");
    }
  }
  for (std::int64_t r = 0; r < P; ++r)
    if (A.contains(r) && cover[r] == 0) return fail("fibers do not cover A");
  if (why) *why = "";
  return true;
}

}  // namespace clopen
