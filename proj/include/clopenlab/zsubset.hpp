#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace clopen {

using Rational = boost::multiprecision::cpp_rational;

/// Periodic subsets of Z: unions of arithmetic progressions, complements, and
/// the Weiss set truncations U_{k<m} {2^{k+2} n + (2^k - 1)}.
class ZSubsetSpec {
 public:
  struct Progression {
    std::int64_t modulus = 1;  // >= 1
    std::int64_t residue = 0;  // in [0, modulus)
  };

  static ZSubsetSpec progressions(std::vector<Progression> ps);
  static ZSubsetSpec complement_of(ZSubsetSpec inner);
  static ZSubsetSpec weiss(int m);
  /// "m,r;m,r;...", "weiss:<m>", "complement:<spec>", "evens", "odds", "all", "none"
  static ZSubsetSpec parse(const std::string& text);

  bool contains(std::int64_t n) const;
  std::string str() const;
  int weiss_terms() const { return weiss_m_; }

  /// Common period and the sorted member residues mod that period. Every
  /// ZSubsetSpec is periodic, so this is always available.
  std::int64_t period() const;
  std::vector<std::int64_t> residues() const;

  /// Exact density as |residues| / period.
  Rational density() const;

 private:
  std::vector<Progression> progs_;
  bool complemented_ = false;
  int weiss_m_ = 0;  // > 0 when built via weiss()

  void normalize();
};

/// [lim-inf, lim-sup] estimates of the density by exact counting over
/// prefixes [0, N), N <= W; for these periodic specs the interval collapses
/// to the exact density once W covers a full period.
std::pair<Rational, Rational> density_bounds(const ZSubsetSpec& A, std::int64_t W);

/// Fibers A_s = {a in A : a maps by +s}: an injection A -> B by shifts in S.
struct ZWitness {
  std::vector<std::pair<std::int64_t, ZSubsetSpec>> fibers;  // (shift, piece)
  std::int64_t period = 1;
};

/// Finite F subset of A with |(F+S) n B| < |F|: no S-bounded injection exists.
struct HallViolation {
  std::vector<std::int64_t> F;
  std::vector<std::int64_t> shifts;
  std::int64_t neighborhood_count = 0;
};

struct ZUnknown {
  std::int64_t window = 0;
  std::string reason;
};

using ZResult = std::variant<ZWitness, HallViolation, ZUnknown>;

/// Periodic residue matching gives a witness; failed finite matching in
/// [-W, W] gives a Hall violation via the Koenig certificate, re-verified by
/// direct recount; otherwise Unknown.
ZResult zsubset_equidecompose(const ZSubsetSpec& A, const ZSubsetSpec& B,
                              const std::vector<std::int64_t>& shifts, std::int64_t window);

/// Replay a witness: fibers partition A and the shifted fibers are disjoint
/// subsets of B (checked over one full period).
bool verify_zwitness(const ZSubsetSpec& A, const ZSubsetSpec& B, const ZWitness& w,
                     std::string* why = nullptr);

}  // namespace clopen
