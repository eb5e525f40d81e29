#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "clopenlab/zsubset.hpp"

using namespace clopen;

TEST_CASE("membership and parsing") {
  ZSubsetSpec evens = ZSubsetSpec::parse("evens");
  CHECK(evens.contains(0));
  CHECK(evens.contains(-4));
  CHECK_FALSE(evens.contains(3));
  ZSubsetSpec c = ZSubsetSpec::parse("complement:4,0");
  CHECK_FALSE(c.contains(8));
  CHECK(c.contains(2));
  ZSubsetSpec w3 = ZSubsetSpec::parse("weiss:3");
  // {4n} u {8n+1} u {16n+3}
  CHECK(w3.contains(0));
  CHECK(w3.contains(4));
  CHECK(w3.contains(1));
  CHECK(w3.contains(9));
  CHECK(w3.contains(3));
  CHECK(w3.contains(19));
  CHECK_FALSE(w3.contains(2));
  CHECK(ZSubsetSpec::parse(w3.str()).contains(19));
}

TEST_CASE("weiss truncation densities") {
  // exact density 1/2 - 2^{-(m+1)} for every truncation
  for (int m = 1; m <= 8; ++m) {
    auto [lo, hi] = density_bounds(ZSubsetSpec::weiss(m), std::int64_t{1} << (m + 2));
    Rational expect = Rational(1, 2) - Rational(1, std::int64_t{1} << (m + 1));
    CHECK(lo == expect);
    CHECK(hi == expect);
  }
  auto [lo, hi] = density_bounds(ZSubsetSpec::parse("2,0"), 10);
  CHECK(lo == Rational(1, 2));
  auto [clo, chi] = density_bounds(ZSubsetSpec::parse("complement:4,0"), 16);
  CHECK(clo == Rational(3, 4));
  CHECK(chi == Rational(3, 4));
}

TEST_CASE("evens to odds by +1") {
  auto r = zsubset_equidecompose(ZSubsetSpec::parse("evens"), ZSubsetSpec::parse("odds"), {1}, 8);
  REQUIRE(std::holds_alternative<ZWitness>(r));
  auto& w = std::get<ZWitness>(r);
  CHECK(w.fibers.size() == 1);
  CHECK(w.fibers[0].first == 1);
  CHECK(verify_zwitness(ZSubsetSpec::parse("evens"), ZSubsetSpec::parse("odds"), w));
}

TEST_CASE("{4n} into {2n} by identity") {
  auto r = zsubset_equidecompose(ZSubsetSpec::parse("4,0"), ZSubsetSpec::parse("evens"), {0}, 8);
  REQUIRE(std::holds_alternative<ZWitness>(r));
  CHECK(verify_zwitness(ZSubsetSpec::parse("4,0"), ZSubsetSpec::parse("evens"),
                        std::get<ZWitness>(r)));
}

TEST_CASE("weiss set against its complement: Hall violation") {
  ZSubsetSpec A = ZSubsetSpec::weiss(10);
  ZSubsetSpec B = ZSubsetSpec::complement_of(A);
  for (std::int64_t L : {1, 2, 3}) {
    std::vector<std::int64_t> S;
    for (std::int64_t s = -L; s <= L; ++s) S.push_back(s);
    auto r = zsubset_equidecompose(A, B, S, 4096);
    REQUIRE(std::holds_alternative<HallViolation>(r));
    auto& hv = std::get<HallViolation>(r);
    CHECK(hv.neighborhood_count < static_cast<std::int64_t>(hv.F.size()));
    for (auto f : hv.F) CHECK(A.contains(f));
    // independent recount
    std::set<std::int64_t> nb;
    for (auto f : hv.F)
      for (auto s : S)
        if (B.contains(f + s)) nb.insert(f + s);
    CHECK(static_cast<std::int64_t>(nb.size()) == hv.neighborhood_count);
  }
}

TEST_CASE("enough shifts dissolve the truncated obstruction") {
  // weiss:2 = {4n} u {8n+1}, density 3/8 < 5/8: matching succeeds with
  // a modest shift set
  ZSubsetSpec A = ZSubsetSpec::weiss(2);
  ZSubsetSpec B = ZSubsetSpec::complement_of(A);
  std::vector<std::int64_t> S;
  for (std::int64_t s = -4; s <= 4; ++s) S.push_back(s);
  auto r = zsubset_equidecompose(A, B, S, 64);
  REQUIRE(std::holds_alternative<ZWitness>(r));
  CHECK(verify_zwitness(A, B, std::get<ZWitness>(r)));
}

TEST_CASE("window guard") {
  CHECK_THROWS_AS(zsubset_equidecompose(ZSubsetSpec::parse("evens"), ZSubsetSpec::parse("odds"),
                                        {5}, 3),
                  std::invalid_argument);
}
