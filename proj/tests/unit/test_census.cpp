#include <cmath>

#include "doctest.h"
#include "sscov/circuit_census.hpp"
#include "sscov/errors.hpp"
#include "sscov/partition.hpp"
#include "unit/oracles.hpp"

using namespace sscov;
using namespace sscov::census;

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t out = 1;
  while (e-- > 0) out *= b;
  return out;
}

}  // namespace

TEST_CASE("census examples") {
  CHECK(census_S(Word::parse("aa"), 2, 3).exact_count == 6);
  CHECK(census_S(Word::parse("abba"), 2, 2).exact_count == 8);
  CHECK(census_S(Word::parse("abab"), 2, 2).exact_count < 8);
  CHECK(census_W(Word::parse("aa"), 3).exact_count == 9);
  CHECK(census_W(Word::parse("abba"), 2).exact_count == 8);
}

TEST_CASE("predicted counts") {
  CHECK(predicted_count_S(Word::parse("aabb"), 3, 5) == 75u);
  CHECK(predicted_count_S(Word::parse("aa"), 7, 11) == 77u);
  CHECK_FALSE(predicted_count_S(Word::parse("abab"), 3, 3).has_value());
  CHECK_THROWS_AS(predicted_count_S(Word::parse("abcddcba"), 1'000'000'000, 1'000'000'000), SizeLimitError);
}

TEST_CASE("propagating search equals full tuple enumeration") {
  for (int m = 2; m <= 6; m += 2) {
    for (const auto& p : enumerate_partitions(m)) {
      const Word w = p.to_word();
      const int top = m == 6 ? 3 : 4;
      for (int a = 1; a <= top; ++a) {
        for (int b = 1; b <= top; ++b) {
          CHECK_MESSAGE(census_S(w, a, b).exact_count == oracle::census_S(w.letters(), a, b),
                        w.str() << " p=" << a << " n=" << b);
        }
        CHECK(census_W(w, a).exact_count == oracle::census_W(w.letters(), a));
      }
    }
  }
}

TEST_CASE("exact-match rule agrees with the oracle") {
  CensusOptions exact;
  exact.rule = MatchRule::Exact;
  for (int m = 2; m <= 6; m += 2) {
    for (const auto& p : enumerate_partitions(m)) {
      const Word w = p.to_word();
      for (int a = 1; a <= 3; ++a) {
        CHECK(census_S(w, a, a, exact).exact_count == oracle::census_S(w.letters(), a, a, oracle::Rule::Exact));
        CHECK(census_W(w, a, exact).exact_count == oracle::census_W(w.letters(), a, oracle::Rule::Exact));
      }
    }
  }
  // Under the exact rule the two letters of abba need distinct row vertices.
  CHECK(census_S(Word::parse("abba"), 3, 4, exact).exact_count == 3 * 2 * 4);
}

TEST_CASE("closed form is exact for SS words") {
  for (int k = 1; k <= 3; ++k) {
    for (const auto& sw : special_symmetric_words(k)) {
      for (int p = 1; p <= 4; ++p) {
        for (int n = 1; n <= 4; ++n) {
          const auto r = census_S(sw.word, p, n);
          REQUIRE(r.predicted_count.has_value());
          CHECK(r.exact_count == *r.predicted_count);
          CHECK(*r.predicted_count == ipow(p, sw.stats.r_plus_1) * ipow(n, sw.stats.b - sw.stats.r_plus_1 + 1));
        }
      }
    }
  }
}

TEST_CASE("non-SS words vanish relative to N^(b+1)") {
  for (int m = 2; m <= 6; m += 2) {
    for (const auto& p : enumerate_partitions(m)) {
      if (is_special_symmetric(p)) continue;
      const Word w = p.to_word();
      double prev = 2.0;
      for (int N = 2; N <= 4; ++N) {
        const double ratio = static_cast<double>(census_S(w, N, N).exact_count) /
                             std::pow(static_cast<double>(N), w.distinct_letters() + 1);
        CHECK(ratio <= prev);
        prev = ratio;
      }
      CHECK(prev < 1.0);
    }
  }
}

TEST_CASE("Wigner counts on SS words are N^(b+1)") {
  for (int k = 1; k <= 3; ++k) {
    for (const auto& sw : special_symmetric_words(k)) {
      for (int N = 2; N <= 4; ++N) {
        const auto r = census_W(sw.word, N);
        CHECK(r.exact_count == ipow(N, sw.stats.b + 1));
        CHECK(r.exact_count == *r.predicted_count);
      }
    }
  }
}

TEST_CASE("containment in the Wigner class") {
  CHECK(verify_containment(Word::parse("aa"), 2, 3));
  CHECK(verify_containment(Word::parse("abba"), 2, 2));
  CHECK(verify_containment(Word::parse("abab"), 2, 2));
  for (int m = 2; m <= 6; m += 2) {
    for (const auto& p : enumerate_partitions(m)) {
      for (int a = 1; a <= 3; ++a) {
        for (int b = 1; b <= 3; ++b) CHECK(verify_containment(p.to_word(), a, b));
      }
    }
  }
}

TEST_CASE("budget") {
  CensusOptions tight;
  tight.budget = 10;
  CHECK_THROWS_AS(census_S(Word::parse("abba"), 3, 3, tight), SizeLimitError);
  CHECK(candidate_assignments(Word::parse("abba"), Link::S, 3, 5) == 3 * 5 * 3);
  CHECK_THROWS_AS(census_S(Word::parse("aa"), 0, 3), InputError);
}

TEST_CASE("csv rows") {
  const auto r = census_S(Word::parse("abab"), 2, 2);
  CHECK(census_csv_row(r) == "abab,S,2,2," + std::to_string(r.exact_count) + ",\n");
  CHECK(census_csv_row(census_S(Word::parse("aa"), 2, 3)) == "aa,S,2,3,6,6\n");
}
