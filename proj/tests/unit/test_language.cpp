#include <random>

#include "../oracles.hpp"
#include "recurshift/config.hpp"
#include "recurshift/errors.hpp"
#include "recurshift/language.hpp"
#include "recurshift/omega.hpp"
#include "support.hpp"

using namespace recurshift;

namespace {

std::set<std::string> as_strings(const FactorSet& set) {
  std::set<std::string> out;
  for (const auto& w : set.words) out.insert(w.to_string());
  return out;
}

std::vector<std::int64_t> as_int64(const std::vector<Index>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("factors examples") {
  CHECK(as_strings(factors(1, 1)) == std::set<std::string>{"0", "1"});
  CHECK(as_strings(factors(1, 7)) == std::set<std::string>{"0", "1"});
  CHECK(as_strings(factors(2, 5)) == std::set<std::string>{"00", "01", "10"});
  CHECK(factors(3, 5).contains(W("000")));
  CHECK_FALSE(factors(2, 5).contains(W("11")));
  const FactorSet f = factors(4, 6);
  CHECK(f.length == 4);
  CHECK(f.horizon_n == 6);
  CHECK(std::is_sorted(f.words.begin(), f.words.end()));
  CHECK_THROWS_AS(factors(0, 5), InvalidArgument);
  CHECK_THROWS_AS(factors(9, 3), InvalidArgument);  // l_3 = 8 < L
}

TEST_CASE("factors agree with brute force at fixed horizons") {
  for (int h = 2; h <= 13; ++h) {
    const oracle::Xi ref(h);
    for (std::size_t L = 1; L <= 14 && static_cast<Index>(L) <= omega_length(h); ++L) {
      CHECK(as_strings(factors(L, h)) == oracle::factors(ref, static_cast<std::int64_t>(L)));
    }
  }
  // Longer than one machine word.
  const oracle::Xi ref(11);
  CHECK(as_strings(factors(70, 11)) == oracle::factors(ref, 70));
}

TEST_CASE("factors_stabilized against the brute-force prefix") {
  for (std::size_t L = 1; L <= 12; ++L) {
    const auto [set, n] = factors_stabilized(L);
    CHECK(set.stabilized);
    CHECK(n >= static_cast<int>(L) + 2);
    const oracle::Xi ref(static_cast<int>(L) + 3);
    CHECK(as_strings(set) == oracle::factors(ref, static_cast<std::int64_t>(L)));
    for (const auto& w : set.words) CHECK(w.to_string().find("11") == std::string::npos);
  }
  CHECK(factors_stabilized(2).second <= 5);
  CHECK(factor_complexity(1) == 2);
  CHECK(factor_complexity(2) == 3);
  CHECK(factor_complexity(3) == oracle::factors(oracle::Xi(8), 3).size());
}

TEST_CASE("stabilization budget") {
  const auto [set, n] = factors_stabilized(6, 5);
  CHECK_FALSE(set.stabilized);
  CHECK(n == 0);
  CHECK(set.size() > 0);
  CHECK_THROWS_AS(factor_complexity(6, 5), BudgetExceeded);
  set_materialize_cap(1000);
  CHECK_THROWS_AS(factors(3, 12), CapExceeded);
  set_materialize_cap(0);
}

TEST_CASE("language invariants") {
  for (std::size_t L = 1; L <= 16; ++L) {
    const FactorSet small = factors_stabilized(L).first;
    for (const auto& w : small.words) CHECK(w.to_string().find("11") == std::string::npos);
    CHECK(small.contains(Word::zeros(L)));
    if (L == 16) break;
    const FactorSet big = factors_stabilized(L + 1).first;
    for (const auto& w : big.words) {
      CHECK(small.contains(w.slice(0, L)));
      CHECK(small.contains(w.slice(1, L)));
    }
  }
  for (std::size_t L = 1; L <= 8; ++L) {
    for (int h = 3; h <= 14; ++h) {
      if (omega_length(h) < static_cast<Index>(L)) continue;
      const auto a = as_strings(factors(L, h));
      const auto b = as_strings(factors(L, h + 1));
      CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
      if (a == b) {
        for (int more = 2; more <= 4; ++more) CHECK(as_strings(factors(L, h + more)) == a);
      }
    }
  }
}

TEST_CASE("occurrences examples") {
  CHECK(as_int64(occurrences(W("1"), {0, 10}).positions) == std::vector<std::int64_t>{0, 2, 5, 7});
  CHECK(as_int64(occurrences(W("000"), {0, 16}).positions) == std::vector<std::int64_t>{8});
  CHECK(occurrences(W("11"), {-1000, 100000}).positions.empty());
  const OccurrenceReport r = occurrences(W("1"), {-3, 10});
  CHECK(r.max_gap == Index{3});
  CHECK(r.leading_gap == Index{3});
  CHECK(r.trailing_gap == Index{3});
  const OccurrenceReport single = occurrences(W("000"), {0, 16});
  CHECK_FALSE(single.max_gap.has_value());
  CHECK(first_occurrence(W("00001"), {1, 100}) == Index{19});
}

TEST_CASE("streaming matcher equals the naive scan") {
  const oracle::Xi ref(13);
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 100; ++t) {
    const std::size_t len = 1 + rng() % 8;
    std::string w;
    if (rng() % 2) {
      const std::int64_t at = static_cast<std::int64_t>(rng() % 5000);
      w = ref.window(at, static_cast<std::int64_t>(len));
    } else {
      for (std::size_t i = 0; i < len; ++i) w += static_cast<char>('0' + (rng() & 1));
    }
    const std::int64_t a = static_cast<std::int64_t>(rng() % 6000) - 500;
    const std::int64_t b = a + static_cast<std::int64_t>(rng() % 2000);
    if (b + static_cast<std::int64_t>(len) > ref.end()) continue;
    CHECK(as_int64(occurrences(W(w.c_str()), {a, b}).positions) == oracle::occurrences(ref, w, a, b));
  }
  for (const std::int64_t len : {63, 64, 65, 100, 200}) {
    const std::string w = ref.window(1000, len);
    CHECK(as_int64(occurrences(W(w.c_str()), {-300, 5000}).positions) == oracle::occurrences(ref, w, -300, 5000));
  }
}

TEST_CASE("max_gap") {
  const Word one = W("1");
  CHECK(max_gap(one, {0, omega_length(6) - 1}) >= 6);
  CHECK(max_gap(W("0"), {0, omega_length(6) - 1}) <= 2);
  CHECK(max_gap(one, {-100, 100}) >= 100);
  CHECK_THROWS_AS(max_gap(W("11"), {0, 1000}), NoOccurrence);
  CHECK_THROWS_AS(max_gap(one, {-50, -1}), NoOccurrence);
  // Brute force with sentinels.
  const oracle::Xi ref(12);
  for (const std::int64_t a : {-40, 0, 17, 900}) {
    for (const std::int64_t b : {1200, 3000, 6000}) {
      const auto pos = oracle::occurrences(ref, "1", a, b);
      std::int64_t best = std::max(pos.front() - a, b - pos.back());
      for (std::size_t i = 1; i < pos.size(); ++i) best = std::max(best, pos[i] - pos[i - 1]);
      CHECK(max_gap(one, {a, b}) == best);
    }
  }
}
