#include <random>
#include <thread>

#include "../oracles.hpp"
#include "recurshift/config.hpp"
#include "recurshift/errors.hpp"
#include "recurshift/omega.hpp"
#include "recurshift/point.hpp"
#include "support.hpp"

using namespace recurshift;

namespace {

struct CapGuard {
  explicit CapGuard(std::int64_t cap) { set_materialize_cap(cap); }
  ~CapGuard() { set_materialize_cap(0); }
};

}  // namespace

TEST_CASE("index parsing and checked arithmetic") {
  const Index big = parse_index("-170141183460469231731687303715884105728");
  CHECK(big == kIndexMin);
  CHECK(to_string(kIndexMax) == "170141183460469231731687303715884105727");
  CHECK(parse_index("+42") == 42);
  CHECK(to_string(Index{0}) == "0");
  CHECK_THROWS_AS(parse_index("12a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_index(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_index("170141183460469231731687303715884105728"), std::invalid_argument);
  CHECK_THROWS_AS(checked_add(kIndexMax, 1), CapacityExceeded);
  CHECK_THROWS_AS(checked_sub(kIndexMin, 1), CapacityExceeded);
  CHECK_THROWS_AS(checked_mul(kIndexMax / 2 + 1, 2), CapacityExceeded);
  CHECK_THROWS_AS(checked_neg(kIndexMin), CapacityExceeded);
  CHECK(checked_mul(-3, 7) == -21);
}

TEST_CASE("word storage") {
  const Word w = W("1010010100010100101");
  CHECK(w.size() == 19);
  CHECK(w.to_string() == "1010010100010100101");
  CHECK(w.count_ones() == 8);
  CHECK(w.reversed().to_string() == "1010010100010100101");
  CHECK(W("110").reversed() == W("011"));
  CHECK(w.slice(8, 3) == W("000"));
  CHECK(w.extract(0, 5) == 0b00101u);
  CHECK_THROWS_AS(Word::from_string("102"), InvalidArgument);
  CHECK(W("10") < W("11"));
  CHECK(W("1") < W("10"));

  Word self = W("10");
  self.append(self);
  self.append(self, 1, 2);
  CHECK(self.to_string() == "101001");

  // Crossing 64-bit block boundaries.
  std::mt19937_64 rng(7);
  std::string text;
  Word built;
  for (int i = 0; i < 300; ++i) {
    const int b = static_cast<int>(rng() & 1);
    text += static_cast<char>('0' + b);
    built.push_back(b);
  }
  CHECK(built.to_string() == text);
  CHECK(Word::from_string(text) == built);
  for (std::size_t pos = 0; pos < 300; pos += 37) {
    const std::uint64_t bits = built.extract(pos, 64);
    for (unsigned j = 0; j < 64; ++j) {
      const int expect = pos + j < 300 ? text[pos + j] - '0' : 0;
      CHECK(static_cast<int>((bits >> j) & 1u) == expect);
    }
  }
  Word z = Word::zeros(70);
  z.append_zeros(3);
  CHECK(z.size() == 73);
  CHECK(z.count_ones() == 0);
}

TEST_CASE("omega_length") {
  CHECK(omega_length(1) == 1);
  CHECK(omega_length(3) == 8);
  CHECK(omega_length(4) == 19);
  CHECK(omega_length(26) == 100663269);
  for (int n = 1; n < max_omega_index(); ++n) CHECK(omega_length(n + 1) == 2 * omega_length(n) + n);
  for (int n = 3; n <= 40; ++n) CHECK(omega_length(n) >= Index{1} << n);
  CHECK(max_omega_index() >= 120);
  CHECK_THROWS_AS(omega_length(0), InvalidArgument);
  CHECK_THROWS_AS(omega_length(max_omega_index() + 1), CapacityExceeded);
  CHECK(enclosing_omega(0) == 1);
  CHECK(enclosing_omega(1) == 2);
  CHECK(enclosing_omega(8) == 4);
  CHECK(enclosing_omega(18) == 4);
  CHECK(enclosing_omega(19) == 5);
}

TEST_CASE("omega_word matches the reference construction") {
  CHECK(omega_word(1).to_string() == "1");
  CHECK(omega_word(2).to_string() == "101");
  CHECK(omega_word(3).to_string() == "10100101");
  CHECK(omega_word(4).to_string() == "1010010100010100101");
  for (int n = 1; n <= 16; ++n) CHECK(omega_word(n).to_string() == oracle::omega(n));
  for (int n = 1; n < 22; ++n) {
    const Word a = omega_word(n);
    const Word b = omega_word(n + 1);
    CHECK(b.size() == static_cast<std::size_t>(omega_length(n + 1)));
    CHECK(a.is_prefix_of(b));
    CHECK(a.is_suffix_of(b));
  }
  CHECK_THROWS_AS(omega_word(5, 41), CapExceeded);
  CHECK(omega_word(5, 42).size() == 42);
}

TEST_CASE("xi_at") {
  CHECK(xi_at(-5) == 0);
  CHECK(xi_at(0) == 1);
  CHECK(xi_at(11) == 1);
  CHECK(xi_at(-kIndexMax) == 0);
  // Deep coordinates resolve lazily.
  CHECK(xi_at(omega_length(100)) == 0);
  CHECK(xi_at(omega_length(100) - 1) == 1);
  CHECK(xi_at(omega_length(100) + 100) == 1);  // start of the right omega_100 copy
  const oracle::Xi ref(14);
  for (std::int64_t i = -40; i < ref.end(); ++i) CHECK(xi_at(i) == ref.at(i));

  const Word w20 = omega_word(20);
  bool all = true;
  for (std::size_t i = 0; i < w20.size(); ++i) all = all && xi_at(static_cast<Index>(i)) == w20[i];
  CHECK(all);
}

TEST_CASE("xi begins with omega_4 0^4 omega_4") {
  // The hand-written expansion "1010010100010100101000001010010100010100101" agrees
  // with the recursion on its first 19 symbols and then has one 0 too many.
  const std::string shown = "1010010100010100101000001010010100010100101";
  CHECK(xi_segment(0, 22).to_string() == shown.substr(0, 23));
  CHECK(xi_segment(0, 23).to_string() != shown.substr(0, 24));
  const std::string w4 = omega_word(4).to_string();
  CHECK(xi_segment(0, 41).to_string() == w4 + "0000" + w4);
}

TEST_CASE("xi_segment") {
  CHECK(xi_segment(0, 7).to_string() == "10100101");
  CHECK(xi_segment(8, 10).to_string() == "000");
  CHECK(xi_segment(-3, 2).to_string() == "000101");
  CHECK(xi_segment(-200, -100).count_ones() == 0);
  CHECK_THROWS_AS(xi_segment(3, 2), InvalidArgument);
  const Index far = omega_length(90);
  const Word seg = xi_segment(far - 50, far + 150);
  for (Index i = 0; i < 201; ++i) CHECK(seg[static_cast<std::size_t>(i)] == xi_at(far - 50 + i));
  const oracle::Xi ref(12);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::int64_t a = static_cast<std::int64_t>(rng() % 6000) - 100;
    const std::int64_t b = a + static_cast<std::int64_t>(rng() % 130);
    if (b >= ref.end()) continue;
    CHECK(xi_segment(a, b).to_string() == ref.window(a, b - a + 1));
  }
  CapGuard guard(16);
  CHECK(xi_segment(0, 15).size() == 16);
  CHECK_THROWS_AS(xi_segment(0, 16), CapExceeded);
}

TEST_CASE("xi_tape and reader") {
  const auto tape = xi_tape(1000);
  CHECK(tape->length() >= 1000);
  CHECK(tape->length() == omega_length(tape->omega_index()));
  CHECK(tape->bits(-3, 6) == 0b101000u);
  const XiReader reader(tape);
  const XiReader lazy;
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    const Index start = static_cast<Index>(rng() % 4000) - 2000;
    const unsigned count = 1 + static_cast<unsigned>(rng() % 64);
    CHECK(reader.bits(start, count) == lazy.bits(start, count));
  }
  {
    CapGuard guard(100);
    CHECK_THROWS_AS(xi_tape(Index{1} << 40), CapExceeded);
  }
}

TEST_CASE("concurrent queries agree") {
  std::vector<std::thread> threads;
  std::vector<int> ok(4, 1);
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([t, &ok] {
      std::mt19937_64 rng(static_cast<std::uint64_t>(t));
      const auto tape = xi_tape(Index{1} << (12 + t));
      const Word w = omega_word(15);
      for (int k = 0; k < 20000; ++k) {
        const std::size_t i = rng() % w.size();
        if (xi_at(static_cast<Index>(i)) != w[i]) ok[t] = 0;
        if (static_cast<Index>(i) < tape->length() && tape->at(static_cast<std::int64_t>(i)) != w[i]) ok[t] = 0;
      }
    });
  }
  for (auto& th : threads) th.join();
  for (int v : ok) CHECK(v == 1);
}

TEST_CASE("point descriptors") {
  CHECK(point_at(PointDescriptor::zero(), 17) == 0);
  CHECK(point_at(PointDescriptor::xi(2), 0) == 1);
  CHECK(point_at(PointDescriptor::reflected_xi(0), -1) == 0);
  CHECK(point_at(PointDescriptor::xi(0), 0) == 1);
  CHECK(reflect(PointDescriptor::zero()) == PointDescriptor::zero());
  CHECK(reflect(PointDescriptor::xi(3)) == PointDescriptor::reflected_xi(-3));
  CHECK(reflect(PointDescriptor::reflected_xi(5)) == PointDescriptor::xi(-5));
  CHECK(shift(PointDescriptor::xi(3), -5) == PointDescriptor::xi(-2));
  CHECK(shift(PointDescriptor::reflected_xi(1), 4) == PointDescriptor::reflected_xi(5));
  CHECK(shift(PointDescriptor::zero(), 4) == PointDescriptor::zero());

  CHECK(PointDescriptor::parse("zero") == PointDescriptor::zero());
  CHECK(PointDescriptor::parse("xi:-7") == PointDescriptor::xi(-7));
  CHECK(PointDescriptor::parse("rxi:12") == PointDescriptor::reflected_xi(12));
  CHECK(PointDescriptor::parse("rxi:12").to_string() == "rxi:12");
  CHECK_THROWS_AS(PointDescriptor::parse("xi"), InvalidArgument);
  CHECK_THROWS_AS(PointDescriptor::parse("yi:3"), InvalidArgument);
  CHECK_THROWS_AS(PointDescriptor::parse("xi:3x"), InvalidArgument);

  const oracle::Xi ref(13, 0);
  std::mt19937_64 rng(5);
  std::vector<PointDescriptor> family{PointDescriptor::zero()};
  for (int n = -30; n <= 30; n += 3) {
    family.push_back(PointDescriptor::xi(n));
    family.push_back(PointDescriptor::reflected_xi(n));
  }
  for (const auto& p : family) {
    CHECK(reflect(reflect(p)) == p);
    const PointDescriptor r = reflect(p);
    const int kind = p.kind == PointDescriptor::Kind::Zero ? 0 : p.kind == PointDescriptor::Kind::XiShift ? 1 : 2;
    for (int t = 0; t < 300; ++t) {
      const Index i = static_cast<Index>(rng() % 2000001) - 1000000;
      CHECK(point_at(r, i) == point_at(p, -i));
    }
    for (std::int64_t i = -3000; i <= 3000; i += 7) {
      CHECK(point_at(p, i) == oracle::point(ref, kind, static_cast<std::int64_t>(p.offset), i));
    }
    const PointReader reader(p, XiReader(xi_tape(10000)));
    for (int t = 0; t < 50; ++t) {
      const Index start = static_cast<Index>(rng() % 4000) - 2000;
      const unsigned count = 1 + static_cast<unsigned>(rng() % 64);
      const std::uint64_t bits = reader.bits(start, count);
      bool same = true;
      for (unsigned j = 0; j < count; ++j) same = same && static_cast<int>((bits >> j) & 1u) == point_at(p, start + j);
      CHECK(same);
    }
  }
  CHECK(reverse_bits(0b0011u, 4) == 0b1100u);
  CHECK(reverse_bits(1u, 64) == std::uint64_t{1} << 63);
}
