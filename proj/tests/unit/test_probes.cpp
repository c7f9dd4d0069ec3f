#include <random>

#include "recurshift/errors.hpp"
#include "recurshift/probes.hpp"
#include "support.hpp"

using namespace recurshift;

namespace {

PerturbedPoint P(const char* text) { return PerturbedPoint::parse(text); }

}  // namespace

TEST_CASE("seeded generator") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const auto v = a.uniform(-5, 5);
    CHECK(v == b.uniform(-5, 5));
    CHECK(v >= -5);
    CHECK(v <= 5);
  }
  CHECK_THROWS_AS(a.uniform(3, 2), InvalidArgument);
  Rng c(1), d(1);
  CHECK(sample_mixed_pairs(c, 50, 100) == sample_mixed_pairs(d, 50, 100));
}

TEST_CASE("samplers build what they promise") {
  Rng rng(3);
  for (const auto& [x, y] : sample_stable_pairs(rng, 200, 2, 9, 100)) {
    const auto k = first_disagreement(x, y, 64);
    REQUIRE(k.has_value());
    CHECK(*k >= 2);
    CHECK(*k <= 9);
    CHECK(x.at(-*k) != y.at(-*k));
  }
  for (const auto& [x, y] : sample_unstable_pairs(rng, 200, 2, 9, 100)) {
    const auto k = first_disagreement(x, y, 64);
    REQUIRE(k.has_value());
    CHECK(x.at(*k) != y.at(*k));
  }
  for (const auto& t : sample_stable_triples(rng, 200, 3, 100)) {
    CHECK(in_local_set(t.x, t.y, 4, 30));
    CHECK(in_local_set(t.x, t.z, 4, 30));
  }
  for (const auto& [x, y] : sample_distinct_pairs(rng, 200, 100)) CHECK_FALSE(x == y);
}

TEST_CASE("expansivity probe") {
  const Dyadic half = Dyadic::pow2(-1);
  const ProbeReport a = expansivity_probe({{P("zero"), P("xi:0")}}, half, 1, 100);
  CHECK(a.status == Status::Pass);
  CHECK(a.entries[0]["witness"] == 0);
  CHECK(a.entries[0]["distance"]["value"] == "1");

  const ProbeReport b = expansivity_probe({{P("xi:5"), P("xi:5+flip{-10}")}}, half, 1, 100);
  CHECK(b.entries[0]["witness"] == -10);

  const ProbeReport c = expansivity_probe({{P("rxi:2"), P("rxi:2+flip{7}")}}, Dyadic::pow2(-2), 2, 100);
  const auto w = c.entries[0]["witness"].get<int>();
  CHECK((w == 6 || w == 8));
  CHECK(Dyadic::parse(c.entries[0]["distance"]["value"].get<std::string>()) >= half);
  CHECK(c.entries[0]["nearest_exceeds_c"] == true);

  // Under T^5 a lone disagreement at 2 stays two steps off centre.
  const ProbeReport d = expansivity_probe({{P("xi:0"), P("xi:0+flip{2}")}}, Dyadic::pow2(-2), 5, 100);
  CHECK(d.status == Status::Fail);
  const ProbeReport e = expansivity_probe({{P("xi:0"), P("xi:0+flip{2}")}}, Dyadic::pow2(-3), 5, 100);
  CHECK(e.entries[0]["witness"] == 0);
  CHECK(e.entries[0]["distance"]["value"] == "1/4");

  CHECK_THROWS_AS(expansivity_probe({{P("xi:1"), P("xi:1")}}, half, 1, 10), PairEqual);
  CHECK_THROWS_AS(expansivity_probe({}, Dyadic::pow2(0), 1, 10), InvalidArgument);

  // Brute-force oracle: smallest |n| (positive first) with a disagreement at n.
  Rng rng(17);
  const auto pairs = sample_mixed_pairs(rng, 60, 40);
  const ProbeReport r = expansivity_probe(pairs, half, 1, 400);
  CHECK(r.status == Status::Pass);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x, y] = pairs[i];
    std::optional<std::int64_t> want;
    for (std::int64_t k = 0; k <= 400 && !want; ++k) {
      if (x.at(k) != y.at(k)) want = k;
      else if (x.at(-k) != y.at(-k)) want = -k;
    }
    REQUIRE(want.has_value());
    CHECK(r.entries[i]["witness"].get<std::int64_t>() == *want);
  }
}

TEST_CASE("hyperbolic probe") {
  const Dyadic one = Dyadic::pow2(0), half = Dyadic::pow2(-1);
  const ProbeReport s = hyperbolic_probe({{P("xi:0"), P("xi:0+flip{-4}")}}, {{P("xi:0"), P("xi:0+flip{5}")}}, one,
                                         half, half, 4);
  CHECK(s.status == Status::Pass);
  CHECK(s.entries[0]["equality_throughout"] == true);
  CHECK(s.entries[1]["equality_throughout"] == true);
  const ProbeReport tight = hyperbolic_probe({{P("xi:0"), P("xi:0+flip{-4}")}}, {}, one, Dyadic::pow2(-2), half, 4);
  CHECK(tight.status == Status::Fail);
  const ProbeReport outside = hyperbolic_probe({{P("xi:0"), P("xi:0+flip{2}")}}, {}, one, half, half, 4);
  CHECK(outside.status == Status::Fail);
  CHECK(outside.entries[0]["in_local_set"] == false);
}

TEST_CASE("fN scaling probe") {
  const ProbeReport a = fn_scaling_probe(Dyadic::pow2(2), 2, Dyadic::pow2(-1), {{P("xi:0"), P("xi:0+flip{-6}")}}, 8);
  CHECK(a.status == Status::Pass);
  CHECK(a.entries[0]["distance_after_inverse"]["value"] == "1/16");
  const ProbeReport b = fn_scaling_probe(Dyadic::pow2(1), 1, Dyadic::pow2(-1), {{P("xi:0"), P("xi:0+flip{-3}")}}, 8);
  CHECK(b.entries[0]["distance_after_inverse"]["value"] == "1/4");
  const ProbeReport c = fn_scaling_probe(Dyadic::pow2(1), 1, Dyadic::pow2(-1), {{P("xi:0"), P("xi:0")}}, 8);
  CHECK(c.summary["skipped"] == 1);
  CHECK(c.status == Status::Pass);
  CHECK_THROWS_AS(fn_scaling_probe(Dyadic::pow2(3), 2, Dyadic::pow2(-1), {}, 8), InvalidArgument);
  CHECK_THROWS_AS(fn_scaling_probe(Dyadic::pow2(1), 1, Dyadic::pow2(0), {}, 8), InvalidArgument);
}

TEST_CASE("lemma probe") {
  const Dyadic half = Dyadic::pow2(-1), two = Dyadic::pow2(1);
  const ProbeReport a = lemma_probe(half, {{P("xi:0"), P("xi:0+flip{-5}"), P("xi:0+flip{-7}")}}, two, 16, 64);
  CHECK(a.status == Status::Pass);
  CHECK(a.entries[0]["expansion_ok"] == true);
  const ProbeReport same = lemma_probe(half, {{P("xi:0"), P("xi:0+flip{-5}"), P("xi:0+flip{-5}")}}, two, 16, 64);
  CHECK(same.status == Status::Pass);
  CHECK(same.entries[0]["lemma_ok"] == true);
  CHECK_THROWS_AS(lemma_probe(Dyadic::pow2(-64), {}, two, 16, 64), InvalidArgument);
  Rng rng(8);
  const ProbeReport many = lemma_probe(half, sample_stable_triples(rng, 300, 1, 500), two, 32, 4096);
  CHECK(many.summary["lemma_failures"] == 0);
  CHECK(many.summary["corollary_failures"] == 0);
}

TEST_CASE("distality probe") {
  const ProbeReport r =
      distality_probe({{P("zero"), P("xi:0")}, {P("xi:3"), P("xi:3")}, {P("xi:0"), P("xi:2")}}, 64);
  CHECK(r.entries[0]["trend"] == "decreasing");
  CHECK(r.entries[0]["proximal_evidence"] == true);
  CHECK(r.entries[1]["trend"] == "zero");
  CHECK(r.entries[2]["trend"] == "decreasing");
  CHECK_THROWS_AS(distality_probe({}, 4), InvalidArgument);
}

TEST_CASE("pseudo-orbits and tracing") {
  const PerturbedPoint x(PointDescriptor::xi(3));
  const PseudoOrbit good({x, x.shifted(1).with_flip(5), x.shifted(2)}, Dyadic::pow2(-2));
  CHECK(good.jumps() == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(PseudoOrbit({x, x.shifted(1).with_flip(2)}, Dyadic::pow2(-2)), InvalidArgument);

  const ProbeReport r = potp_probe(Dyadic::pow2(-4), Dyadic::pow2(-2), 24, 12, 7, 1 << 16);
  CHECK(r.status == Status::Pass);
  CHECK(r.entries[0]["traced"] == true);
  CHECK(r.entries[0]["jumps"].empty());
  const ProbeReport again = ProbeReport::from_json(r.to_json());
  CHECK(again == r);
  CHECK(again.to_json().dump() == r.to_json().dump());
}

TEST_CASE("stable probe") {
  Rng rng(4);
  auto pairs = sample_stable_pairs(rng, 50, 1, 10, 200);
  const ProbeReport r = stable_probe(pairs, 1, 32);
  CHECK(r.status == Status::Pass);
  CHECK(r.summary["decomposition_failures"] == 0);
}
