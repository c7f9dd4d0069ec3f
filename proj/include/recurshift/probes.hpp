#pragma once

// Sampled checks of the metric machinery on the shift with the
// first-disagreement metric. Each probe returns a ProbeReport whose JSON form
// is deterministic for a fixed seed.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "recurshift/metric.hpp"
#include "recurshift/report.hpp"

namespace recurshift {

/// Seeded generator. Bounded draws use rejection on the raw 64-bit output so
/// the sample stream is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

using PointPair = std::pair<PerturbedPoint, PerturbedPoint>;

struct Triple {
  PerturbedPoint x;
  PerturbedPoint y;
  PerturbedPoint z;
};

/// Random descriptor: xi:n or rxi:n with |n| <= max_offset, or zero.
PointDescriptor sample_descriptor(Rng& rng, std::int64_t max_offset);

/// Distinct descriptor pairs.
std::vector<PointPair> sample_distinct_pairs(Rng& rng, std::size_t count, std::int64_t max_offset);

/// Pairs whose first disagreement sits at i = -k with k in [min_depth, max_depth],
/// agreeing on [-k + 1, infinity): y is in the local stable set of x at scale 2^-min_depth.
std::vector<PointPair> sample_stable_pairs(Rng& rng, std::size_t count, std::int64_t min_depth,
                                           std::int64_t max_depth, std::int64_t max_offset);

/// Mirror of sample_stable_pairs: first disagreement at i = +k, agreement on (-infinity, k - 1].
std::vector<PointPair> sample_unstable_pairs(Rng& rng, std::size_t count, std::int64_t min_depth,
                                             std::int64_t max_depth, std::int64_t max_offset);

/// Half distinct descriptor pairs, a quarter stable-type and a quarter
/// unstable-type perturbed pairs (depths 1..40), in that order.
std::vector<PointPair> sample_mixed_pairs(Rng& rng, std::size_t count, std::int64_t max_offset);

/// Triples with y, z in W^s_{2^-(e+1)}(x): flips only at coordinates <= -(e+1).
std::vector<Triple> sample_stable_triples(Rng& rng, std::size_t count, std::int64_t e, std::int64_t max_offset);

struct ProbeReport {
  std::string probe;
  Json params = Json::object();
  std::uint64_t seed = 0;
  Status status = Status::Pass;
  Json entries = Json::array();
  Json summary = Json::object();

  Json to_json() const;
  static ProbeReport from_json(const Json& j);

  friend bool operator==(const ProbeReport& a, const ProbeReport& b) { return a.to_json() == b.to_json(); }
};

/// For every pair, searches shifts n (multiples of power, |n| <= shift_budget)
/// with d(T^n x, T^n y) > c, closest to 0 first. Pairs with a located
/// disagreement j are also checked at the multiple of power nearest j.
/// Throws PairEqual when a pair is identical.
ProbeReport expansivity_probe(const std::vector<PointPair>& pairs, Dyadic c, Index power, Index shift_budget,
                              std::uint64_t seed = 0);

/// stable_membership on every pair at eps = 2^-e.
ProbeReport stable_probe(const std::vector<PointPair>& pairs, std::int64_t e, Index horizon, std::uint64_t seed = 0);

/// d(T^n x, T^n y) <= a lambda^n d(x, y) on stable pairs and the T^-n twin on
/// unstable pairs, for 0 <= n <= budget. Pairs outside the gamma-local set are
/// reported as precondition failures.
ProbeReport hyperbolic_probe(const std::vector<PointPair>& stable, const std::vector<PointPair>& unstable, Dyadic a,
                             Dyadic lambda, Dyadic gamma, Index budget, std::uint64_t seed = 0);

/// D(T^-N x, T^-N y) >= A D(x, y) and D(T^{iN} x, T^{iN} y) <= A^-i D(x, y),
/// 0 <= i <= budget, for pairs in W^s_{delta, T^N}(x). Identical pairs are skipped.
ProbeReport fn_scaling_probe(Dyadic A, Index N, Dyadic delta, const std::vector<PointPair>& samples, Index budget,
                             std::uint64_t seed = 0);

/// For y, z in W^s_{delta/2}(x): z in W^s_delta(y); D(T^-1 y, T^-1 z) >= A D(y, z);
/// and the T^-1-image variant. Throws InvalidArgument when delta/2 is below 2^-resolution.
ProbeReport lemma_probe(Dyadic delta, const std::vector<Triple>& triples, Dyadic A, Index budget, Index resolution,
                        std::uint64_t seed = 0);

/// inf over |n| <= h of d(T^n x, T^n y) for h in {H/8, H/4, H/2, H}.
ProbeReport distality_probe(const std::vector<PointPair>& pairs, Index horizon, std::uint64_t seed = 0);

/// Builds delta-pseudo-orbits from orbit segments joined by jumps and searches
/// shifts of xi, shifts of its reflection and the zero point for an
/// eps-tracing point. Trial 0 is always a true orbit segment.
ProbeReport potp_probe(Dyadic delta, Dyadic eps, std::size_t length, std::size_t trials, std::uint64_t seed,
                       Index search_budget);

/// A finite delta-pseudo-orbit; construction verifies d(T x_i, x_{i+1}) < delta.
class PseudoOrbit {
 public:
  PseudoOrbit(std::vector<PerturbedPoint> points, Dyadic delta);

  const std::vector<PerturbedPoint>& points() const noexcept { return points_; }
  const Dyadic& delta() const noexcept { return delta_; }
  /// Indices i where x_{i+1} != T x_i.
  const std::vector<std::size_t>& jumps() const noexcept { return jumps_; }

 private:
  std::vector<PerturbedPoint> points_;
  Dyadic delta_;
  std::vector<std::size_t> jumps_;
};

}  // namespace recurshift
