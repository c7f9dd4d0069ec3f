#include "recurshift/probes.hpp"

#include <algorithm>
#include <limits>

#include "recurshift/errors.hpp"
#include "recurshift/language.hpp"

namespace recurshift {

namespace {

constexpr Index kProbeResolution = 4096;

Json dyadic_json(const Dyadic& d) { return d.to_string(); }

Json metric_json(const MetricValue& v) {
  Json j = Json::object();
  j["value"] = v.value.to_string();
  j["certified"] = v.certified;
  return j;
}

std::int64_t nonpositive_exponent(const Dyadic& d, const char* what) {
  if (d.is_zero() || d.exponent() > 0) throw InvalidArgument(std::string(what) + " must be 2^-k with k >= 0");
  return -d.exponent();
}

// d(T^n x, T^n y) as an exact value, with the default probe resolution.
MetricValue shifted_distance(const PerturbedPoint& x, const PerturbedPoint& y, Index n) {
  return distance(x.shifted(n), y.shifted(n), kProbeResolution);
}

Json pair_json(const PointPair& p) {
  Json j = Json::array();
  j.push_back(p.first.to_string());
  j.push_back(p.second.to_string());
  return j;
}

}  // namespace

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw InvalidArgument("empty sampling interval");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + v % span);
}

PointDescriptor sample_descriptor(Rng& rng, std::int64_t max_offset) {
  const std::int64_t family = rng.uniform(0, 9);
  const std::int64_t offset = rng.uniform(-max_offset, max_offset);
  if (family == 0) return PointDescriptor::zero();
  if (family <= 5) return PointDescriptor::xi(offset);
  return PointDescriptor::reflected_xi(offset);
}

std::vector<PointPair> sample_distinct_pairs(Rng& rng, std::size_t count, std::int64_t max_offset) {
  std::vector<PointPair> out;
  out.reserve(count);
  while (out.size() < count) {
    PerturbedPoint x(sample_descriptor(rng, max_offset));
    PerturbedPoint y(sample_descriptor(rng, max_offset));
    if (!x.same_as(y)) out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

namespace {

std::vector<PointPair> sample_one_sided(Rng& rng, std::size_t count, std::int64_t min_depth, std::int64_t max_depth,
                                        std::int64_t max_offset, int sign) {
  if (min_depth < 1 || max_depth < min_depth) throw InvalidArgument("need 1 <= min_depth <= max_depth");
  std::vector<PointPair> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    PerturbedPoint x(sample_descriptor(rng, max_offset));
    const std::int64_t k = rng.uniform(min_depth, max_depth);
    std::vector<Index> flips{sign * k};
    const std::int64_t extra = rng.uniform(0, 2);
    for (std::int64_t t = 0; t < extra; ++t) flips.push_back(sign * (k + rng.uniform(1, 24)));
    PerturbedPoint y = x;
    for (Index f : flips) y = y.with_flip(f);
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

}  // namespace

std::vector<PointPair> sample_stable_pairs(Rng& rng, std::size_t count, std::int64_t min_depth,
                                           std::int64_t max_depth, std::int64_t max_offset) {
  return sample_one_sided(rng, count, min_depth, max_depth, max_offset, -1);
}

std::vector<PointPair> sample_unstable_pairs(Rng& rng, std::size_t count, std::int64_t min_depth,
                                             std::int64_t max_depth, std::int64_t max_offset) {
  return sample_one_sided(rng, count, min_depth, max_depth, max_offset, +1);
}

std::vector<PointPair> sample_mixed_pairs(Rng& rng, std::size_t count, std::int64_t max_offset) {
  const std::size_t distinct = count / 2;
  const std::size_t stable = count / 4;
  auto out = sample_distinct_pairs(rng, distinct, max_offset);
  for (auto& p : sample_stable_pairs(rng, stable, 1, 40, max_offset)) out.push_back(std::move(p));
  for (auto& p : sample_unstable_pairs(rng, count - distinct - stable, 1, 40, max_offset)) out.push_back(std::move(p));
  return out;
}

std::vector<Triple> sample_stable_triples(Rng& rng, std::size_t count, std::int64_t e, std::int64_t max_offset) {
  if (e < 0) throw InvalidArgument("e must be >= 0");
  std::vector<Triple> out;
  out.reserve(count);
  auto perturb = [&](const PerturbedPoint& x) {
    PerturbedPoint p = x;
    const std::int64_t flips = rng.uniform(1, 3);
    for (std::int64_t t = 0; t < flips; ++t) p = p.with_flip(-(e + 1) - rng.uniform(0, 12));
    return p;
  };
  for (std::size_t s = 0; s < count; ++s) {
    PerturbedPoint x(sample_descriptor(rng, max_offset));
    PerturbedPoint y = perturb(x);
    PerturbedPoint z = rng.uniform(0, 9) == 0 ? y : perturb(x);
    out.push_back({std::move(x), std::move(y), std::move(z)});
  }
  return out;
}

Json ProbeReport::to_json() const {
  Json j = Json::object();
  j["probe"] = probe;
  j["params"] = params;
  j["seed"] = seed;
  j["status"] = to_string(status);
  j["entries"] = entries;
  j["summary"] = summary;
  return j;
}

ProbeReport ProbeReport::from_json(const Json& j) {
  ProbeReport r;
  r.probe = j.at("probe").get<std::string>();
  r.params = j.at("params");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.status = status_from_string(j.at("status").get<std::string>());
  r.entries = j.at("entries");
  r.summary = j.at("summary");
  return r;
}

ProbeReport expansivity_probe(const std::vector<PointPair>& pairs, Dyadic c, Index power, Index shift_budget,
                              std::uint64_t seed) {
  const std::int64_t e = nonpositive_exponent(c, "expansivity constant");
  if (e < 1) throw InvalidArgument("expansivity constant must be < 1");
  if (power < 1) throw InvalidArgument("power must be >= 1");
  ProbeReport report;
  report.probe = "expansivity";
  report.seed = seed;
  report.params["c"] = dyadic_json(c);
  report.params["power"] = index_json(power);
  report.params["shift_budget"] = index_json(shift_budget);
  report.params["pairs"] = pairs.size();

  std::size_t witnessed = 0;
  std::size_t nearest_ok = 0;
  std::optional<Dyadic> weakest;
  for (const auto& pair : pairs) {
    const auto& [x, y] = pair;
    if (x.same_as(y)) throw PairEqual("expansivity probe needs distinct points, got " + x.to_string() + " twice");
    Json entry = Json::object();
    entry["pair"] = pair_json(pair);

    // d(T^n x, T^n y) > 2^-e  iff  the shifted pair disagrees at some |i| <= e - 1.
    std::optional<Index> witness;
    for (Index k = 0; k * power <= shift_budget && !witness; ++k) {
      for (const Index n : {k * power, -k * power}) {
        if (first_disagreement(x.shifted(n), y.shifted(n), e - 1)) {
          witness = n;
          break;
        }
        if (k == 0) break;
      }
    }
    if (witness) {
      ++witnessed;
      const MetricValue d = shifted_distance(x, y, *witness);
      entry["witness"] = index_json(*witness);
      entry["distance"] = metric_json(d);
      if (!weakest || d.value < *weakest) weakest = d.value;
    } else {
      entry["witness"] = nullptr;
    }
    if (const auto j = first_disagreement(x, y, kProbeResolution)) {
      // Nearest multiple of power to the located disagreement.
      const Index sign = *j < 0 ? -1 : 1;
      const Index mag = sign * *j;
      const Index n = sign * ((mag + power / 2) / power) * power;
      const MetricValue d = shifted_distance(x, y, n);
      const bool ok = d.value > c;
      nearest_ok += ok ? 1 : 0;
      entry["nearest_disagreement"] = index_json(*j);
      entry["nearest_shift"] = index_json(n);
      entry["nearest_distance"] = metric_json(d);
      entry["nearest_exceeds_c"] = ok;
    }
    entry["ok"] = witness.has_value();
    report.entries.push_back(std::move(entry));
  }
  report.status = witnessed == pairs.size() ? Status::Pass : Status::Fail;
  report.summary["witnessed"] = witnessed;
  report.summary["nearest_shift_sufficed"] = nearest_ok;
  report.summary["weakest_witness_distance"] = weakest ? Json(weakest->to_string()) : Json(nullptr);
  return report;
}

ProbeReport stable_probe(const std::vector<PointPair>& pairs, std::int64_t e, Index horizon, std::uint64_t seed) {
  ProbeReport report;
  report.probe = "stable";
  report.seed = seed;
  report.params["epsilon"] = Dyadic::pow2(-e).to_string();
  report.params["horizon"] = index_json(horizon);
  report.params["pairs"] = pairs.size();
  std::size_t members = 0;
  std::size_t decomposition_failures = 0;
  for (const auto& pair : pairs) {
    const StableMembership m = stable_membership(pair.first, pair.second, e, horizon);
    Json entry = Json::object();
    entry["pair"] = pair_json(pair);
    entry["member"] = m.member;
    entry["certified"] = m.certified;
    entry["by_definition"] = m.by_definition;
    entry["by_cutoff"] = m.by_cutoff;
    entry["cutoff"] = index_json(m.cutoff);
    entry["decomposition_shift"] = m.decomposition_shift ? index_json(*m.decomposition_shift) : Json(nullptr);
    entry["decomposition_ok"] = m.decomposition_ok;
    members += m.member ? 1 : 0;
    decomposition_failures += m.decomposition_ok ? 0 : 1;
    report.entries.push_back(std::move(entry));
  }
  report.status = decomposition_failures == 0 ? Status::Pass : Status::Fail;
  report.summary["members"] = members;
  report.summary["decomposition_failures"] = decomposition_failures;
  return report;
}

ProbeReport hyperbolic_probe(const std::vector<PointPair>& stable, const std::vector<PointPair>& unstable, Dyadic a,
                             Dyadic lambda, Dyadic gamma, Index budget, std::uint64_t seed) {
  const std::int64_t g = nonpositive_exponent(gamma, "gamma");
  ProbeReport report;
  report.probe = "hyperbolic";
  report.seed = seed;
  report.params["a"] = dyadic_json(a);
  report.params["lambda"] = dyadic_json(lambda);
  report.params["gamma"] = dyadic_json(gamma);
  report.params["budget"] = index_json(budget);
  report.params["stable_pairs"] = stable.size();
  report.params["unstable_pairs"] = unstable.size();

  std::size_t failures = 0;
  std::size_t tight = 0;
  auto run = [&](const std::vector<PointPair>& pairs, Index direction, const char* kind) {
    for (const auto& pair : pairs) {
      const auto& [x, y] = pair;
      Json entry = Json::object();
      entry["kind"] = kind;
      entry["pair"] = pair_json(pair);
      const bool in_set = in_local_set(x, y, g, budget, direction);
      const MetricValue d0 = distance(x, y, kProbeResolution);
      bool ok = in_set && d0.certified;
      bool equality = true;
      std::optional<Index> first_bad;
      if (ok) {
        for (Index n = 0; n <= budget; ++n) {
          const MetricValue dn = shifted_distance(x, y, direction * n);
          const Dyadic bound = a * lambda.pow(static_cast<std::int64_t>(n)) * d0.value;
          if (!(dn.value <= bound)) {
            ok = false;
            first_bad = n;
            break;
          }
          equality = equality && dn.certified && dn.value == bound;
        }
      }
      entry["in_local_set"] = in_set;
      entry["distance"] = metric_json(d0);
      entry["first_violation"] = first_bad ? index_json(*first_bad) : Json(nullptr);
      entry["equality_throughout"] = ok && equality;
      entry["ok"] = ok;
      failures += ok ? 0 : 1;
      tight += ok && equality ? 1 : 0;
      report.entries.push_back(std::move(entry));
    }
  };
  run(stable, 1, "stable");
  run(unstable, -1, "unstable");
  report.status = failures == 0 ? Status::Pass : Status::Fail;
  report.summary["failures"] = failures;
  report.summary["equality_throughout"] = tight;
  return report;
}

ProbeReport fn_scaling_probe(Dyadic A, Index N, Dyadic delta, const std::vector<PointPair>& samples, Index budget,
                             std::uint64_t seed) {
  if (A.is_zero() || A.exponent() < 0) throw InvalidArgument("A must be a power of two >= 1");
  if (N < A.exponent()) throw InvalidArgument("N must be at least log2(A)");
  const std::int64_t de = nonpositive_exponent(delta, "delta");
  if (de < 1) throw InvalidArgument("delta must be <= 1/2");
  ProbeReport report;
  report.probe = "fn-scaling";
  report.seed = seed;
  report.params["A"] = dyadic_json(A);
  report.params["N"] = index_json(N);
  report.params["delta"] = dyadic_json(delta);
  report.params["budget"] = index_json(budget);
  report.params["pairs"] = samples.size();

  std::size_t failures = 0;
  std::size_t skipped = 0;
  for (const auto& pair : samples) {
    const auto& [x, y] = pair;
    Json entry = Json::object();
    entry["pair"] = pair_json(pair);
    if (x.same_as(y)) {
      entry["skipped"] = "x = y";
      ++skipped;
      report.entries.push_back(std::move(entry));
      continue;
    }
    const bool in_set = in_local_set(x, y, de, budget, N);
    const MetricValue d0 = distance(x, y, kProbeResolution);
    const MetricValue back = shifted_distance(x, y, -N);
    bool expand_ok = in_set && d0.certified && back.certified && back.value >= A * d0.value;
    bool contract_ok = in_set && d0.certified;
    if (contract_ok) {
      for (Index i = 0; i <= budget; ++i) {
        const MetricValue di = shifted_distance(x, y, i * N);
        if (!(di.value <= A.pow(-static_cast<std::int64_t>(i)) * d0.value)) {
          contract_ok = false;
          break;
        }
      }
    }
    entry["in_local_set"] = in_set;
    entry["distance"] = metric_json(d0);
    entry["distance_after_inverse"] = metric_json(back);
    entry["expansion_ok"] = expand_ok;
    entry["contraction_ok"] = contract_ok;
    const bool ok = expand_ok && contract_ok;
    failures += ok ? 0 : 1;
    report.entries.push_back(std::move(entry));
  }
  report.status = failures == 0 ? Status::Pass : Status::Fail;
  report.summary["failures"] = failures;
  report.summary["skipped"] = skipped;
  return report;
}

ProbeReport lemma_probe(Dyadic delta, const std::vector<Triple>& triples, Dyadic A, Index budget, Index resolution,
                        std::uint64_t seed) {
  const std::int64_t de = nonpositive_exponent(delta, "delta");
  if (de + 1 > resolution) throw InvalidArgument("delta/2 lies below the resolution 2^-" + to_string(resolution));
  ProbeReport report;
  report.probe = "lemma";
  report.seed = seed;
  report.params["delta"] = dyadic_json(delta);
  report.params["A"] = dyadic_json(A);
  report.params["budget"] = index_json(budget);
  report.params["triples"] = triples.size();

  // With the first-disagreement metric the expansion assumption holds with A = 2
  // on local stable sets of scale <= 1/2.
  const bool assumption_config = !A.is_zero() && A <= Dyadic::pow2(1) && de >= 1;
  std::size_t lemma_failures = 0;
  std::size_t corollary_failures = 0;
  std::size_t vacuous = 0;
  for (const auto& t : triples) {
    Json entry = Json::object();
    entry["triple"] = Json::array({t.x.to_string(), t.y.to_string(), t.z.to_string()});
    const bool pre = in_local_set(t.x, t.y, de + 1, budget) && in_local_set(t.x, t.z, de + 1, budget);
    entry["precondition"] = pre;
    if (!pre) {
      ++lemma_failures;
      entry["ok"] = false;
      report.entries.push_back(std::move(entry));
      continue;
    }
    const bool lemma = in_local_set(t.y, t.z, de, budget);

    const MetricValue dyz = distance(t.y, t.z, resolution);
    const MetricValue back = shifted_distance(t.y, t.z, -1);
    const bool expand = back.value >= A * dyz.value;

    const PerturbedPoint y1 = t.y.shifted(-1);
    const PerturbedPoint z1 = t.z.shifted(-1);
    const MetricValue d1 = distance(y1, z1, resolution);
    const bool hypothesis = d1.value <= Dyadic::pow2(-(de + 1));
    const bool image = !hypothesis || in_local_set(y1, z1, de, budget);
    vacuous += hypothesis ? 0 : 1;

    entry["lemma_ok"] = lemma;
    entry["expansion_ok"] = expand;
    entry["image_hypothesis"] = hypothesis;
    entry["image_ok"] = image;
    lemma_failures += lemma ? 0 : 1;
    if (assumption_config) corollary_failures += (expand && image) ? 0 : 1;
    entry["ok"] = lemma && (!assumption_config || (expand && image));
    report.entries.push_back(std::move(entry));
  }
  report.status = lemma_failures == 0 && corollary_failures == 0 ? Status::Pass : Status::Fail;
  report.summary["lemma_failures"] = lemma_failures;
  report.summary["corollary_failures"] = corollary_failures;
  report.summary["assumption_config"] = assumption_config;
  report.summary["image_hypothesis_not_met"] = vacuous;
  return report;
}

ProbeReport distality_probe(const std::vector<PointPair>& pairs, Index horizon, std::uint64_t seed) {
  if (horizon < 8) throw InvalidArgument("distality probe needs horizon >= 8");
  ProbeReport report;
  report.probe = "distality";
  report.seed = seed;
  report.params["horizon"] = index_json(horizon);
  report.params["pairs"] = pairs.size();
  const Index resolution = horizon + 64;
  const std::vector<Index> ladder{horizon / 8, horizon / 4, horizon / 2, horizon};
  std::size_t proximal = 0;
  for (const auto& pair : pairs) {
    const auto& [x, y] = pair;
    Json entry = Json::object();
    entry["pair"] = pair_json(pair);
    Json infima = Json::array();
    std::vector<MetricValue> values;
    if (x.same_as(y)) {
      for (std::size_t k = 0; k < ladder.size(); ++k) values.push_back({Dyadic::zero(), true});
    } else {
      // Deepest agreement radius seen so far; infimum = 2^-deepest.
      Index deepest = -1;
      bool uncertified = false;
      Index reached = -1;
      for (const Index h : ladder) {
        for (Index n = reached + 1; n <= h; ++n) {
          for (const Index s : {n, -n}) {
            const auto k = first_disagreement(x.shifted(s), y.shifted(s), resolution);
            if (!k) {
              uncertified = true;
              deepest = std::max(deepest, resolution);
            } else {
              deepest = std::max(deepest, *k);
            }
            if (n == 0) break;
          }
        }
        reached = h;
        values.push_back({Dyadic::pow2(-static_cast<std::int64_t>(deepest)), !uncertified});
      }
    }
    bool decreasing = true;
    for (std::size_t k = 0; k < values.size(); ++k) {
      infima.push_back({{"h", index_json(ladder[k])}, {"infimum", metric_json(values[k])}});
      if (k > 0 && !(values[k].value < values[k - 1].value)) decreasing = false;
    }
    const bool all_zero = values.front().value.is_zero();
    const std::string trend = all_zero ? "zero" : (decreasing ? "decreasing" : "non-decreasing");
    entry["infima"] = std::move(infima);
    entry["trend"] = trend;
    entry["proximal_evidence"] = decreasing && !all_zero;
    proximal += decreasing && !all_zero ? 1 : 0;
    report.entries.push_back(std::move(entry));
  }
  report.status = Status::Pass;
  report.summary["proximal_pairs"] = proximal;
  return report;
}

PseudoOrbit::PseudoOrbit(std::vector<PerturbedPoint> points, Dyadic delta) : points_(std::move(points)), delta_(delta) {
  const std::int64_t d = nonpositive_exponent(delta, "delta");
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    const PerturbedPoint image = points_[i].shifted(1);
    // d(T x_i, x_{i+1}) < 2^-d  iff  they agree on |j| <= d.
    if (first_disagreement(image, points_[i + 1], d)) {
      throw InvalidArgument("step " + std::to_string(i) + " of the pseudo-orbit jumps by at least delta");
    }
    if (!image.same_as(points_[i + 1])) jumps_.push_back(i);
  }
}

namespace {

Word window_word(const PerturbedPoint& p, Index from, Index to, const XiReader& xi) {
  Word w;
  for (Index start = from; start <= to; start += 64) {
    const unsigned n = static_cast<unsigned>(std::min<Index>(64, to - start + 1));
    const std::uint64_t bits = p.bits(start, n, xi);
    for (unsigned b = 0; b < n; ++b) w.push_back(static_cast<int>((bits >> b) & 1u));
  }
  return w;
}

bool traces(const PerturbedPoint& z, const PseudoOrbit& orbit, std::int64_t e) {
  for (std::size_t i = 0; i < orbit.points().size(); ++i) {
    if (first_disagreement(z.shifted(static_cast<Index>(i)), orbit.points()[i], e)) return false;
  }
  return true;
}

}  // namespace

ProbeReport potp_probe(Dyadic delta, Dyadic eps, std::size_t length, std::size_t trials, std::uint64_t seed,
                       Index search_budget) {
  const std::int64_t d = nonpositive_exponent(delta, "delta");
  const std::int64_t e = nonpositive_exponent(eps, "epsilon");
  if (length < 1) throw InvalidArgument("pseudo-orbit length must be >= 1");
  ProbeReport report;
  report.probe = "potp";
  report.seed = seed;
  report.params["delta"] = dyadic_json(delta);
  report.params["epsilon"] = dyadic_json(eps);
  report.params["length"] = length;
  report.params["trials"] = trials;
  report.params["search_budget"] = index_json(search_budget);

  Rng rng(seed);
  const XiReader xi = metric_reader();
  std::size_t traced_count = 0;
  std::size_t true_orbits_untraced = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<PerturbedPoint> points{PerturbedPoint(sample_descriptor(rng, 1000))};
    for (std::size_t i = 1; i < length; ++i) {
      PerturbedPoint next = points.back().shifted(1);
      if (t > 0 && rng.uniform(0, 3) == 0) {
        bool switched = false;
        if (rng.coin()) {
          // Jump to another shift of xi showing the same central window.
          const Word centre = window_word(next, -d, d, xi);
          std::vector<Index> found;
          scan_occurrences(centre, {-search_budget, search_budget}, [&](Index j) {
            found.push_back(j);
            return found.size() < 8;
          });
          if (!found.empty()) {
            const Index q = found[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(found.size()) - 1))];
            next = PerturbedPoint(PointDescriptor::xi(q + d));
            switched = true;
          }
        }
        if (!switched) {
          const Index j = (rng.coin() ? 1 : -1) * (d + 1 + rng.uniform(0, 8));
          next = next.with_flip(j);
        }
      }
      points.push_back(std::move(next));
    }
    const PseudoOrbit orbit(std::move(points), delta);

    Json entry = Json::object();
    entry["trial"] = t;
    entry["start"] = orbit.points().front().to_string();
    Json jumps = Json::array();
    for (std::size_t j : orbit.jumps()) jumps.push_back(j);
    entry["jumps"] = std::move(jumps);

    // Tracing forces z(i + j) = x_i(j) for |j| <= e; collect those constraints.
    const Index span = static_cast<Index>(length) + 2 * e;
    std::vector<int> required(static_cast<std::size_t>(span), -1);
    bool consistent = true;
    for (std::size_t i = 0; i < length && consistent; ++i) {
      for (Index j = -e; j <= e; ++j) {
        const auto slot = static_cast<std::size_t>(static_cast<Index>(i) + j + e);
        const int v = orbit.points()[i].at(j);
        if (required[slot] == -1) {
          required[slot] = v;
        } else if (required[slot] != v) {
          consistent = false;
          break;
        }
      }
    }

    std::optional<PerturbedPoint> witness;
    std::string reason;
    if (!consistent) {
      reason = "pseudo-orbit windows conflict at scale epsilon; no point can trace it";
    } else {
      Word target;
      for (int v : required) target.push_back(v);
      std::vector<PerturbedPoint> candidates{orbit.points().front()};
      if (target.count_ones() == 0) candidates.emplace_back(PointDescriptor::zero());
      if (const auto at = first_occurrence(target, {-search_budget, search_budget})) {
        candidates.emplace_back(PointDescriptor::xi(*at + e));
      }
      if (const auto at = first_occurrence(target.reversed(), {-search_budget, search_budget})) {
        candidates.emplace_back(PointDescriptor::reflected_xi(-*at - span + 1 + e));
      }
      for (const auto& z : candidates) {
        if (traces(z, orbit, e)) {
          witness = z;
          break;
        }
      }
      if (!witness) reason = "no tracing point among the searched shifts of xi, its reflection, and zero";
    }
    entry["traced"] = witness.has_value();
    entry["witness"] = witness ? Json(witness->to_string()) : Json(nullptr);
    if (!witness) entry["reason"] = reason;
    traced_count += witness ? 1 : 0;
    if (!witness && orbit.jumps().empty()) ++true_orbits_untraced;
    report.entries.push_back(std::move(entry));
  }
  report.status = true_orbits_untraced == 0 ? Status::Pass : Status::Fail;
  report.summary["traced"] = traced_count;
  report.summary["untraced"] = trials - traced_count;
  return report;
}

}  // namespace recurshift
