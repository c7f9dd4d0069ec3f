#include "recurshift/claims.hpp"

#include <algorithm>
#include <bit>

#include "recurshift/config.hpp"
#include "recurshift/errors.hpp"
#include "recurshift/language.hpp"
#include "recurshift/omega.hpp"
#include "recurshift/parallel.hpp"
#include "recurshift/recurrence.hpp"

namespace recurshift {

namespace {

constexpr std::size_t kWitnessCap = 4096;

XiReader reader_for(Index length) {
  if (length < materialize_cap()) {
    try {
      return XiReader(xi_tape(length));
    } catch (const CapExceeded&) {
    }
  }
  return XiReader{};
}

// xi(from .. from + len - 1) == omega_g, compared 64 symbols at a time.
std::optional<Index> first_mismatch_with_omega(const XiReader& xi, Index from, int g) {
  const Word omega = omega_word(g);
  for (std::size_t pos = 0; pos < omega.size(); pos += 64) {
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(64, omega.size() - pos));
    const std::uint64_t diff = xi.bits(from + static_cast<Index>(pos), n) ^ omega.extract(pos, n);
    if (diff) return static_cast<Index>(pos) + std::countr_zero(diff);
  }
  return std::nullopt;
}

Json tuples_json(const std::vector<IndexTuple>& tuples) {
  Json out = Json::array();
  for (const auto& t : tuples) {
    Json row = Json::array();
    for (Index v : t) row.push_back(index_json(v));
    out.push_back(std::move(row));
  }
  return out;
}

std::int64_t ones_in(const PointReader& reader, Index lo, Index hi) {
  std::int64_t total = 0;
  for (Index start = lo; start <= hi; start += 64) {
    const unsigned n = static_cast<unsigned>(std::min<Index>(64, hi - start + 1));
    total += std::popcount(reader.bits(start, n));
  }
  return total;
}

}  // namespace

Json ClaimReport::to_json() const {
  Json j = Json::object();
  j["claim_id"] = claim_id;
  j["parameters"] = parameters;
  j["status"] = to_string(status);
  j["witnesses"] = tuples_json(witnesses);
  j["counterexamples"] = tuples_json(counterexamples);
  j["unresolved"] = tuples_json(unresolved);
  j["horizon"] = horizon;
  j["counters"] = counters;
  j["notes"] = notes;
  return j;
}

Index descriptor_code(const PointDescriptor& p) {
  switch (p.kind) {
    case PointDescriptor::Kind::Zero:
      return 0;
    case PointDescriptor::Kind::XiShift:
      return 1;
    case PointDescriptor::Kind::XiReflectShift:
      return 2;
  }
  return 0;
}

PointDescriptor descriptor_from_code(Index code, Index offset) {
  if (code == 0) return PointDescriptor::zero();
  if (code == 1) return PointDescriptor::xi(offset);
  if (code == 2) return PointDescriptor::reflected_xi(offset);
  throw InvalidArgument("unknown descriptor code " + to_string(code));
}

ClaimReport verify_reflection(int max_length, unsigned jobs) {
  if (max_length < 1) throw InvalidArgument("max length must be >= 1");
  ClaimReport report;
  report.claim_id = "1";
  report.parameters["factor_length_max"] = max_length;

  std::vector<std::pair<FactorSet, int>> sets(static_cast<std::size_t>(max_length));
  parallel_for(sets.size(), jobs, [&](std::size_t i) { sets[i] = factors_stabilized(i + 1); });
  int deepest = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& [set, n_stab] = sets[i];
    const Index L = static_cast<Index>(i + 1);
    if (!set.stabilized) {
      report.unresolved.push_back({L});
      continue;
    }
    deepest = std::max(deepest, n_stab);
    for (std::size_t w = 0; w < set.words.size(); ++w) {
      if (!set.contains(set.words[w].reversed())) report.counterexamples.push_back({L, static_cast<Index>(w)});
    }
    report.witnesses.push_back({L, static_cast<Index>(set.size())});
  }

  // Descriptor-level reflection: an involution with reflect(p)(i) = p(-i).
  std::int64_t coordinate_checks = 0;
  std::vector<PointDescriptor> family{PointDescriptor::zero()};
  for (int n = -10; n <= 10; ++n) {
    family.push_back(PointDescriptor::xi(n));
    family.push_back(PointDescriptor::reflected_xi(n));
  }
  for (const auto& p : family) {
    const PointDescriptor r = reflect(p);
    if (reflect(r) != p) report.counterexamples.push_back({-1, descriptor_code(p), p.offset});
    for (Index i = -200; i <= 200; ++i) {
      ++coordinate_checks;
      if (point_at(r, i) != point_at(p, -i)) report.counterexamples.push_back({-2, descriptor_code(p), p.offset, i});
    }
  }

  report.horizon["stabilization_horizon_max"] = deepest;
  report.counters["factor_lengths"] = max_length;
  report.counters["descriptors"] = family.size();
  report.counters["coordinate_checks"] = coordinate_checks;
  if (!report.counterexamples.empty()) {
    report.status = Status::Fail;
  } else if (!report.unresolved.empty()) {
    report.status = Status::Inconclusive;
  }
  return report;
}

ClaimReport verify_claim_2a(int n_max) {
  if (n_max < 2) throw InvalidArgument("n_max must be >= 2");
  ClaimReport report;
  report.claim_id = "2a";
  report.parameters["n_max"] = n_max;

  // The longest gap g needed is below log2(n_max) + 2, so 2 n_max + 64 symbols suffice.
  const Index tape_length = 2 * Index{n_max} + 64;
  const XiReader xi = reader_for(tape_length);
  std::int64_t instances = 0;
  Index reach = 0;
  int longest = 0;
  for (Index n = 2; n <= n_max; ++n) {
    if (xi.at(n) != 1) continue;
    Index zeros = 0;
    while (n - 1 - zeros >= 1 && xi.at(n - 1 - zeros) == 0) ++zeros;
    // Hypothesis instances: every m in [n - zeros, n - 1].
    for (Index m = n - zeros; m <= n - 1; ++m) {
      const int g = static_cast<int>(n - m);
      ++instances;
      longest = std::max(longest, g);
      reach = std::max(reach, n + omega_length(g) - 1);
      if (const auto bad = first_mismatch_with_omega(xi, n, g)) {
        report.counterexamples.push_back({m, n, g, *bad});
      } else if (report.witnesses.size() < kWitnessCap) {
        report.witnesses.push_back({m, n, g});
      }
    }
  }
  report.horizon["n_max"] = n_max;
  report.horizon["xi_reach"] = index_json(reach);
  report.counters["instances"] = instances;
  report.counters["longest_gap"] = longest;
  if (static_cast<std::size_t>(instances) > report.witnesses.size() + report.counterexamples.size()) {
    report.notes.push_back("witness list truncated to the first " + std::to_string(kWitnessCap) + " instances");
  }
  report.status = report.counterexamples.empty() ? Status::Pass : Status::Fail;
  return report;
}

namespace {

struct Claim2bResult {
  std::int64_t windows = 0;
  std::int64_t literal_failures = 0;
  std::int64_t strong_failures = 0;
  std::vector<IndexTuple> literal_examples;
  std::optional<IndexTuple> strong_example;
};

// Windows xi(m..n), 1 <= m < n <= last, with n - m > l_k + k. For each m the
// window first contains 0^r once n reaches the end of the first zero run of
// length r starting at or after m, so only the shortest qualifying window
// per m needs to be tested.
std::int64_t failures_for(const std::vector<std::int32_t>& run, Index last, Index min_span, int r,
                          std::vector<IndexTuple>* examples, int k) {
  std::int64_t failures = 0;
  if (r <= 0) return 0;
  Index next_start = -1;  // smallest s >= m with run[s] >= r
  for (Index m = last; m >= 1; --m) {
    if (run[static_cast<std::size_t>(m)] >= r) next_start = m;
    const Index n = m + min_span;
    if (n > last) continue;
    const Index reach = next_start < 0 ? last + 1 : next_start + r - 1;
    if (n < reach) {
      ++failures;
      if (examples && examples->size() < 16) examples->push_back({k, m, n});
    }
  }
  return failures;
}

}  // namespace

ClaimReport verify_claim_2b(int k_max, int window_omega, unsigned jobs) {
  if (k_max < 1) throw InvalidArgument("k_max must be >= 1");
  if (window_omega < 1) throw InvalidArgument("window omega index must be >= 1");
  ClaimReport report;
  report.claim_id = "2b";
  report.parameters["k_max"] = k_max;
  report.parameters["window_omega"] = window_omega;

  const Word omega = omega_word(window_omega, materialize_cap());
  const Index last = static_cast<Index>(omega.size()) - 1;
  // run[p]: length of the zero run starting at p.
  std::vector<std::int32_t> run(omega.size() + 1, 0);
  for (std::size_t p = omega.size(); p-- > 0;) run[p] = omega[p] == 0 ? run[p + 1] + 1 : 0;

  std::vector<Claim2bResult> results(static_cast<std::size_t>(k_max));
  parallel_for(results.size(), jobs, [&](std::size_t i) {
    const int k = static_cast<int>(i) + 1;
    Claim2bResult& out = results[i];
    if (k > max_omega_index()) return;
    const Index span = omega_length(k) + k + 1;
    const Index t = last - span;  // number of m with m + span <= last, m >= 1
    if (t >= 1) out.windows = static_cast<std::int64_t>(t * (t + 1) / 2);
    out.literal_failures = failures_for(run, last, span, k - 1, &out.literal_examples, k);
    std::vector<IndexTuple> strong;
    out.strong_failures = failures_for(run, last, span, k, &strong, k);
    if (!strong.empty()) out.strong_example = strong.front();
  });

  std::int64_t windows = 0;
  std::vector<int> strong_fail_k;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    const auto& r = results[i];
    windows += r.windows;
    report.witnesses.push_back({k, omega_length(k) + k + 1, r.windows});
    for (const auto& ex : r.literal_examples) report.counterexamples.push_back(ex);
    if (r.literal_failures > 0) {
      const auto& ex = r.literal_examples.front();
      report.notes.push_back("k = " + std::to_string(k) + ": window xi(" + to_string(ex[1]) + ".." + to_string(ex[2]) +
                             ") = " + xi_segment(ex[1], ex[2]).to_string() + " has no " + std::to_string(k - 1) +
                             " consecutive 0's (" + std::to_string(r.literal_failures) + " starting points fail)");
    }
    if (r.strong_failures > 0) {
      strong_fail_k.push_back(k);
      const auto& ex = *r.strong_example;
      report.notes.push_back("strengthening to " + std::to_string(k) + " consecutive 0's fails at k = " +
                             std::to_string(k) + ": window xi(" + to_string(ex[1]) + ".." + to_string(ex[2]) + ") = " +
                             xi_segment(ex[1], ex[2]).to_string());
    }
  }
  if (strong_fail_k.empty()) {
    report.notes.push_back("strengthening to k consecutive 0's holds for every k <= " + std::to_string(k_max) +
                           " in this range");
  }
  report.horizon["window_omega"] = window_omega;
  report.horizon["window_length"] = index_json(last + 1);
  report.counters["windows_checked"] = windows;
  report.counters["strengthening_failures_k"] = strong_fail_k;
  report.status = report.counterexamples.empty() ? Status::Pass : Status::Fail;
  return report;
}

ClaimReport verify_claim_3(const PointDescriptor& p, Index horizon) {
  if (p.kind == PointDescriptor::Kind::Zero) throw InvalidArgument("claim 3 concerns points other than zero");
  if (horizon == 0) horizon = omega_length(10);
  if (horizon < 1) throw InvalidArgument("horizon must be >= 1");
  ClaimReport report;
  report.claim_id = "3";
  report.parameters["point"] = p.to_string();
  report.parameters["horizon"] = index_json(horizon);

  const Index reach = checked_add(p.offset < 0 ? -p.offset : p.offset, horizon);
  const PointReader reader(p, reader_for(checked_add(reach, 1)));
  std::vector<Index> ladder;
  for (int j = 1; j <= max_omega_index() && omega_length(j) <= horizon; ++j) ladder.push_back(omega_length(j));
  if (ladder.empty() || ladder.back() != horizon) ladder.push_back(horizon);

  // Counts over nested windows never decrease; growth is read off the tail.
  std::vector<std::int64_t> nonzero;
  for (const Index h : ladder) {
    const std::int64_t count = ones_in(reader, -h, h);
    report.witnesses.push_back({h, count});
    if (count > 0) nonzero.push_back(count);
  }
  constexpr std::size_t kTail = 3;
  bool growing = nonzero.size() >= kTail;
  for (std::size_t i = nonzero.size() - std::min(nonzero.size(), kTail) + 1; growing && i < nonzero.size(); ++i) {
    growing = nonzero[i] > nonzero[i - 1];
  }
  report.horizon["H"] = index_json(horizon);
  report.counters["ladder_levels"] = ladder.size();
  report.counters["ones_at_horizon"] = nonzero.empty() ? 0 : nonzero.back();
  if (growing) {
    report.status = Status::Pass;
  } else {
    report.status = Status::Inconclusive;
    report.notes.push_back("one-counts did not grow over the last three ladder levels; a finite scan cannot refute the claim");
  }
  return report;
}

ClaimReport verify_claim_4(int k_max) {
  if (k_max < 1) throw InvalidArgument("k_max must be >= 1");
  ClaimReport report;
  report.claim_id = "4";
  report.parameters["k_max"] = k_max;
  Index widest = 0;
  for (int k = 1; k <= k_max; ++k) {
    const Index h = omega_length(k + 2);
    widest = std::max(widest, h);
    try {
      const Index m = find_m(k, h);
      bool ok = xi_at(m + k) == 1;
      for (Index i = m; i < m + k && ok; ++i) ok = xi_at(i) == 0;
      if (ok) {
        report.witnesses.push_back({k, m, h});
      } else {
        report.counterexamples.push_back({k, m, h});
      }
    } catch (const BudgetExceeded& e) {
      report.unresolved.push_back({k, h});
      report.notes.push_back(e.what());
    }
  }
  report.horizon["l_k_plus_2_max"] = index_json(widest);
  if (!report.counterexamples.empty()) {
    report.status = Status::Fail;
  } else if (!report.unresolved.empty()) {
    report.status = Status::Inconclusive;
  }
  return report;
}

namespace {

// For xi:n at radius N with G = N - n >= 1 the window is 0^G xi(0..n+N). It
// reappears when xi(0) is aligned with the right copy of omega_G inside
// omega_{G+1}, a shift of l_G + G, whenever n + N < l_G. Mirrored for rxi:n.
std::optional<Index> structural_return(const PointDescriptor& p, int N) {
  const bool reflected = p.kind == PointDescriptor::Kind::XiReflectShift;
  if (p.kind == PointDescriptor::Kind::Zero) return std::nullopt;
  const Index n = reflected ? -p.offset : p.offset;
  const Index G = Index{N} - n;
  if (G < 1 || G > max_omega_index()) return std::nullopt;
  const int g = static_cast<int>(G);
  if (n + N >= omega_length(g)) return std::nullopt;
  const Index s = omega_length(g) + G;
  const Index shift = reflected ? -s : s;
  for (Index i = -N; i <= N; ++i) {
    if (point_at(p, shift + i) != point_at(p, i)) return std::nullopt;
  }
  return shift;
}

}  // namespace

ClaimReport verify_recurrence(int descriptor_radius, int window_radius, int horizon_n, unsigned jobs) {
  if (descriptor_radius < 0) throw InvalidArgument("descriptor radius must be >= 0");
  if (window_radius < 1) throw InvalidArgument("window radius must be >= 1");
  ClaimReport report;
  report.claim_id = "recurrence";
  report.parameters["descriptor_radius"] = descriptor_radius;
  report.parameters["window_radius"] = window_radius;
  report.parameters["horizon_n"] = horizon_n;
  const Index horizon = omega_length(horizon_n);

  std::vector<PointDescriptor> family{PointDescriptor::zero()};
  for (int n = -descriptor_radius; n <= descriptor_radius; ++n) family.push_back(PointDescriptor::xi(n));
  for (int n = -descriptor_radius; n <= descriptor_radius; ++n) family.push_back(PointDescriptor::reflected_xi(n));

  std::vector<RecurrenceReport> reports(family.size());
  parallel_for(family.size(), jobs, [&](std::size_t i) { reports[i] = classify_point(family[i], window_radius, horizon); });

  std::int64_t resolved = 0;
  std::int64_t beyond = 0;
  std::int64_t positive_excluded = 0;
  std::int64_t negative_excluded = 0;
  std::int64_t none_verdicts = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& p = family[i];
    const auto& rep = reports[i];
    const Index code = descriptor_code(p);
    if (rep.verdict == Verdict::NoneWithinHorizon) ++none_verdicts;
    for (const auto& e : rep.radii) {
      positive_excluded += e.positive_excluded ? 1 : 0;
      negative_excluded += e.negative_excluded ? 1 : 0;
      if (e.first_positive || e.first_negative) {
        ++resolved;
        report.witnesses.push_back({code, p.offset, e.radius, e.first_positive ? *e.first_positive : *e.first_negative});
      } else if (e.positive_excluded && e.negative_excluded) {
        report.counterexamples.push_back({code, p.offset, e.radius});
      } else {
        const auto far = structural_return(p, e.radius);
        if (far) ++beyond;
        report.unresolved.push_back({code, p.offset, e.radius, far ? *far : Index{0}});
      }
    }
    if (p == PointDescriptor::reflected_xi(0) && rep.structural_note) {
      report.notes.push_back("rxi:0: " + *rep.structural_note);
    }
  }
  if (!report.unresolved.empty()) {
    report.notes.push_back(
        "unresolved tuples are (kind, offset, N, s): no return within the horizon; s != 0 is a return beyond the "
        "horizon at the start of a right copy of omega_G, G = N - |offset| as seen from the 1-side, verified "
        "coordinate-wise");
  }
  report.horizon["horizon_n"] = horizon_n;
  report.horizon["horizon"] = index_json(horizon);
  report.counters["descriptors"] = family.size();
  report.counters["radius_checks"] = family.size() * static_cast<std::size_t>(window_radius);
  report.counters["resolved_within_horizon"] = resolved;
  report.counters["unresolved"] = report.unresolved.size();
  report.counters["returns_beyond_horizon"] = beyond;
  report.counters["positive_structurally_excluded"] = positive_excluded;
  report.counters["negative_structurally_excluded"] = negative_excluded;
  report.counters["none_within_horizon_verdicts"] = none_verdicts;
  if (!report.counterexamples.empty()) {
    report.status = Status::Fail;
  } else if (!report.unresolved.empty()) {
    report.status = Status::Inconclusive;
  }
  return report;
}

ClaimReport verify_minimality(int n_max, int length_max) {
  if (n_max < 2) throw InvalidArgument("n_max must be >= 2");
  if (length_max < 1) throw InvalidArgument("length_max must be >= 1");
  ClaimReport report;
  report.claim_id = "minimality";
  report.parameters["n_max"] = n_max;
  report.parameters["length_max"] = length_max;

  const Word one = Word::from_string("1");
  Index first_gap = 0;
  Index last_gap = 0;
  for (int n = 2; n <= n_max; ++n) {
    const Index gap = max_gap(one, {0, omega_length(n) - 1});
    if (n == 2) first_gap = gap;
    last_gap = gap;
    if (gap >= n - 1) {
      report.witnesses.push_back({n, gap});
    } else {
      report.counterexamples.push_back({n, gap});
    }
  }
  // 0^L is the window of xi at -L, so it is a factor of every length.
  for (int L = 1; L <= length_max; ++L) {
    const auto at = first_occurrence(Word::zeros(static_cast<std::size_t>(L)), {-L, -L});
    if (at) {
      report.witnesses.push_back({-L, *at});
    } else {
      report.counterexamples.push_back({-L});
    }
  }
  report.horizon["omega_index_max"] = n_max;
  report.horizon["scan_length"] = index_json(omega_length(n_max));
  report.counters["gap_first"] = index_json(first_gap);
  report.counters["gap_last"] = index_json(last_gap);
  report.notes.push_back("gap witnesses are (n, max_gap of 1 in xi[0, l_n)); zero-word witnesses are (-L, start)");
  if (!report.counterexamples.empty()) {
    report.status = Status::Fail;
  } else if (last_gap <= first_gap) {
    report.status = Status::Inconclusive;
  }
  return report;
}

ClaimReport verify_claim(const std::string& claim_id, const ClaimParams& params) {
  if (claim_id == "1") return verify_reflection(params.factor_length_max, params.jobs);
  if (claim_id == "2a") return verify_claim_2a(params.n_max);
  if (claim_id == "2b") return verify_claim_2b(params.k_max, params.window_omega, params.jobs);
  if (claim_id == "3") return verify_claim_3(params.point.value_or(PointDescriptor::xi(0)), params.horizon);
  if (claim_id == "4") return verify_claim_4(params.k_max);
  if (claim_id == "recurrence") {
    return verify_recurrence(params.descriptor_radius, params.window_radius, params.horizon_n, params.jobs);
  }
  if (claim_id == "minimality") return verify_minimality(params.n_max, params.length_max);
  throw InvalidArgument("unknown claim '" + claim_id + "'");
}

bool replay_witnesses(const ClaimReport& report) {
  const auto& id = report.claim_id;
  for (const auto& t : report.witnesses) {
    if (id == "2a") {
      const Index m = t[0], n = t[1];
      const int g = static_cast<int>(t[2]);
      for (Index i = m; i < n; ++i) {
        if (xi_at(i) != 0) return false;
      }
      if (xi_at(n) != 1) return false;
      const Word omega = omega_word(g);
      for (std::size_t i = 0; i < omega.size(); ++i) {
        if (xi_at(n + static_cast<Index>(i)) != omega[i]) return false;
      }
    } else if (id == "4") {
      const Index k = t[0], m = t[1];
      for (Index i = m; i < m + k; ++i) {
        if (xi_at(i) != 0) return false;
      }
      if (xi_at(m + k) != 1 || m <= 0 || m > t[2]) return false;
    } else if (id == "recurrence") {
      const PointDescriptor p = descriptor_from_code(t[0], t[1]);
      const Index N = t[2], s = t[3];
      for (Index i = -N; i <= N; ++i) {
        if (point_at(p, s + i) != point_at(p, i)) return false;
      }
    } else if (id == "3") {
      if (t[0] > 100000) continue;
      const PointDescriptor p = PointDescriptor::parse(report.parameters.at("point").get<std::string>());
      std::int64_t count = 0;
      for (Index i = -t[0]; i <= t[0]; ++i) count += point_at(p, i);
      if (count != t[1]) return false;
    } else if (id == "minimality" && t[0] > 0) {
      const Index length = omega_length(static_cast<int>(t[0]));
      if (length > 100000) continue;
      Index prev = -1, best = 0;
      for (Index i = 0; i < length; ++i) {
        if (xi_at(i) == 1) {
          if (prev >= 0) best = std::max(best, i - prev);
          prev = i;
        }
      }
      if (best != t[1]) return false;
    }
  }
  return true;
}

}  // namespace recurshift
