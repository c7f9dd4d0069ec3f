#include "recurshift/recurrence.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <unordered_set>

#include "recurshift/config.hpp"
#include "recurshift/errors.hpp"
#include "recurshift/omega.hpp"

namespace recurshift {

namespace {

// Largest xi coordinate touched when p is read on [-reach, reach].
Index max_xi_coordinate(const PointDescriptor& p, Index reach) {
  switch (p.kind) {
    case PointDescriptor::Kind::Zero:
      return -1;
    case PointDescriptor::Kind::XiShift:
      return checked_add(p.offset, reach);
    case PointDescriptor::Kind::XiReflectShift:
      return checked_add(checked_neg(p.offset), reach);
  }
  return -1;
}

XiReader reader_covering(const PointDescriptor& p, Index reach) {
  const Index top = max_xi_coordinate(p, reach);
  if (top < 0) return XiReader{};
  if (top < materialize_cap()) {
    try {
      return XiReader(xi_tape(top + 1));
    } catch (const CapExceeded&) {
    }
  }
  return XiReader{};
}

// Coordinate reads against the shared tape with plain 64-bit arithmetic. Only
// valid when every coordinate read is known to lie inside the tape.
class TapeWindow {
 public:
  TapeWindow(const XiTape& tape, const PointDescriptor& p)
      : tape_(tape), kind_(p.kind), offset_(static_cast<std::int64_t>(p.offset)) {}

  std::uint64_t bits(std::int64_t start, unsigned count) const noexcept {
    switch (kind_) {
      case PointDescriptor::Kind::Zero:
        return 0;
      case PointDescriptor::Kind::XiShift:
        return tape_.bits(offset_ + start, count);
      case PointDescriptor::Kind::XiReflectShift:
        return reverse_bits(tape_.bits(-offset_ - start - static_cast<std::int64_t>(count) + 1, count), count);
    }
    return 0;
  }

 private:
  const XiTape& tape_;
  PointDescriptor::Kind kind_;
  std::int64_t offset_;
};

bool window_has_one(const PointReader& reader, int N) {
  for (Index start = -N; start <= N; start += 64) {
    const unsigned n = static_cast<unsigned>(std::min<Index>(64, N - start + 1));
    if (reader.bits(start, n) != 0) return true;
  }
  return false;
}

}  // namespace

std::string to_string(Direction d) { return d == Direction::Positive ? "positive" : "negative"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::PositiveEvidence:
      return "positively-recurrent-evidence";
    case Verdict::NegativeEvidence:
      return "negatively-recurrent-evidence";
    case Verdict::Both:
      return "both";
    case Verdict::NoneWithinHorizon:
      return "none-within-horizon";
  }
  return "none-within-horizon";
}

Index find_m(int k, Index horizon) {
  if (k < 1) throw InvalidArgument("find_m needs k >= 1");
  Word target = Word::zeros(static_cast<std::size_t>(k));
  target.push_back(1);
  if (horizon < 1) throw BudgetExceeded("horizon " + to_string(horizon) + " leaves no candidate m > 0");
  const auto found = first_occurrence(target, {1, horizon});
  if (!found) {
    throw BudgetExceeded("no occurrence of 0^" + std::to_string(k) + "1 starts in [1, " + to_string(horizon) + "]");
  }
  return *found;
}

std::optional<Index> structural_return_bound(const PointDescriptor& p, int N, Direction direction) {
  if (N < 0) throw InvalidArgument("window radius must be >= 0");
  const PointReader reader(p);
  if (p.kind == PointDescriptor::Kind::XiShift && direction == Direction::Negative) {
    // p(i) = 0 for i < -n; a matching window must still reach coordinate -n.
    if (!window_has_one(reader, N)) return std::nullopt;
    return std::max<Index>(0, checked_add(p.offset, N));
  }
  if (p.kind == PointDescriptor::Kind::XiReflectShift && direction == Direction::Positive) {
    // p(i) = 0 for i > -n.
    if (!window_has_one(reader, N)) return std::nullopt;
    return std::max<Index>(0, checked_sub(Index{N}, p.offset));
  }
  return std::nullopt;
}

std::vector<Index> return_times(const PointDescriptor& p, int N, Direction direction, Index power, Index horizon,
                                std::size_t count) {
  if (N < 0) throw InvalidArgument("window radius must be >= 0");
  if (power < 1) throw InvalidArgument("power must be >= 1");
  if (horizon < 0) throw InvalidArgument("horizon must be >= 0");
  std::vector<Index> out;
  if (count == 0) return out;

  Index limit = horizon;
  if (const auto bound = structural_return_bound(p, N, direction)) limit = std::min(limit, *bound);

  const PointReader reader(p, reader_covering(p, checked_add(limit, N)));
  std::vector<std::uint64_t> pattern;
  for (Index start = -N; start <= N; start += 64) {
    pattern.push_back(reader.bits(start, static_cast<unsigned>(std::min<Index>(64, N - start + 1))));
  }
  const Index step = direction == Direction::Positive ? power : -power;
  for (Index s = step; (s < 0 ? -s : s) <= limit; s += step) {
    bool match = true;
    std::size_t chunk = 0;
    for (Index start = -N; start <= N && match; start += 64, ++chunk) {
      const unsigned n = static_cast<unsigned>(std::min<Index>(64, N - start + 1));
      match = reader.bits(s + start, n) == pattern[chunk];
    }
    if (match) {
      out.push_back(s);
      if (out.size() == count) break;
    }
  }
  return out;
}

namespace {

struct DirectionScan {
  std::vector<std::optional<Index>> first;  // index N - 1
  std::vector<bool> excluded;
  std::vector<Index> top_returns;
};

DirectionScan scan_direction(const PointDescriptor& p, int N_max, Index horizon, std::size_t count,
                             Direction direction) {
  DirectionScan out;
  out.first.assign(static_cast<std::size_t>(N_max), std::nullopt);
  out.excluded.assign(static_cast<std::size_t>(N_max), false);

  std::vector<std::optional<Index>> bound(static_cast<std::size_t>(N_max));
  for (int N = 1; N <= N_max; ++N) bound[static_cast<std::size_t>(N - 1)] = structural_return_bound(p, N, direction);

  // Scanning may stop early only when every still-unresolved radius has a bound.
  auto scan_limit = [&](int unresolved_from) {
    Index limit = horizon;
    Index widest = 0;
    for (int N = unresolved_from; N <= N_max; ++N) {
      const auto& b = bound[static_cast<std::size_t>(N - 1)];
      if (!b) return limit;
      widest = std::max(widest, *b);
    }
    return std::min(limit, widest);
  };

  Index scanned = 0;
  if (N_max <= 63) {
    // One pass: the agreement radius r(s) = min{|i| : p(s+i) != p(i)} decides
    // every window size at once, since a return for N is a return for all N' < N.
    const Index reach = checked_add(scan_limit(1), N_max);
    const XiReader xi = reader_covering(p, reach);
    const PointReader reader(p, xi);
    const unsigned right_width = static_cast<unsigned>(N_max) + 1;
    const unsigned left_width = static_cast<unsigned>(N_max);
    const std::uint64_t right_pattern = reader.bits(0, right_width);
    const std::uint64_t left_pattern = reader.bits(-N_max, left_width);
    const bool fast = xi.tape() != nullptr && xi.tape()->covers(max_xi_coordinate(p, reach) + 1) &&
                      fits_int64(checked_add(p.offset < 0 ? -p.offset : p.offset, reach));
    std::optional<TapeWindow> window;
    if (fast) window.emplace(*xi.tape(), p);

    int unresolved = 1;
    Index limit = scan_limit(unresolved);
    const Index step = direction == Direction::Positive ? 1 : -1;
    for (Index s = step, distance = 1; distance <= limit; s += step, ++distance) {
      std::uint64_t right;
      std::uint64_t left;
      if (window) {
        const auto s64 = static_cast<std::int64_t>(s);
        right = window->bits(s64, right_width) ^ right_pattern;
        left = window->bits(s64 - N_max, left_width) ^ left_pattern;
      } else {
        right = reader.bits(s, right_width) ^ right_pattern;
        left = reader.bits(s - N_max, left_width) ^ left_pattern;
      }
      const int r_right = right ? std::countr_zero(right) : N_max + 1;
      const int r_left = left ? N_max - (63 - std::countl_zero(left)) : N_max + 1;
      const int r = std::min(r_right, r_left);
      scanned = distance;
      if (unresolved <= N_max && r > unresolved) {
        while (unresolved <= N_max && r > unresolved) {
          out.first[static_cast<std::size_t>(unresolved - 1)] = s;
          ++unresolved;
        }
        limit = unresolved <= N_max ? scan_limit(unresolved) : horizon;
      }
      if (r > N_max) {
        out.top_returns.push_back(s);
        if (out.top_returns.size() >= count && unresolved > N_max) break;
      }
      if (unresolved > N_max && count == 0) break;
    }
    // Every shift with |s| <= scanned was examined.
    for (int N = unresolved; N <= N_max; ++N) {
      const auto& b = bound[static_cast<std::size_t>(N - 1)];
      if (b && *b <= scanned) out.excluded[static_cast<std::size_t>(N - 1)] = true;
    }
    return out;
  }

  for (int N = 1; N <= N_max; ++N) {
    const std::size_t want = N == N_max ? std::max<std::size_t>(count, 1) : 1;
    const auto found = return_times(p, N, direction, 1, horizon, want);
    if (!found.empty()) out.first[static_cast<std::size_t>(N - 1)] = found.front();
    if (N == N_max) out.top_returns.assign(found.begin(), found.begin() + std::min(found.size(), count));
    const auto& b = bound[static_cast<std::size_t>(N - 1)];
    if (found.empty() && b && *b <= horizon) out.excluded[static_cast<std::size_t>(N - 1)] = true;
  }
  return out;
}

std::string tail_note(const PointDescriptor& p, Direction direction, int from_radius) {
  const std::string side = direction == Direction::Positive ? "positive" : "negative";
  std::string tail;
  if (p.kind == PointDescriptor::Kind::XiShift) {
    tail = "coordinates i < " + to_string(checked_neg(p.offset)) + " are all 0";
  } else {
    tail = "coordinates i > " + to_string(checked_neg(p.offset)) + " are all 0";
  }
  return side + " returns are impossible for every window radius N >= " + std::to_string(from_radius) + ": " + tail +
         " while the centre window contains a 1, so no shifted window can match";
}

}  // namespace

RecurrenceReport classify_point(const PointDescriptor& p, int N_max, Index horizon, std::size_t count) {
  if (N_max < 1) throw InvalidArgument("N_max must be >= 1");
  if (horizon < 0) throw InvalidArgument("horizon must be >= 0");
  RecurrenceReport report;
  report.point = p;
  report.window_radius = N_max;
  report.horizon = horizon;

  const DirectionScan pos = scan_direction(p, N_max, horizon, count, Direction::Positive);
  const DirectionScan neg = scan_direction(p, N_max, horizon, count, Direction::Negative);
  report.positive_returns.assign(pos.top_returns.begin(),
                                 pos.top_returns.begin() + std::min(pos.top_returns.size(), count));
  report.negative_returns.assign(neg.top_returns.begin(),
                                 neg.top_returns.begin() + std::min(neg.top_returns.size(), count));

  bool all_pos = true;
  bool all_neg = true;
  int pos_excluded_from = 0;
  int neg_excluded_from = 0;
  for (int N = 1; N <= N_max; ++N) {
    const auto idx = static_cast<std::size_t>(N - 1);
    RadiusEvidence e;
    e.radius = N;
    e.first_positive = pos.first[idx];
    e.first_negative = neg.first[idx];
    e.positive_excluded = pos.excluded[idx];
    e.negative_excluded = neg.excluded[idx];
    all_pos = all_pos && e.first_positive.has_value();
    all_neg = all_neg && e.first_negative.has_value();
    if (e.positive_excluded && pos_excluded_from == 0) pos_excluded_from = N;
    if (e.negative_excluded && neg_excluded_from == 0) neg_excluded_from = N;
    report.radii.push_back(e);
  }
  if (all_pos && all_neg) {
    report.verdict = Verdict::Both;
  } else if (all_pos) {
    report.verdict = Verdict::PositiveEvidence;
  } else if (all_neg) {
    report.verdict = Verdict::NegativeEvidence;
  } else {
    report.verdict = Verdict::NoneWithinHorizon;
  }

  std::string note;
  if (pos_excluded_from > 0) note = tail_note(p, Direction::Positive, pos_excluded_from);
  if (neg_excluded_from > 0) {
    if (!note.empty()) note += "; ";
    note += tail_note(p, Direction::Negative, neg_excluded_from);
  }
  if (!note.empty()) report.structural_note = note;
  return report;
}

FactorSet limit_factors(const PointDescriptor& p, std::size_t L, LimitKind kind, Index horizon) {
  if (L == 0) throw InvalidArgument("factor length must be >= 1");
  if (horizon < 8) throw InvalidArgument("limit_factors needs horizon >= 8");
  if (horizon > materialize_cap()) throw CapExceeded("limit_factors horizon exceeds the materialization cap");
  const PointReader reader(p, reader_covering(p, horizon));
  const Index len = static_cast<Index>(L);

  auto window = [&](Index j) {
    Word w;
    for (std::size_t pos = 0; pos < L; pos += 64) {
      const unsigned n = static_cast<unsigned>(std::min<std::size_t>(64, L - pos));
      const std::uint64_t bits = reader.bits(j + static_cast<Index>(pos), n);
      for (unsigned b = 0; b < n; ++b) w.push_back(static_cast<int>((bits >> b) & 1u));
    }
    return w;
  };
  auto words_in = [&](Index lo, Index hi) {
    std::set<Word> words;
    for (Index j = lo; j + len - 1 <= hi; ++j) words.insert(window(j));
    return words;
  };

  std::optional<std::set<Word>> common;
  for (const Index B : {horizon / 8, horizon / 4, horizon / 2}) {
    const auto words = kind == LimitKind::Omega ? words_in(B, horizon) : words_in(-horizon, -B);
    if (!common) {
      common = words;
      continue;
    }
    std::set<Word> kept;
    std::set_intersection(common->begin(), common->end(), words.begin(), words.end(),
                          std::inserter(kept, kept.begin()));
    common = std::move(kept);
  }
  FactorSet out;
  out.length = L;
  out.horizon_n = enclosing_omega(horizon);
  out.words.assign(common->begin(), common->end());
  return out;
}

}  // namespace recurshift
