#include "recurshift/language.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "recurshift/config.hpp"
#include "recurshift/errors.hpp"
#include "recurshift/omega.hpp"

namespace recurshift {

namespace {

Word word_from_code(std::uint64_t code, std::size_t length) {
  Word w = Word::zeros(length);
  for (std::size_t k = 0; k < length; ++k) {
    if ((code >> k) & 1u) w.set(k, 1);
  }
  return w;
}

// Reader backed by the shared tape when [0, end) fits under the cap.
XiReader reader_for(Index end) {
  if (end <= 0) return XiReader{};
  if (end <= materialize_cap()) {
    try {
      return XiReader(xi_tape(end));
    } catch (const CapExceeded&) {
    }
  }
  return XiReader{};
}

}  // namespace

bool FactorSet::contains(const Word& w) const { return std::binary_search(words.begin(), words.end(), w); }

FactorSet factors(std::size_t length, int horizon_n) {
  if (length == 0) throw InvalidArgument("factor length must be >= 1");
  const Index horizon_len = omega_length(horizon_n);
  const Index L = static_cast<Index>(length);
  if (horizon_len < L) {
    throw InvalidArgument("horizon l_" + std::to_string(horizon_n) + " = " + to_string(horizon_len) +
                          " is shorter than the factor length " + std::to_string(length));
  }
  if (horizon_len + L > materialize_cap()) {
    throw CapExceeded("factor scan over l_" + std::to_string(horizon_n) + " + " + std::to_string(length) +
                      " symbols exceeds the materialization cap");
  }
  const auto tape = xi_tape(horizon_len);
  const std::int64_t first = -static_cast<std::int64_t>(length);
  const std::int64_t last = static_cast<std::int64_t>(horizon_len) - static_cast<std::int64_t>(length);

  FactorSet out;
  out.length = length;
  out.horizon_n = horizon_n;
  if (length <= 64) {
    std::unordered_set<std::uint64_t> codes;
    const unsigned n = static_cast<unsigned>(length);
    for (std::int64_t j = first; j <= last; ++j) codes.insert(tape->bits(j, n));
    out.words.reserve(codes.size());
    for (std::uint64_t c : codes) out.words.push_back(word_from_code(c, length));
  } else {
    std::unordered_set<Word, WordHash> seen;
    for (std::int64_t j = first; j <= last; ++j) {
      Word w;
      if (j < 0) {
        w.append_zeros(static_cast<std::size_t>(-j));
        w.append(tape->word(), 0, length - static_cast<std::size_t>(-j));
      } else {
        w.append(tape->word(), static_cast<std::size_t>(j), length);
      }
      seen.insert(std::move(w));
    }
    out.words.assign(seen.begin(), seen.end());
  }
  std::sort(out.words.begin(), out.words.end());
  return out;
}

int default_max_horizon() {
  const std::int64_t cap = materialize_cap();
  int n = 1;
  while (n < max_omega_index() && omega_length(n + 1) <= cap) ++n;
  return n;
}

std::pair<FactorSet, int> factors_stabilized(std::size_t length, int max_horizon) {
  if (length == 0) throw InvalidArgument("factor length must be >= 1");
  int n = length <= 1 ? 1 : enclosing_omega(static_cast<Index>(length) - 1);
  if (n > max_horizon) {
    throw BudgetExceeded("no horizon up to " + std::to_string(max_horizon) + " holds words of length " +
                         std::to_string(length));
  }
  FactorSet previous = factors(length, n);
  while (n < max_horizon) {
    ++n;
    FactorSet current = factors(length, n);
    const bool same = current.words == previous.words;
    if (same && n >= static_cast<int>(length) + 2) {
      current.stabilized = true;
      return {std::move(current), n};
    }
    previous = std::move(current);
  }
  previous.stabilized = false;
  return {std::move(previous), 0};
}

std::size_t factor_complexity(std::size_t length, int max_horizon) {
  auto [set, n_stab] = factors_stabilized(length, max_horizon);
  if (!set.stabilized) {
    throw BudgetExceeded("factor set of length " + std::to_string(length) + " did not stabilize by horizon " +
                         std::to_string(max_horizon));
  }
  return set.size();
}

void scan_occurrences(const Word& w, IndexRange range, const std::function<bool(Index)>& visit) {
  if (w.empty()) throw InvalidArgument("cannot search for the empty word");
  if (range.first > range.last) return;
  if (range.size() > materialize_cap()) {
    throw CapExceeded("occurrence range of " + to_string(range.size()) + " positions exceeds the materialization cap");
  }
  const std::size_t m = w.size();
  const Index text_end = checked_add(range.last, static_cast<Index>(m));  // exclusive
  const XiReader xi = reader_for(text_end);

  if (m <= 64) {
    // Shift-and: bit k of state is set when the last k+1 text symbols equal w[0..k].
    std::array<std::uint64_t, 2> masks{0, 0};
    for (std::size_t k = 0; k < m; ++k) masks[static_cast<std::size_t>(w[k])] |= std::uint64_t{1} << k;
    const std::uint64_t accept = std::uint64_t{1} << (m - 1);
    std::uint64_t state = 0;
    Index t = range.first;
    while (t < text_end) {
      const unsigned chunk = static_cast<unsigned>(std::min<Index>(64, text_end - t));
      const std::uint64_t bits = xi.bits(t, chunk);
      for (unsigned j = 0; j < chunk; ++j) {
        state = ((state << 1) | 1u) & masks[(bits >> j) & 1u];
        if (state & accept) {
          const Index start = t + j - static_cast<Index>(m) + 1;
          if (!visit(start)) return;
        }
      }
      t += chunk;
    }
    return;
  }

  for (Index j = range.first; j <= range.last; ++j) {
    bool match = true;
    for (std::size_t pos = 0; pos < m && match; pos += 64) {
      const unsigned n = static_cast<unsigned>(std::min<std::size_t>(64, m - pos));
      match = xi.bits(j + static_cast<Index>(pos), n) == w.extract(pos, n);
    }
    if (match && !visit(j)) return;
  }
}

OccurrenceReport occurrences(const Word& w, IndexRange range) {
  OccurrenceReport report;
  report.word = w;
  report.range = range;
  scan_occurrences(w, range, [&](Index j) {
    report.positions.push_back(j);
    return true;
  });
  if (!report.positions.empty()) {
    report.leading_gap = report.positions.front() - range.first;
    report.trailing_gap = range.last - report.positions.back();
  }
  for (std::size_t k = 1; k < report.positions.size(); ++k) {
    const Index gap = report.positions[k] - report.positions[k - 1];
    if (!report.max_gap || gap > *report.max_gap) report.max_gap = gap;
  }
  return report;
}

std::optional<Index> first_occurrence(const Word& w, IndexRange range) {
  std::optional<Index> found;
  scan_occurrences(w, range, [&](Index j) {
    found = j;
    return false;
  });
  return found;
}

Index max_gap(const Word& w, IndexRange range) {
  std::optional<Index> previous;
  Index widest = 0;
  scan_occurrences(w, range, [&](Index j) {
    widest = std::max(widest, previous ? j - *previous : j - range.first);
    previous = j;
    return true;
  });
  if (!previous) {
    throw NoOccurrence("'" + w.to_string() + "' does not occur in [" + to_string(range.first) + ", " +
                       to_string(range.last) + "]");
  }
  return std::max(widest, range.last - *previous);
}

}  // namespace recurshift
