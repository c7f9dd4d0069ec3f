#pragma once

// Factor language of X, the orbit closure of xi.
//
// The language of X is taken to be the set of finite windows of xi itself: each
// window of a point of X is a limit, hence eventually equal to a window of xi,
// and every window of xi is a window of xi in X.
//
// Stabilization: omega_n is both a prefix and a suffix of omega_{n+1}, so the
// only length-L windows of omega_{n+1} that are not windows of omega_n straddle
// the middle gap 0^n. Once n >= L such a window is a suffix of omega_n padded
// with zeros, zeros followed by a prefix, or 0^L, and all three shapes already
// occur around the 0^L gap of omega_{L+1}. The factor sets are therefore
// constant from horizon L + 1 on.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "recurshift/index.hpp"
#include "recurshift/word.hpp"

namespace recurshift {

/// Inclusive integer interval [first, last].
struct IndexRange {
  Index first = 0;
  Index last = 0;

  Index size() const { return last - first + 1; }
};

struct FactorSet {
  std::size_t length = 0;
  std::vector<Word> words;  // sorted, distinct
  int horizon_n = 0;
  bool stabilized = false;

  bool contains(const Word& w) const;
  std::size_t size() const noexcept { return words.size(); }
};

/// Distinct windows xi(j) .. xi(j+L-1) for j in [-L, l_h - L].
FactorSet factors(std::size_t length, int horizon_n);

/// Default ceiling for the stabilization search: the largest horizon whose
/// omega word fits the materialization cap.
int default_max_horizon();

/// Grows the horizon until two consecutive horizons agree and horizon >= L + 2.
/// When `max_horizon` is reached first, the last set is returned with
/// stabilized = false and the second member is 0.
std::pair<FactorSet, int> factors_stabilized(std::size_t length, int max_horizon = default_max_horizon());

/// |factors_stabilized(L)|. Throws BudgetExceeded when stabilization is not reached.
std::size_t factor_complexity(std::size_t length, int max_horizon = default_max_horizon());

struct OccurrenceReport {
  Word word;
  IndexRange range;
  std::vector<Index> positions;          // strictly increasing start indices
  std::optional<Index> max_gap;          // between consecutive in-range occurrences; empty with < 2 occurrences
  std::optional<Index> leading_gap;      // positions.front() - range.first
  std::optional<Index> trailing_gap;     // range.last - positions.back()
};

/// Calls `visit(position)` for each start j in `range` with xi(j..j+|w|-1) = w,
/// in increasing order, until `visit` returns false. Shift-and for |w| <= 64.
void scan_occurrences(const Word& w, IndexRange range, const std::function<bool(Index)>& visit);

OccurrenceReport occurrences(const Word& w, IndexRange range);

/// First start in `range`, if any.
std::optional<Index> first_occurrence(const Word& w, IndexRange range);

/// Largest distance between consecutive occurrence starts, where the range
/// endpoints count as sentinels. Throws NoOccurrence when w never occurs.
Index max_gap(const Word& w, IndexRange range);

}  // namespace recurshift
