#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "recurshift/index.hpp"
#include "recurshift/language.hpp"
#include "recurshift/point.hpp"

namespace recurshift {

enum class Direction { Positive, Negative };

std::string to_string(Direction d);

/// Least m > 0 with xi(m) .. xi(m+k) = 0^k 1, scanning m <= horizon.
/// Throws BudgetExceeded when no such m lies within the horizon.
Index find_m(int k, Index horizon);

/// Up to `count` shifts n of the requested sign, each a multiple of `power`
/// with |n| <= horizon and p(n+i) = p(i) for all |i| <= N, in increasing |n|.
///
/// When the scan direction runs into an all-zero tail of p and the centre
/// window contains a 1, the scan stops where the shifted window lies entirely
/// in that tail: no later shift can match.
std::vector<Index> return_times(const PointDescriptor& p, int N, Direction direction, Index power, Index horizon,
                                std::size_t count);

/// Shift beyond which no return exists in `direction` because the shifted
/// window of radius N lies in an all-zero tail of p while the centre window
/// holds a 1. Empty when no such bound exists.
std::optional<Index> structural_return_bound(const PointDescriptor& p, int N, Direction direction);

enum class Verdict { PositiveEvidence, NegativeEvidence, Both, NoneWithinHorizon };

std::string to_string(Verdict v);

struct RadiusEvidence {
  int radius = 0;
  std::optional<Index> first_positive;
  std::optional<Index> first_negative;
  bool positive_excluded = false;  // proven absent, not merely unseen
  bool negative_excluded = false;
};

struct RecurrenceReport {
  PointDescriptor point;
  int window_radius = 0;                // N_max
  std::vector<Index> positive_returns;  // returns for radius N_max
  std::vector<Index> negative_returns;
  Index horizon = 0;
  Verdict verdict = Verdict::NoneWithinHorizon;
  std::optional<std::string> structural_note;
  std::vector<RadiusEvidence> radii;  // one entry per N in 1..N_max
};

/// Runs the return search in both directions for every radius 1..N_max.
/// `count` bounds the return lists kept for radius N_max.
RecurrenceReport classify_point(const PointDescriptor& p, int N_max, Index horizon, std::size_t count = 4);

enum class LimitKind { Omega, Alpha };

/// Length-L words that occur in p within [B, horizon] (omega) or
/// [-horizon, -B] (alpha) for every B in {horizon/8, horizon/4, horizon/2}.
/// An outer approximation of the language of the limit set.
FactorSet limit_factors(const PointDescriptor& p, std::size_t L, LimitKind kind, Index horizon);

}  // namespace recurshift
