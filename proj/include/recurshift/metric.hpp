#pragma once

// First-disagreement ultrametric on the full shift:
//
//   d(x, y) = 2^-k,  k = min{ |i| : x(i) != y(i) },   d(x, x) = 0.
//
// Distances are exact dyadic numbers; nothing here uses floating point.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "recurshift/index.hpp"
#include "recurshift/omega.hpp"
#include "recurshift/point.hpp"

namespace recurshift {

/// Exact value 2^exponent, or 0.
class Dyadic {
 public:
  static Dyadic zero() { return Dyadic(); }
  static Dyadic pow2(std::int64_t exponent) { return Dyadic(exponent); }

  /// Accepts "0", powers of two such as "1" or "4", reciprocals such as "1/8", and "2^-3".
  static Dyadic parse(std::string_view text);

  bool is_zero() const noexcept { return zero_; }
  /// Exponent of a nonzero value.
  std::int64_t exponent() const noexcept { return exponent_; }

  Dyadic operator*(const Dyadic& other) const;
  Dyadic pow(std::int64_t k) const;

  /// "0", "1", "4", "1/8".
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) noexcept;
  friend bool operator==(const Dyadic& a, const Dyadic& b) noexcept { return (a <=> b) == 0; }

 private:
  Dyadic() = default;
  explicit Dyadic(std::int64_t e) : zero_(false), exponent_(e) {}

  bool zero_ = true;
  std::int64_t exponent_ = 0;
};

struct MetricValue {
  Dyadic value = Dyadic::zero();
  /// True when the first disagreement was located, or equality is structural.
  /// Uncertified values are upper bounds on the true distance.
  bool certified = false;
};

/// A descriptor with finitely many coordinates flipped. Every constructed
/// sample pair in the probes is of this form.
class PerturbedPoint {
 public:
  PerturbedPoint() = default;
  PerturbedPoint(PointDescriptor base) : base_(base) {}  // NOLINT(google-explicit-constructor)
  PerturbedPoint(PointDescriptor base, std::vector<Index> flips);

  /// "xi:3", "rxi:-2", "zero", optionally followed by "+flip{i,j,...}".
  static PerturbedPoint parse(std::string_view text);

  const PointDescriptor& base() const noexcept { return base_; }
  const std::vector<Index>& flips() const noexcept { return flips_; }

  int at(Index i) const;
  /// Coordinates start .. start + count - 1 in bits 0 .. count - 1 (count <= 64).
  std::uint64_t bits(Index start, unsigned count, const XiReader& xi) const;

  /// T^n applied to this point.
  PerturbedPoint shifted(Index n) const;
  PerturbedPoint with_flip(Index i) const;

  /// Same descriptor and same flip set, which for this family is exactly equality.
  bool same_as(const PerturbedPoint& other) const { return base_ == other.base_ && flips_ == other.flips_; }

  std::string to_string() const;

  friend bool operator==(const PerturbedPoint& a, const PerturbedPoint& b) { return a.same_as(b); }

 private:
  PointDescriptor base_;
  std::vector<Index> flips_;  // sorted, distinct
};

/// Reader used by the metric code; shares the process-wide tape.
XiReader metric_reader();

/// min{|i| : x(i) != y(i)} searched over |i| <= resolution.
std::optional<Index> first_disagreement(const PerturbedPoint& x, const PerturbedPoint& y, Index resolution);

MetricValue distance(const PerturbedPoint& x, const PerturbedPoint& y, Index resolution);

/// Whether y lies in the local stable set W^s_eps(x) with eps = 2^-e.
struct StableMembership {
  bool member = false;
  bool certified = false;
  bool by_definition = false;   // d(T^n x, T^n y) <= eps for every n in [0, horizon]
  bool by_cutoff = false;       // x(i) = y(i) for every i >= 1 - e inside the horizon window
  Index cutoff = 0;             // 1 - e for e >= 1; unused for e = 0
  /// When y is asymptotic to x: the n with T^n y in W^s_eps(T^n x), and whether that was confirmed.
  std::optional<Index> decomposition_shift;
  bool decomposition_ok = true;
};

StableMembership stable_membership(const PerturbedPoint& x, const PerturbedPoint& y, std::int64_t e, Index horizon);

/// d(T^n x, T^n y) <= 2^-e for n = 0, step, 2 step, ..., steps * step. A
/// negative step checks the local unstable set.
bool in_local_set(const PerturbedPoint& x, const PerturbedPoint& y, std::int64_t e, Index steps, Index step = 1);

}  // namespace recurshift
