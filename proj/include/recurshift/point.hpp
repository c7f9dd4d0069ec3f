#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "recurshift/index.hpp"
#include "recurshift/omega.hpp"

namespace recurshift {

/// A point of the orbit closure of xi that admits a finite description.
///
///   Zero               the fixed point 0^Z
///   XiShift(n)         T^n xi,        coordinate i is xi(n + i)
///   XiReflectShift(n)  T^n xi-bar,    coordinate i is xi(-n - i)
///
/// T is the left shift, (T x)(i) = x(i + 1).
struct PointDescriptor {
  enum class Kind : std::uint8_t { Zero, XiShift, XiReflectShift };

  Kind kind = Kind::Zero;
  Index offset = 0;  // always 0 for Zero

  static PointDescriptor zero() { return {}; }
  static PointDescriptor xi(Index n) { return {Kind::XiShift, n}; }
  static PointDescriptor reflected_xi(Index n) { return {Kind::XiReflectShift, n}; }

  /// Accepts "zero", "xi:<n>" and "rxi:<n>". Throws InvalidArgument.
  static PointDescriptor parse(std::string_view text);
  std::string to_string() const;

  friend auto operator<=>(const PointDescriptor&, const PointDescriptor&) = default;
};

int point_at(const PointDescriptor& p, Index i);

/// Descriptor of the reflection x-bar(i) = x(-i).
PointDescriptor reflect(const PointDescriptor& p);

/// Descriptor of T^n p.
PointDescriptor shift(const PointDescriptor& p, Index n);

/// Bulk coordinate reads for a descriptor. Coordinates start .. start + count - 1
/// land in bits 0 .. count - 1 (count <= 64).
class PointReader {
 public:
  explicit PointReader(PointDescriptor p, XiReader xi = {}) : p_(p), xi_(std::move(xi)) {}

  const PointDescriptor& point() const noexcept { return p_; }
  int at(Index i) const;
  std::uint64_t bits(Index start, unsigned count) const;

 private:
  PointDescriptor p_;
  XiReader xi_;
};

std::uint64_t reverse_bits(std::uint64_t v, unsigned count) noexcept;

}  // namespace recurshift
