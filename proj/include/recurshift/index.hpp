#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace recurshift {

// Signed 128-bit coordinate type. Lengths of the omega words overflow 64 bits
// near n = 62, so every coordinate and length in the public surface uses this.
using Index = __int128;

inline constexpr Index kIndexMax = static_cast<Index>(~static_cast<unsigned __int128>(0) >> 1);
inline constexpr Index kIndexMin = -kIndexMax - 1;

/// Checked arithmetic. Throws CapacityExceeded instead of wrapping.
Index checked_add(Index a, Index b);
Index checked_sub(Index a, Index b);
Index checked_mul(Index a, Index b);
Index checked_neg(Index a);

std::string to_string(Index v);

/// Parses an optionally signed decimal integer. Throws std::invalid_argument.
Index parse_index(std::string_view text);

inline bool fits_int64(Index v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

// Largest integer magnitude a double (and so a JSON consumer) represents exactly.
inline constexpr Index kJsonSafeMax = (static_cast<Index>(1) << 53) - 1;

}  // namespace recurshift
