#pragma once

#include <cstdint>

namespace recurshift {

inline constexpr std::int64_t kDefaultMaterializeCap = std::int64_t{1} << 28;

/// Maximum number of symbols any single operation materializes. Defaults to
/// 2^28, or the value of RECURSHIFT_MAX_MATERIALIZE when that is set to a
/// positive integer.
std::int64_t materialize_cap();

/// Overrides the cap for the rest of the process (0 restores the default lookup).
void set_materialize_cap(std::int64_t cap);

}  // namespace recurshift
