#pragma once

// The words omega_n and the bi-infinite sequence xi built from them:
//
//   omega_1 = 1,  omega_{n+1} = omega_n 0^n omega_n,
//   xi(i) = 0 for i < 0,  xi(0) ... xi(l_n - 1) = omega_n,
//
// where l_n = |omega_n| satisfies l_1 = 1, l_{n+1} = 2 l_n + n.

#include <cstdint>
#include <memory>
#include <optional>

#include "recurshift/index.hpp"
#include "recurshift/word.hpp"

namespace recurshift {

/// Largest n whose length l_n fits the 128-bit index type.
int max_omega_index() noexcept;

/// l_n. Throws InvalidArgument for n < 1 and CapacityExceeded past max_omega_index().
Index omega_length(int n);

/// Smallest n with l_n > i (i >= 0).
int enclosing_omega(Index i);

/// Materializes omega_n. Throws CapExceeded when l_n > cap.
Word omega_word(int n, std::int64_t cap);
Word omega_word(int n);

/// xi(i) for any integer i, resolved by descending the recursion.
int xi_at(Index i);

/// xi(a) ... xi(b). Throws CapExceeded when b - a + 1 exceeds the materialization cap.
Word xi_segment(Index a, Index b);

/// Immutable bit-packed copy of xi(0) ... xi(l_n - 1).
class XiTape {
 public:
  explicit XiTape(int n);

  int omega_index() const noexcept { return n_; }
  std::int64_t length() const noexcept { return static_cast<std::int64_t>(word_.size()); }
  const Word& word() const noexcept { return word_; }

  /// True when every coordinate < end is available (negative ones are implicit zeros).
  bool covers(Index end) const noexcept { return end <= static_cast<Index>(word_.size()); }

  int at(std::int64_t i) const noexcept { return i < 0 ? 0 : word_[static_cast<std::size_t>(i)]; }

  /// Symbols start .. start + count - 1 (count <= 64), symbol start + j in bit j.
  /// Negative coordinates read as 0. Requires start + count <= length().
  std::uint64_t bits(std::int64_t start, unsigned count) const noexcept;

 private:
  int n_;
  Word word_;
};

/// Shared tape covering at least [0, min_length). Grows the process-wide cache
/// when needed. Throws CapExceeded when the required l_n exceeds the cap.
std::shared_ptr<const XiTape> xi_tape(Index min_length);

/// Reads xi through the cached tape where possible and by lazy descent elsewhere.
class XiReader {
 public:
  XiReader() = default;
  explicit XiReader(std::shared_ptr<const XiTape> tape) : tape_(std::move(tape)) {}

  int at(Index i) const;
  /// Up to 64 symbols starting at `start`, symbol start + j in bit j.
  std::uint64_t bits(Index start, unsigned count) const;

  const XiTape* tape() const noexcept { return tape_.get(); }

 private:
  std::shared_ptr<const XiTape> tape_;
};

}  // namespace recurshift
