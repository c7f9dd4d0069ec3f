#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace recurshift {

/// Finite binary word, stored bit-packed (symbol i is bit i % 64 of block i / 64).
class Word {
 public:
  Word() = default;

  /// Parses a string over {'0','1'}; throws InvalidArgument on any other character.
  static Word from_string(std::string_view symbols);
  static Word zeros(std::size_t count);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  int operator[](std::size_t i) const noexcept { return static_cast<int>((blocks_[i >> 6] >> (i & 63)) & 1u); }
  void set(std::size_t i, int symbol) noexcept;

  void push_back(int symbol);
  void append_zeros(std::size_t count);
  /// Appends symbols [from, from + count) of `other`.
  void append(const Word& other, std::size_t from, std::size_t count);
  void append(const Word& other) { append(other, 0, other.size()); }

  /// Up to 64 symbols starting at `pos`, symbol pos + j in bit j. Symbols past
  /// the end read as 0.
  std::uint64_t extract(std::size_t pos, unsigned count) const noexcept;

  std::size_t count_ones() const noexcept;
  bool is_prefix_of(const Word& other) const noexcept;
  bool is_suffix_of(const Word& other) const noexcept;
  Word reversed() const;
  Word slice(std::size_t from, std::size_t count) const;

  std::string to_string() const;

  const std::vector<std::uint64_t>& blocks() const noexcept { return blocks_; }

  friend bool operator==(const Word& a, const Word& b) noexcept { return a.size_ == b.size_ && a.blocks_ == b.blocks_; }
  /// Lexicographic order by symbols, shorter prefix first.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept;

 private:
  std::vector<std::uint64_t> blocks_;
  std::size_t size_ = 0;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace recurshift
