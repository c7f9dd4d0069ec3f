#include "recurshift/word.hpp"

#include <algorithm>
#include <bit>

#include "recurshift/errors.hpp"

namespace recurshift {

namespace {

inline std::uint64_t low_mask(unsigned count) { return count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1; }

}  // namespace

Word Word::from_string(std::string_view symbols) {
  Word w;
  w.blocks_.reserve((symbols.size() + 63) / 64);
  for (char c : symbols) {
    if (c != '0' && c != '1') throw InvalidArgument(std::string("word symbol outside {0,1}: '") + c + "'");
    w.push_back(c - '0');
  }
  return w;
}

Word Word::zeros(std::size_t count) {
  Word w;
  w.append_zeros(count);
  return w;
}

void Word::set(std::size_t i, int symbol) noexcept {
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (symbol) {
    blocks_[i >> 6] |= bit;
  } else {
    blocks_[i >> 6] &= ~bit;
  }
}

void Word::push_back(int symbol) {
  if ((size_ & 63) == 0) blocks_.push_back(0);
  if (symbol) blocks_.back() |= std::uint64_t{1} << (size_ & 63);
  ++size_;
}

void Word::append_zeros(std::size_t count) {
  size_ += count;
  blocks_.resize((size_ + 63) / 64, 0);
}

void Word::append(const Word& other, std::size_t from, std::size_t count) {
  const std::size_t start = size_;
  size_ += count;
  blocks_.resize((size_ + 63) / 64, 0);
  std::size_t done = 0;
  // Align the destination to a block boundary first, then copy whole blocks.
  while (done < count) {
    const std::size_t dst = start + done;
    const unsigned dst_off = static_cast<unsigned>(dst & 63);
    const unsigned take = static_cast<unsigned>(std::min<std::size_t>(64 - dst_off, count - done));
    const std::uint64_t bits = other.extract(from + done, take);
    blocks_[dst >> 6] |= bits << dst_off;
    done += take;
  }
}

std::uint64_t Word::extract(std::size_t pos, unsigned count) const noexcept {
  if (count == 0 || pos >= size_) return 0;
  const std::size_t block = pos >> 6;
  const unsigned off = static_cast<unsigned>(pos & 63);
  std::uint64_t bits = blocks_[block] >> off;
  if (off != 0 && block + 1 < blocks_.size()) bits |= blocks_[block + 1] << (64 - off);
  const std::size_t available = size_ - pos;
  if (available < count) count = static_cast<unsigned>(available);
  return bits & low_mask(count);
}

std::size_t Word::count_ones() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t b : blocks_) total += static_cast<std::size_t>(std::popcount(b));
  return total;
}

bool Word::is_prefix_of(const Word& other) const noexcept {
  if (size_ > other.size_) return false;
  for (std::size_t pos = 0; pos < size_; pos += 64) {
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(64, size_ - pos));
    if (extract(pos, n) != other.extract(pos, n)) return false;
  }
  return true;
}

bool Word::is_suffix_of(const Word& other) const noexcept {
  if (size_ > other.size_) return false;
  const std::size_t shift = other.size_ - size_;
  for (std::size_t pos = 0; pos < size_; pos += 64) {
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(64, size_ - pos));
    if (extract(pos, n) != other.extract(shift + pos, n)) return false;
  }
  return true;
}

Word Word::reversed() const {
  Word w = Word::zeros(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) w.set(size_ - 1 - i, 1);
  }
  return w;
}

Word Word::slice(std::size_t from, std::size_t count) const {
  if (from > size_ || count > size_ - from) throw InvalidArgument("word slice out of range");
  Word w;
  w.append(*this, from, count);
  return w;
}

std::string Word::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept {
  const std::size_t common = std::min(a.size_, b.size_);
  for (std::size_t pos = 0; pos < common; pos += 64) {
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(64, common - pos));
    const std::uint64_t x = a.extract(pos, n);
    const std::uint64_t y = b.extract(pos, n);
    if (x != y) {
      // The lowest differing bit is the first differing symbol.
      const std::uint64_t bit = (x ^ y) & (~(x ^ y) + 1);
      return (x & bit) ? std::strong_ordering::greater : std::strong_ordering::less;
    }
  }
  return a.size_ <=> b.size_;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ w.size();
  for (std::uint64_t b : w.blocks()) {
    h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace recurshift
