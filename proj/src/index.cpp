#include "recurshift/index.hpp"

#include <algorithm>
#include <stdexcept>

#include "recurshift/errors.hpp"

namespace recurshift {

Index checked_add(Index a, Index b) {
  Index r;
  if (__builtin_add_overflow(a, b, &r)) throw CapacityExceeded("128-bit index overflow in addition");
  return r;
}

Index checked_sub(Index a, Index b) {
  Index r;
  if (__builtin_sub_overflow(a, b, &r)) throw CapacityExceeded("128-bit index overflow in subtraction");
  return r;
}

Index checked_mul(Index a, Index b) {
  Index r;
  if (__builtin_mul_overflow(a, b, &r)) throw CapacityExceeded("128-bit index overflow in multiplication");
  return r;
}

Index checked_neg(Index a) {
  if (a == kIndexMin) throw CapacityExceeded("128-bit index overflow in negation");
  return -a;
}

std::string to_string(Index v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Work in unsigned space so kIndexMin prints correctly.
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(0) - static_cast<unsigned __int128>(v)
                                   : static_cast<unsigned __int128>(v);
  std::string out;
  while (mag != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

Index parse_index(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw std::invalid_argument("integer has no digits: " + std::string(text));
  unsigned __int128 mag = 0;
  const unsigned __int128 limit = static_cast<unsigned __int128>(kIndexMax) + (negative ? 1 : 0);
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') throw std::invalid_argument("not an integer: " + std::string(text));
    const unsigned __int128 next = mag * 10 + static_cast<unsigned>(c - '0');
    if (next / 10 != mag || next > limit) throw std::invalid_argument("integer exceeds 128-bit range: " + std::string(text));
    mag = next;
  }
  if (negative) return static_cast<Index>(static_cast<unsigned __int128>(0) - mag);
  return static_cast<Index>(mag);
}

}  // namespace recurshift
