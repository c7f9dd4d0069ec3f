#pragma once

// Slow reference implementations used only by the tests. They work on
// std::string and plain loops and share no code with the library.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline std::string omega(int n) {
  std::string w = "1";
  for (int k = 1; k < n; ++k) w = w + std::string(static_cast<std::size_t>(k), '0') + w;
  return w;
}

/// xi as a string over [-pad, len(omega(n)) - 1].
struct Xi {
  explicit Xi(int n, std::int64_t pad = 0) : pad(pad), text(std::string(static_cast<std::size_t>(pad), '0') + omega(n)) {}
  std::int64_t pad;
  std::string text;
  std::int64_t end() const { return static_cast<std::int64_t>(text.size()) - pad; }
  int at(std::int64_t i) const {
    if (i < 0) return 0;
    return text.at(static_cast<std::size_t>(i + pad)) - '0';
  }
  std::string window(std::int64_t j, std::int64_t len) const {
    std::string out;
    for (std::int64_t i = j; i < j + len; ++i) out += static_cast<char>('0' + at(i));
    return out;
  }
};

inline std::set<std::string> factors(const Xi& xi, std::int64_t L) {
  std::set<std::string> out;
  for (std::int64_t j = -L; j + L <= xi.end(); ++j) out.insert(xi.window(j, L));
  return out;
}

inline std::vector<std::int64_t> occurrences(const Xi& xi, const std::string& w, std::int64_t a, std::int64_t b) {
  std::vector<std::int64_t> out;
  for (std::int64_t j = a; j <= b; ++j) {
    if (xi.window(j, static_cast<std::int64_t>(w.size())) == w) out.push_back(j);
  }
  return out;
}

/// Coordinate i of zero / xi:n / rxi:n, kind 0 / 1 / 2.
inline int point(const Xi& xi, int kind, std::int64_t n, std::int64_t i) {
  if (kind == 0) return 0;
  if (kind == 1) return xi.at(n + i);
  return xi.at(-n - i);
}

/// min{|i| : x(i) != y(i)} over |i| <= R, or -1.
template <class X, class Y>
std::int64_t first_disagreement(X x, Y y, std::int64_t R) {
  for (std::int64_t k = 0; k <= R; ++k) {
    if (x(k) != y(k) || x(-k) != y(-k)) return k;
  }
  return -1;
}

}  // namespace oracle
