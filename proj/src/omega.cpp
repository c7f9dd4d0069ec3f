#include "recurshift/omega.hpp"

#include <mutex>
#include <vector>

#include "recurshift/config.hpp"
#include "recurshift/errors.hpp"

namespace recurshift {

namespace {

// l_1 .. l_max, filled once; read-only afterwards, so concurrent readers need no lock.
const std::vector<Index>& length_table() {
  static const std::vector<Index> table = [] {
    std::vector<Index> t{0, 1};  // t[0] unused
    for (int n = 1;; ++n) {
      Index twice;
      Index next;
      if (__builtin_mul_overflow(t[static_cast<std::size_t>(n)], Index{2}, &twice) ||
          __builtin_add_overflow(twice, Index{n}, &next)) {
        break;
      }
      t.push_back(next);
    }
    return t;
  }();
  return table;
}

Word build_omega(int n) {
  // omega_{k+1} = omega_k 0^k omega_k, built in place.
  Word w = Word::from_string("1");
  for (int k = 1; k < n; ++k) {
    const std::size_t len = w.size();
    w.append_zeros(static_cast<std::size_t>(k));
    w.append(w, 0, len);
  }
  return w;
}

std::mutex g_tape_mutex;
std::shared_ptr<const XiTape> g_tape;

}  // namespace

int max_omega_index() noexcept { return static_cast<int>(length_table().size()) - 1; }

Index omega_length(int n) {
  if (n < 1) throw InvalidArgument("omega index must be >= 1, got " + std::to_string(n));
  if (n > max_omega_index()) {
    throw CapacityExceeded("l_" + std::to_string(n) + " exceeds 128-bit capacity (max n = " +
                           std::to_string(max_omega_index()) + ")");
  }
  return length_table()[static_cast<std::size_t>(n)];
}

int enclosing_omega(Index i) {
  if (i < 0) throw InvalidArgument("enclosing_omega needs a nonnegative index");
  const auto& t = length_table();
  for (std::size_t n = 1; n < t.size(); ++n) {
    if (t[n] > i) return static_cast<int>(n);
  }
  throw CapacityExceeded("index " + to_string(i) + " lies beyond every representable omega word");
}

Word omega_word(int n, std::int64_t cap) {
  const Index len = omega_length(n);
  if (len > cap) {
    throw CapExceeded("omega_" + std::to_string(n) + " has " + to_string(len) + " symbols, above the cap of " +
                      std::to_string(cap) + "; use lazy indexing");
  }
  return build_omega(n);
}

Word omega_word(int n) { return omega_word(n, materialize_cap()); }

int xi_at(Index i) {
  if (i < 0) return 0;
  const auto& t = length_table();
  int n = enclosing_omega(i);
  // omega_n = omega_{n-1} | 0^{n-1} | omega_{n-1}
  while (n > 1) {
    const Index left = t[static_cast<std::size_t>(n - 1)];
    if (i < left) {
      n -= 1;
    } else if (i < left + (n - 1)) {
      return 0;
    } else {
      i -= left + (n - 1);
      n -= 1;
    }
  }
  return 1;
}

Word xi_segment(Index a, Index b) {
  if (a > b) throw InvalidArgument("xi_segment needs a <= b");
  const Index count = checked_add(checked_sub(b, a), 1);
  const std::int64_t cap = materialize_cap();
  if (count > cap) {
    throw CapExceeded("segment of " + to_string(count) + " symbols exceeds the materialization cap of " +
                      std::to_string(cap));
  }
  Word out;
  if (a < 0) out.append_zeros(static_cast<std::size_t>((b < 0 ? b : Index{-1}) - a + 1));
  if (b < 0) return out;
  const Index from = a < 0 ? Index{0} : a;

  std::shared_ptr<const XiTape> tape;
  if (b < cap) {
    try {
      tape = xi_tape(b + 1);
    } catch (const CapExceeded&) {
      tape.reset();
    }
  }
  if (tape) {
    out.append(tape->word(), static_cast<std::size_t>(from), static_cast<std::size_t>(b - from + 1));
  } else {
    for (Index i = from; i <= b; ++i) out.push_back(xi_at(i));
  }
  return out;
}

XiTape::XiTape(int n) : n_(n), word_(build_omega(n)) {}

std::uint64_t XiTape::bits(std::int64_t start, unsigned count) const noexcept {
  if (start >= 0) return word_.extract(static_cast<std::size_t>(start), count);
  const std::int64_t end = start + static_cast<std::int64_t>(count);
  if (end <= 0) return 0;
  const unsigned skip = static_cast<unsigned>(-start);
  return word_.extract(0, static_cast<unsigned>(end)) << skip;
}

std::shared_ptr<const XiTape> xi_tape(Index min_length) {
  std::lock_guard<std::mutex> lock(g_tape_mutex);
  if (g_tape && g_tape->covers(min_length)) return g_tape;
  const int n = min_length <= 1 ? 1 : enclosing_omega(min_length - 1);
  const Index len = omega_length(n);
  const std::int64_t cap = materialize_cap();
  if (len > cap) {
    throw CapExceeded("covering " + to_string(min_length) + " symbols of xi needs omega_" + std::to_string(n) +
                      " (" + to_string(len) + " symbols), above the cap of " + std::to_string(cap));
  }
  g_tape = std::make_shared<const XiTape>(n);
  return g_tape;
}

int XiReader::at(Index i) const {
  if (i < 0) return 0;
  if (tape_ && tape_->covers(i + 1)) return tape_->at(static_cast<std::int64_t>(i));
  return xi_at(i);
}

std::uint64_t XiReader::bits(Index start, unsigned count) const {
  if (count == 0) return 0;
  const Index end = start + count;
  if (end <= 0) return 0;
  if (tape_ && tape_->covers(end)) return tape_->bits(static_cast<std::int64_t>(start), count);
  std::uint64_t out = 0;
  for (unsigned j = 0; j < count; ++j) {
    if (xi_at(start + j)) out |= std::uint64_t{1} << j;
  }
  return out;
}

}  // namespace recurshift
