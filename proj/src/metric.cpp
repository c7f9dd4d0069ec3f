#include "recurshift/metric.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <stdexcept>

#include "recurshift/errors.hpp"

namespace recurshift {

namespace {

// Tape length requested for metric work: covers offsets of a few million.
constexpr Index kMetricTapeLength = Index{1} << 22;

std::int64_t parse_int64(std::string_view text) {
  const Index v = parse_index(text);
  if (!fits_int64(v)) throw InvalidArgument("exponent out of range: " + std::string(text));
  return static_cast<std::int64_t>(v);
}

std::int64_t exact_log2(std::string_view text) {
  const Index v = parse_index(text);
  if (v <= 0 || (v & (v - 1)) != 0) throw InvalidArgument("not a power of two: " + std::string(text));
  std::int64_t e = 0;
  for (Index t = v; t > 1; t >>= 1) ++e;
  return e;
}

std::vector<Index> flip_difference(const PerturbedPoint& x, const PerturbedPoint& y) {
  std::vector<Index> diff;
  std::set_symmetric_difference(x.flips().begin(), x.flips().end(), y.flips().begin(), y.flips().end(),
                                std::back_inserter(diff));
  return diff;
}

}  // namespace

Dyadic Dyadic::parse(std::string_view text) {
  try {
    if (text == "0") return zero();
    if (text.rfind("2^", 0) == 0) return pow2(parse_int64(text.substr(2)));
    if (text.rfind("1/", 0) == 0) return pow2(-exact_log2(text.substr(2)));
    return pow2(exact_log2(text));
  } catch (const std::invalid_argument& e) {
    throw InvalidArgument("bad dyadic '" + std::string(text) + "': " + e.what());
  }
}

Dyadic Dyadic::operator*(const Dyadic& other) const {
  if (zero_ || other.zero_) return zero();
  std::int64_t e;
  if (__builtin_add_overflow(exponent_, other.exponent_, &e)) throw CapacityExceeded("dyadic exponent overflow");
  return pow2(e);
}

Dyadic Dyadic::pow(std::int64_t k) const {
  if (k == 0) return pow2(0);
  if (zero_) return zero();
  std::int64_t e;
  if (__builtin_mul_overflow(exponent_, k, &e)) throw CapacityExceeded("dyadic exponent overflow");
  return pow2(e);
}

std::string Dyadic::to_string() const {
  if (zero_) return "0";
  if (exponent_ >= 0) {
    if (exponent_ < 126) return recurshift::to_string(Index{1} << exponent_);
    return "2^" + std::to_string(exponent_);
  }
  if (exponent_ > -126) return "1/" + recurshift::to_string(Index{1} << -exponent_);
  return "2^" + std::to_string(exponent_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) noexcept {
  if (a.zero_ || b.zero_) return b.zero_ <=> a.zero_;  // zero is the smallest value
  return a.exponent_ <=> b.exponent_;
}

PerturbedPoint::PerturbedPoint(PointDescriptor base, std::vector<Index> flips) : base_(base), flips_(std::move(flips)) {
  std::sort(flips_.begin(), flips_.end());
  // Flipping a coordinate twice restores it.
  std::vector<Index> odd;
  for (std::size_t k = 0; k < flips_.size();) {
    std::size_t run = k;
    while (run < flips_.size() && flips_[run] == flips_[k]) ++run;
    if ((run - k) % 2 == 1) odd.push_back(flips_[k]);
    k = run;
  }
  flips_ = std::move(odd);
}

PerturbedPoint PerturbedPoint::parse(std::string_view text) {
  const auto plus = text.find("+flip{");
  if (plus == std::string_view::npos) return PerturbedPoint(PointDescriptor::parse(text));
  if (text.back() != '}') throw InvalidArgument("bad point '" + std::string(text) + "'");
  std::string_view list = text.substr(plus + 6, text.size() - plus - 7);
  std::vector<Index> flips;
  while (!list.empty()) {
    const auto comma = list.find(',');
    const std::string_view item = list.substr(0, comma);
    try {
      flips.push_back(parse_index(item));
    } catch (const std::invalid_argument&) {
      throw InvalidArgument("bad flip coordinate '" + std::string(item) + "'");
    }
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return PerturbedPoint(PointDescriptor::parse(text.substr(0, plus)), std::move(flips));
}

int PerturbedPoint::at(Index i) const {
  const int base = point_at(base_, i);
  return std::binary_search(flips_.begin(), flips_.end(), i) ? 1 - base : base;
}

std::uint64_t PerturbedPoint::bits(Index start, unsigned count, const XiReader& xi) const {
  std::uint64_t out = PointReader(base_, xi).bits(start, count);
  const Index end = start + count;
  for (auto it = std::lower_bound(flips_.begin(), flips_.end(), start); it != flips_.end() && *it < end; ++it) {
    out ^= std::uint64_t{1} << static_cast<unsigned>(*it - start);
  }
  return out;
}

PerturbedPoint PerturbedPoint::shifted(Index n) const {
  std::vector<Index> moved;
  moved.reserve(flips_.size());
  for (Index f : flips_) moved.push_back(checked_sub(f, n));
  return PerturbedPoint(shift(base_, n), std::move(moved));
}

PerturbedPoint PerturbedPoint::with_flip(Index i) const {
  std::vector<Index> more = flips_;
  more.push_back(i);
  return PerturbedPoint(base_, std::move(more));
}

std::string PerturbedPoint::to_string() const {
  std::string out = base_.to_string();
  if (flips_.empty()) return out;
  out += "+flip{";
  for (std::size_t k = 0; k < flips_.size(); ++k) {
    if (k) out += ",";
    out += recurshift::to_string(flips_[k]);
  }
  return out + "}";
}

XiReader metric_reader() {
  try {
    return XiReader(xi_tape(kMetricTapeLength));
  } catch (const CapExceeded&) {
    return XiReader{};
  }
}

std::optional<Index> first_disagreement(const PerturbedPoint& x, const PerturbedPoint& y, Index resolution) {
  if (resolution < 0) throw InvalidArgument("resolution must be >= 0");
  const XiReader xi = metric_reader();
  // Chunk c covers |i| in [64c, 64c + 63] on the right and [64c + 1, 64c + 64] on the left.
  for (Index base = 0; base <= resolution; base += 64) {
    std::optional<Index> best;
    const std::uint64_t right = x.bits(base, 64, xi) ^ y.bits(base, 64, xi);
    if (right) best = base + std::countr_zero(right);
    const std::uint64_t left = x.bits(-base - 64, 64, xi) ^ y.bits(-base - 64, 64, xi);
    if (left) {
      const Index k = base + 64 - (63 - std::countl_zero(left));
      if (!best || k < *best) best = k;
    }
    if (best) {
      if (*best > resolution) return std::nullopt;
      return best;
    }
  }
  return std::nullopt;
}

MetricValue distance(const PerturbedPoint& x, const PerturbedPoint& y, Index resolution) {
  if (const auto k = first_disagreement(x, y, resolution)) {
    if (!fits_int64(*k)) throw CapacityExceeded("disagreement index too large for a dyadic exponent");
    return {Dyadic::pow2(-static_cast<std::int64_t>(*k)), true};
  }
  if (x.same_as(y)) return {Dyadic::zero(), true};
  if (!fits_int64(resolution)) throw CapacityExceeded("resolution too large for a dyadic exponent");
  return {Dyadic::pow2(-static_cast<std::int64_t>(resolution)), false};
}

bool in_local_set(const PerturbedPoint& x, const PerturbedPoint& y, std::int64_t e, Index steps, Index step) {
  if (e < 0) throw InvalidArgument("local sets need eps <= 1");
  if (steps < 0) throw InvalidArgument("step count must be >= 0");
  if (e == 0) return true;  // every distance is <= 1
  // d(T^n x, T^n y) <= 2^-e  iff  the shifted pair agrees on |i| <= e - 1.
  for (Index k = 0; k <= steps; ++k) {
    const Index n = checked_mul(k, step);
    if (first_disagreement(x.shifted(n), y.shifted(n), e - 1)) return false;
  }
  return true;
}

StableMembership stable_membership(const PerturbedPoint& x, const PerturbedPoint& y, std::int64_t e, Index horizon) {
  if (e < 0) throw InvalidArgument("epsilon must be 2^-e with e >= 0");
  if (horizon < 0) throw InvalidArgument("horizon must be >= 0");
  StableMembership out;
  out.by_definition = in_local_set(x, y, e, horizon, 1);

  // Cutoff form: agreement on the half-line i >= 1 - e, read coordinate-wise
  // over the window the definition touches, [1 - e, horizon + e - 1].
  out.cutoff = 1 - e;
  if (e == 0) {
    out.by_cutoff = true;
  } else {
    const XiReader xi = metric_reader();
    out.by_cutoff = true;
    const Index last = horizon + e - 1;
    for (Index start = out.cutoff; start <= last && out.by_cutoff; start += 64) {
      const unsigned n = static_cast<unsigned>(std::min<Index>(64, last - start + 1));
      out.by_cutoff = x.bits(start, n, xi) == y.bits(start, n, xi);
    }
  }
  if (out.by_cutoff != out.by_definition) {
    throw std::logic_error("stable-set definition and cutoff form disagree for " + x.to_string() + " / " +
                           y.to_string());
  }
  out.member = out.by_definition;

  const bool asymptotic = x.base() == y.base();
  const std::vector<Index> diff = flip_difference(x, y);
  if (!out.member || e == 0) {
    out.certified = true;
  } else if (asymptotic) {
    // Equal beyond the last flipped coordinate, so the finite check settles the half-line.
    out.certified = diff.empty() || diff.back() < out.cutoff;
  }
  if (asymptotic) {
    // y is in the global stable set; shifting past the last differing coordinate
    // lands T^n y in W^s_eps(T^n x).
    const Index n0 = diff.empty() ? Index{0} : std::max<Index>(0, diff.back() + e);
    out.decomposition_shift = n0;
    out.decomposition_ok = in_local_set(x.shifted(n0), y.shifted(n0), e, horizon, 1);
  }
  return out;
}

}  // namespace recurshift
