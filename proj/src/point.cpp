#include "recurshift/point.hpp"

#include <stdexcept>

#include "recurshift/errors.hpp"

namespace recurshift {

PointDescriptor PointDescriptor::parse(std::string_view text) {
  if (text == "zero") return zero();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("point must be zero, xi:<n> or rxi:<n>, got '" + std::string(text) + "'");
  }
  const std::string_view head = text.substr(0, colon);
  Index n;
  try {
    n = parse_index(text.substr(colon + 1));
  } catch (const std::invalid_argument& e) {
    throw InvalidArgument("bad point offset in '" + std::string(text) + "': " + e.what());
  }
  if (head == "xi") return xi(n);
  if (head == "rxi") return reflected_xi(n);
  throw InvalidArgument("unknown point family '" + std::string(head) + "'");
}

std::string PointDescriptor::to_string() const {
  switch (kind) {
    case Kind::Zero:
      return "zero";
    case Kind::XiShift:
      return "xi:" + recurshift::to_string(offset);
    case Kind::XiReflectShift:
      return "rxi:" + recurshift::to_string(offset);
  }
  return "zero";
}

int point_at(const PointDescriptor& p, Index i) {
  switch (p.kind) {
    case PointDescriptor::Kind::Zero:
      return 0;
    case PointDescriptor::Kind::XiShift:
      return xi_at(checked_add(p.offset, i));
    case PointDescriptor::Kind::XiReflectShift:
      return xi_at(checked_sub(checked_neg(p.offset), i));
  }
  return 0;
}

PointDescriptor reflect(const PointDescriptor& p) {
  switch (p.kind) {
    case PointDescriptor::Kind::Zero:
      return p;
    case PointDescriptor::Kind::XiShift:
      return PointDescriptor::reflected_xi(checked_neg(p.offset));
    case PointDescriptor::Kind::XiReflectShift:
      return PointDescriptor::xi(checked_neg(p.offset));
  }
  return p;
}

PointDescriptor shift(const PointDescriptor& p, Index n) {
  if (p.kind == PointDescriptor::Kind::Zero) return p;
  // (T^n x)(i) = x(n + i); both families absorb n into their offset.
  return {p.kind, checked_add(p.offset, n)};
}

std::uint64_t reverse_bits(std::uint64_t v, unsigned count) noexcept {
  if (count == 0) return 0;
  v = ((v >> 1) & 0x5555555555555555ULL) | ((v & 0x5555555555555555ULL) << 1);
  v = ((v >> 2) & 0x3333333333333333ULL) | ((v & 0x3333333333333333ULL) << 2);
  v = ((v >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((v & 0x0F0F0F0F0F0F0F0FULL) << 4);
  v = ((v >> 8) & 0x00FF00FF00FF00FFULL) | ((v & 0x00FF00FF00FF00FFULL) << 8);
  v = ((v >> 16) & 0x0000FFFF0000FFFFULL) | ((v & 0x0000FFFF0000FFFFULL) << 16);
  v = (v >> 32) | (v << 32);
  return v >> (64 - count);
}

int PointReader::at(Index i) const {
  switch (p_.kind) {
    case PointDescriptor::Kind::Zero:
      return 0;
    case PointDescriptor::Kind::XiShift:
      return xi_.at(checked_add(p_.offset, i));
    case PointDescriptor::Kind::XiReflectShift:
      return xi_.at(checked_sub(checked_neg(p_.offset), i));
  }
  return 0;
}

std::uint64_t PointReader::bits(Index start, unsigned count) const {
  if (count == 0) return 0;
  switch (p_.kind) {
    case PointDescriptor::Kind::Zero:
      return 0;
    case PointDescriptor::Kind::XiShift:
      return xi_.bits(checked_add(p_.offset, start), count);
    case PointDescriptor::Kind::XiReflectShift: {
      // Coordinates start .. start+count-1 map to xi(-n-start) down to xi(-n-start-count+1).
      const Index lo = checked_sub(checked_sub(checked_neg(p_.offset), start), Index{count} - 1);
      return reverse_bits(xi_.bits(lo, count), count);
    }
  }
  return 0;
}

}  // namespace recurshift
