#pragma once

// Finite sweeps over the structural statements about xi and the words omega_n.
//
//   "1"           reflection closure: factor sets are closed under reversal and
//                 reflect is an involution with reflect(p)(i) = p(-i)
//   "2a"          0 < m < n, xi(m..n) = 0..01  =>  xi(n .. n + l_{n-m} - 1) = omega_{n-m}
//   "2b"          0 < m < n, n - m > l_k + k   =>  xi(m..n) contains 0^{k-1}
//   "3"           a nonzero descriptor has unboundedly many 1s in [-H, H]
//   "4"           some m > 0 has xi(m .. m + k) = 0^k 1, found within l_{k+2}
//   "recurrence"  every descriptor of a family returns at every radius
//   "minimality"  gaps between 1s grow without bound while 0^L is a factor

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recurshift/index.hpp"
#include "recurshift/point.hpp"
#include "recurshift/report.hpp"

namespace recurshift {

using IndexTuple = std::vector<Index>;

struct ClaimParams {
  int n_max = 100;          // 2a: largest n; minimality: largest omega index
  int k_max = 8;            // 2b, 4
  int window_omega = 12;    // 2b: windows lie inside omega_{window_omega}
  std::optional<PointDescriptor> point;  // 3
  Index horizon = 0;        // 3: H (0 means l_10)
  int descriptor_radius = 10;            // recurrence: xi:n, rxi:n with |n| <= radius, plus zero
  int window_radius = 32;                // recurrence: N_max
  int horizon_n = 26;                    // recurrence: horizon l_{horizon_n}
  int length_max = 64;                   // minimality: zero words 0^L, L <= length_max
  int factor_length_max = 12;            // 1: factor lengths
  unsigned jobs = 1;
};

struct ClaimReport {
  std::string claim_id;
  Json parameters = Json::object();
  Status status = Status::Pass;
  std::vector<IndexTuple> witnesses;
  std::vector<IndexTuple> counterexamples;
  /// Cases a finite scan could not settle either way.
  std::vector<IndexTuple> unresolved;
  Json horizon = Json::object();
  Json counters = Json::object();
  std::vector<std::string> notes;

  Json to_json() const;
};

ClaimReport verify_reflection(int max_length, unsigned jobs = 1);
ClaimReport verify_claim_2a(int n_max);
ClaimReport verify_claim_2b(int k_max, int window_omega, unsigned jobs = 1);
/// Throws InvalidArgument for the zero descriptor.
ClaimReport verify_claim_3(const PointDescriptor& p, Index horizon);
ClaimReport verify_claim_4(int k_max);
ClaimReport verify_recurrence(int descriptor_radius, int window_radius, int horizon_n, unsigned jobs = 1);
ClaimReport verify_minimality(int n_max, int length_max);

/// Dispatches on "1", "2a", "2b", "3", "4", "recurrence", "minimality".
ClaimReport verify_claim(const std::string& claim_id, const ClaimParams& params);

/// Re-checks every witness tuple against xi_at / point_at. Claims without a
/// replay rule count as replayed.
bool replay_witnesses(const ClaimReport& report);

/// Descriptor codes used in recurrence witness tuples: 0 zero, 1 xi, 2 rxi.
Index descriptor_code(const PointDescriptor& p);
PointDescriptor descriptor_from_code(Index code, Index offset);

}  // namespace recurshift
