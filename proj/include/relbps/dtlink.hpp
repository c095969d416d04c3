#pragma once

#include <cstdint>
#include <vector>

#include "relbps/arith.hpp"

namespace relbps {

/// DT_n^{(m)} of the m-loop quiver, read off as a C-matrix entry.
struct DTValue {
  std::int64_t n;
  std::int64_t m;
  Integer value;

  friend bool operator==(const DTValue&, const DTValue&) = default;
};

/// One (s, t, w) that realizes C_st = DT_{s/t}^{(tw-1)}.
struct Realization {
  std::int64_t s;
  std::int64_t t;
  std::int64_t w;
};

/// Two realizations of the same (n, m) that produced different entries.
struct DTConflict {
  std::int64_t n;
  std::int64_t m;
  Realization first;
  Integer first_value;
  Realization second;
  Integer second_value;
};

struct DTTable {
  /// Sorted by n, then m.
  std::vector<DTValue> values;
  std::vector<DTConflict> conflicts;
  /// Realizations whose entry was not an integer (expected: none).
  std::vector<Realization> non_integral;
  /// Entries below zero; recorded, not treated as errors.
  std::vector<DTValue> negative;
  std::int64_t realizations_checked = 0;

  bool consistent() const { return conflicts.empty() && non_integral.empty(); }
};

/// DT_{s/t}^{(tw-1)} = C_st. Requires t | s and tw >= 2.
DTValue dt_from_c(std::int64_t s, std::int64_t t, std::int64_t w);

/// All (n, m) with n <= n_max, m <= m_max, each checked over every realization
/// t | m + 1, w = (m + 1)/t, s = n t.
DTTable dt_table(std::int64_t n_max, std::int64_t m_max, unsigned jobs = 1);

/// Every (s, t, w) with t | s <= s_max and 2 <= tw <= tw_max, grouped by
/// (s/t, tw - 1).
DTTable dt_scan(std::int64_t s_max, std::int64_t tw_max, unsigned jobs = 1);

}  // namespace relbps
