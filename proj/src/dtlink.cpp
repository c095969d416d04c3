#include "relbps/dtlink.hpp"

#include <map>
#include <string>

#include "parallel.hpp"
#include "relbps/matrices.hpp"

namespace relbps {

namespace {

struct Evaluated {
  Realization where;
  Rational entry;
};

std::vector<Evaluated> evaluate(const std::vector<Realization>& points, unsigned jobs) {
  return detail::parallel_map<Evaluated>(points.size(), jobs, [&](std::size_t i) {
    return Evaluated{points[i], c_entry(points[i].s, points[i].t, points[i].w)};
  });
}

// Groups evaluated entries by (n, m) in the canonical (n, m) order.
DTTable tabulate(const std::vector<Evaluated>& evaluated) {
  DTTable table;
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> first_seen;
  std::map<std::pair<std::int64_t, std::int64_t>, DTValue> values;
  for (std::size_t i = 0; i < evaluated.size(); ++i) {
    const auto& [where, entry] = evaluated[i];
    ++table.realizations_checked;
    if (!is_integral(entry)) {
      table.non_integral.push_back(where);
      continue;
    }
    const std::pair key{where.s / where.t, where.t * where.w - 1};
    auto [it, inserted] = first_seen.emplace(key, i);
    if (inserted) {
      values.emplace(key, DTValue{key.first, key.second, entry.get_num()});
    } else if (evaluated[it->second].entry != entry) {
      table.conflicts.push_back({key.first, key.second, evaluated[it->second].where,
                                 evaluated[it->second].entry.get_num(), where, entry.get_num()});
    }
  }
  for (auto& [key, v] : values) {
    if (v.value < 0) table.negative.push_back(v);
    table.values.push_back(std::move(v));
  }
  return table;
}

}  // namespace

DTValue dt_from_c(std::int64_t s, std::int64_t t, std::int64_t w) {
  if (s < 1 || t < 1 || s % t != 0)
    throw DomainError("dt_from_c: requires t | s (s=" + std::to_string(s) + ", t=" +
                      std::to_string(t) + ")");
  if (w < 1 || t * w < 2) throw DomainError("dt_from_c: requires tw >= 2");
  const Rational entry = c_entry(s, t, w);
  if (!is_integral(entry))
    throw std::logic_error("C entry (" + std::to_string(s) + ", " + std::to_string(t) +
                           ") is not integral: " + entry.get_str());
  return {s / t, t * w - 1, entry.get_num()};
}

DTTable dt_table(std::int64_t n_max, std::int64_t m_max, unsigned jobs) {
  if (n_max < 1 || m_max < 1) throw DomainError("dt_table: n_max and m_max must be >= 1");
  std::vector<Realization> points;
  for (std::int64_t n = 1; n <= n_max; ++n)
    for (std::int64_t m = 1; m <= m_max; ++m)
      for (std::int64_t t : divisors(m + 1)) points.push_back({n * t, t, (m + 1) / t});
  return tabulate(evaluate(points, jobs));
}

DTTable dt_scan(std::int64_t s_max, std::int64_t tw_max, unsigned jobs) {
  if (s_max < 1 || tw_max < 2) throw DomainError("dt_scan: requires s_max >= 1, tw_max >= 2");
  std::vector<Realization> points;
  for (std::int64_t s = 1; s <= s_max; ++s)
    for (std::int64_t t : divisors(s))
      for (std::int64_t w = 1; t * w <= tw_max; ++w)
        if (t * w >= 2) points.push_back({s, t, w});
  return tabulate(evaluate(points, jobs));
}

}  // namespace relbps
