// Acceptance suite: one PASS/FAIL line per criterion, with wall time against
// its budget. Everything runs on one thread so the budgets are meaningful on
// any machine. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "relbps/arith.hpp"
#include "relbps/congruence.hpp"
#include "relbps/dtlink.hpp"
#include "relbps/matrices.hpp"
#include "relbps/series.hpp"

using namespace relbps;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;  // 0 means no time limit
  std::function<Verdict()> body;
};

bool is_identity(const DivisorMatrix& m) { return m.same_entries(DivisorMatrix::identity(m.size())); }

Verdict c_integrality() {
  std::int64_t non_integral = 0, bad_det = 0, bad_inverse = 0;
  for (std::int64_t w = 2; w <= 12; ++w) {
    const auto c = build_C(CMethod::ClosedForm, 60, w);
    if (!is_integral(c)) ++non_integral;
    if (determinant(c) != 1) ++bad_det;
    const auto inv = triangular_inverse(c);
    if (!is_integral(inv) || !is_identity(multiply(c, inv))) ++bad_inverse;
  }
  std::ostringstream os;
  os << "N=60, w=2..12: non-integral C " << non_integral << ", det != 1 " << bad_det
     << ", bad inverse " << bad_inverse;
  return {non_integral == 0 && bad_det == 0 && bad_inverse == 0, os.str()};
}

Verdict method_agreement() {
  std::int64_t mismatches = 0, entries = 0;
  for (std::int64_t w = 2; w <= 12; ++w) {
    const auto closed = build_C(CMethod::ClosedForm, 60, w);
    const auto product = build_C(CMethod::Product, 60, w);
    entries += static_cast<std::int64_t>(closed.stored_entries());
    for (std::int64_t s = 1; s <= 60; ++s)
      for (std::int64_t t : divisors(s))
        if (closed.at(s, t) != product.at(s, t)) ++mismatches;
  }
  return {mismatches == 0,
          std::to_string(entries) + " entries compared, " + std::to_string(mismatches) + " mismatches"};
}

Verdict pipeline_integrality() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> value(-1'000'000, 1'000'000);
  std::uniform_int_distribution<std::int64_t> pick_w(2, 9);
  const std::size_t n = 24;
  int forward_failures = 0, backward_failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t w = pick_w(rng);
    std::vector<Rational> data(n);
    for (auto& x : data) x = value(rng);

    const auto rel = pipeline_local_bps_to_relative_bps(InvariantSequence(SequenceKind::LocalBPS, w, data));
    if (!std::all_of(rel.values().begin(), rel.values().end(), [](const Rational& q) { return is_integral(q); }))
      ++forward_failures;

    const auto local = pipeline_relative_bps_to_local_bps(InvariantSequence(SequenceKind::RelativeBPS, w, data));
    for (std::size_t d = 1; d <= n; ++d) {
      if (!is_integral(Rational(local.degree(static_cast<std::int64_t>(d)) * static_cast<long>(d * w)))) {
        ++backward_failures;
        break;
      }
    }
  }
  return {forward_failures == 0 && backward_failures == 0,
          "100 trials each way, N=24, w=2..9: local->relative failures " + std::to_string(forward_failures) +
              ", relative->local (dw scaled) failures " + std::to_string(backward_failures)};
}

Verdict summarize(const CongruenceReport& r) {
  std::int64_t side = 0;
  for (const auto& [name, count] : r.side_check_failures) side += count;
  std::string detail = r.grid + ": " + std::to_string(r.total_cases) + " cases, " +
                       std::to_string(r.failures.size()) + " failures";
  if (!r.side_check_failures.empty()) detail += ", side-check failures " + std::to_string(side);
  return {r.passed(), detail};
}

Verdict peng_grid() { return summarize(run_peng_grid(PengGrid{}, 1)); }

Verdict special_grid() { return summarize(run_special_grid(SpecialGrid{}, 1)); }

Verdict divisibility_grid() { return summarize(run_divisibility_grid(DivisibilityGrid{}, 1)); }

Verdict mobius_machinery() {
  const auto lt = build_matrix(MatrixKind::Ltilde, 200, 1);
  const auto inv = build_matrix(MatrixKind::LtildeInv, 200, 1);
  const bool identity = is_identity(multiply(lt, inv)) && is_identity(multiply(inv, lt));

  std::int64_t bad_sums = 0;
  for (std::int64_t n = 1; n <= 10'000; ++n) {
    int sum = 0;
    for (std::int64_t d : divisors(n)) sum += mobius(d);
    if (sum != (n == 1 ? 1 : 0)) ++bad_sums;
  }

  std::int64_t bad_partitions = 0, partitions = 0;
  for (std::int64_t t : {1, 2, 3, 5}) {
    for (std::int64_t q = 2; q <= 500; ++q) {
      const auto target = squarefree_cofactor_divisors(q);
      for (const auto& [p, alpha] : factorize(q).factors()) {
        std::vector<std::int64_t> united;
        for (const auto& pair : regroup(q * t, t, 1, p)) {
          united.push_back(pair.low);
          united.push_back(pair.high);
        }
        std::sort(united.begin(), united.end());
        ++partitions;
        if (united != target) ++bad_partitions;
      }
    }
  }
  std::ostringstream os;
  os << "L~ L~^-1 = I at N=200: " << (identity ? "yes" : "no") << "; Mobius sums n<=1e4 wrong: " << bad_sums
     << "; regroup partitions checked " << partitions << ", wrong " << bad_partitions;
  return {identity && bad_sums == 0 && bad_partitions == 0, os.str()};
}

Verdict round_trips() {
  std::mt19937_64 rng(8128);
  std::uniform_int_distribution<long> num(-1'000'000, 1'000'000);
  std::uniform_int_distribution<long> den(1, 1000);
  int failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::int64_t w = 1 + trial % 12;
    std::vector<Rational> data(100);
    for (auto& x : data) {
      x = Rational(num(rng), den(rng));
      x.canonicalize();
    }
    const InvariantSequence lb(SequenceKind::LocalBPS, w, data), lg(SequenceKind::LocalGW, w, data);
    const InvariantSequence rb(SequenceKind::RelativeBPS, w, data), rg(SequenceKind::RelativeGW, w, data);
    const bool ok = local_gw_to_bps(local_bps_to_gw(lb)) == lb && local_bps_to_gw(local_gw_to_bps(lg)) == lg &&
                    relative_gw_to_bps(relative_bps_to_gw(rb)) == rb &&
                    relative_bps_to_gw(relative_gw_to_bps(rg)) == rg;
    if (!ok) ++failures;
  }
  return {failures == 0, "50 sequences, N=100, w=1..12, four round trips each: " + std::to_string(failures) +
                             " failures"};
}

Verdict dt_consistency() {
  const auto scan = dt_scan(60, 40, 1);
  std::ostringstream os;
  os << scan.realizations_checked << " realizations, " << scan.values.size() << " (n, m) values; conflicts "
     << scan.conflicts.size() << ", non-integral " << scan.non_integral.size() << "; negative values "
     << scan.negative.size() << " (monitored)";
  return {scan.consistent(), os.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "C integral, det 1, integral inverse", 60, c_integrality},
      {2, "closed form equals product construction", 0, method_agreement},
      {3, "pipeline integrality in both directions", 5, pipeline_integrality},
      {4, "prime-power binomial congruence grid", 30, peng_grid},
      {5, "mod 4 congruence grid", 10, special_grid},
      {6, "f(l) divisibility and route agreement", 0, divisibility_grid},
      {7, "Mobius inversion machinery", 0, mobius_machinery},
      {8, "transform round trips", 0, round_trips},
      {9, "DT values well defined", 0, dt_consistency},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_seconds == 0 || seconds < c.budget_seconds;
    const bool pass = v.ok && in_time;
    if (!pass) ++failed;

    char timing[64];
    if (c.budget_seconds > 0)
      std::snprintf(timing, sizeof timing, "%.2fs / limit %.0fs", seconds, c.budget_seconds);
    else
      std::snprintf(timing, sizeof timing, "%.2fs", seconds);
    std::printf("[%s] criterion %d: %s (%s) %s%s\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), timing,
                v.detail.c_str(), in_time ? "" : " [over time limit]");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
