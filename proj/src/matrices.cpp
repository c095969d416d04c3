#include "relbps/matrices.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "relbps/series.hpp"

namespace relbps {

namespace {

void require_size(std::int64_t n) {
  if (n < 1) throw DomainError("matrix size must be >= 1, got " + std::to_string(n));
}

void require_w(std::int64_t w) {
  if (w < 1) throw DomainError("w must be >= 1, got " + std::to_string(w));
}

std::vector<MatrixEntry> to_row(const std::map<std::int64_t, Rational>& acc) {
  std::vector<MatrixEntry> row;
  row.reserve(acc.size());
  for (const auto& [col, value] : acc)
    if (value != 0) row.push_back({col, value});
  return row;
}

// Rows populated by f(i, j) on every pair j | i.
template <typename F>
std::vector<std::vector<MatrixEntry>> divisor_rows(std::int64_t n, F&& f) {
  std::vector<std::vector<MatrixEntry>> rows(n);
  for (std::int64_t i = 1; i <= n; ++i)
    for (std::int64_t j : divisors(i)) rows[i - 1].push_back({j, f(i, j)});
  return rows;
}

std::vector<std::vector<MatrixEntry>> diagonal_rows(std::int64_t n, auto&& f) {
  std::vector<std::vector<MatrixEntry>> rows(n);
  for (std::int64_t i = 1; i <= n; ++i) rows[i - 1].push_back({i, f(i)});
  return rows;
}

Rational inverse_cube(std::int64_t q) { return Rational(1, 1) / Rational(power(q, 3)); }

}  // namespace

std::string_view to_string(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::R: return "R";
    case MatrixKind::A: return "A";
    case MatrixKind::L: return "L";
    case MatrixKind::B: return "B";
    case MatrixKind::Ltilde: return "Ltilde";
    case MatrixKind::LtildeInv: return "LtildeInv";
    case MatrixKind::C: return "C";
    case MatrixKind::Custom: return "Custom";
  }
  return "unknown";
}

bool divisor_supported(MatrixKind kind) {
  return kind != MatrixKind::Custom;
}

DivisorMatrix::DivisorMatrix(MatrixKind kind, std::int64_t size, std::int64_t w,
                             std::vector<std::vector<MatrixEntry>> rows)
    : kind_(kind), size_(size), w_(w), rows_(std::move(rows)) {
  require_size(size_);
  require_w(w_);
  if (static_cast<std::int64_t>(rows_.size()) != size_)
    throw DimensionError("expected " + std::to_string(size_) + " rows, got " +
                         std::to_string(rows_.size()));
  const bool divisor_only = divisor_supported(kind_);
  for (std::int64_t i = 1; i <= size_; ++i) {
    auto& r = rows_[i - 1];
    std::sort(r.begin(), r.end(),
              [](const MatrixEntry& a, const MatrixEntry& b) { return a.col < b.col; });
    for (std::size_t e = 0; e < r.size(); ++e) {
      const std::int64_t j = r[e].col;
      if (j < 1 || j > i)
        throw DimensionError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                             ") lies outside the lower triangle");
      if (e > 0 && r[e - 1].col == j)
        throw DimensionError("duplicate entry in row " + std::to_string(i));
      if (divisor_only && i % j != 0)
        throw DomainError(std::string(to_string(kind_)) + " entry (" + std::to_string(i) + ", " +
                          std::to_string(j) + ") violates divisor support");
    }
  }
}

DivisorMatrix DivisorMatrix::identity(std::int64_t size) {
  require_size(size);
  return {MatrixKind::Custom, size, 1, diagonal_rows(size, [](std::int64_t) { return Rational(1); })};
}

Rational DivisorMatrix::at(std::int64_t i, std::int64_t j) const {
  if (i < 1 || i > size_ || j < 1 || j > size_)
    throw DimensionError("index (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") outside 1.." + std::to_string(size_));
  const auto& r = rows_[i - 1];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const MatrixEntry& e, std::int64_t c) { return e.col < c; });
  if (it == r.end() || it->col != j) return Rational(0);
  return it->value;
}

std::span<const MatrixEntry> DivisorMatrix::row(std::int64_t i) const {
  if (i < 1 || i > size_) throw DimensionError("row " + std::to_string(i) + " out of range");
  return rows_[i - 1];
}

std::size_t DivisorMatrix::stored_entries() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

bool DivisorMatrix::same_entries(const DivisorMatrix& other) const {
  if (size_ != other.size_) return false;
  for (std::int64_t i = 1; i <= size_; ++i) {
    for (const auto& e : rows_[i - 1])
      if (other.at(i, e.col) != e.value) return false;
    for (const auto& e : other.rows_[i - 1])
      if (at(i, e.col) != e.value) return false;
  }
  return true;
}

DivisorMatrix build_matrix(MatrixKind kind, std::int64_t n, std::int64_t w) {
  require_size(n);
  require_w(w);
  switch (kind) {
    case MatrixKind::R:
      return {kind, n, w, divisor_rows(n, [w](std::int64_t i, std::int64_t j) {
                return multiple_cover_relative(i / j, j * w);
              })};
    case MatrixKind::A:
      return {kind, n, w,
              diagonal_rows(n, [w](std::int64_t i) { return Rational(bridge_factor(i, w)); })};
    case MatrixKind::L:
      return {kind, n, w,
              divisor_rows(n, [](std::int64_t i, std::int64_t j) { return inverse_cube(i / j); })};
    case MatrixKind::B:
      return {kind, n, w, diagonal_rows(n, inverse_cube)};
    case MatrixKind::Ltilde:
      return {kind, n, w,
              divisor_rows(n, [](std::int64_t, std::int64_t) { return Rational(1); })};
    case MatrixKind::LtildeInv: {
      std::vector<std::vector<MatrixEntry>> rows(n);
      for (std::int64_t i = 1; i <= n; ++i)
        for (std::int64_t j : squarefree_cofactor_divisors(i))
          rows[i - 1].push_back({j, Rational(sign_power(omega(i / j)))});
      return {kind, n, w, std::move(rows)};
    }
    case MatrixKind::C:
      return build_C(CMethod::ClosedForm, n, w);
    case MatrixKind::Custom:
      break;
  }
  throw DomainError("build_matrix: unsupported kind " + std::string(to_string(kind)));
}

Integer c_entry_numerator(std::int64_t s, std::int64_t t, std::int64_t w) {
  if (s < 1 || t < 1 || s % t != 0)
    throw DomainError("c_entry_numerator: requires t | s with s, t >= 1");
  require_w(w);
  const std::int64_t quotient = s / t;
  const std::int64_t tw = t * w;
  Integer sum = 0;
  for (std::int64_t k : squarefree_cofactor_divisors(quotient)) {
    const int sign = sign_power(omega(quotient / k)) * sign_power(k * tw);
    const Integer term = binomial(k * (tw - 1) - 1, k - 1);
    if (sign > 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

Rational c_entry(std::int64_t s, std::int64_t t, std::int64_t w) {
  if (s < 1 || t < 1) throw DomainError("c_entry: indices must be >= 1");
  require_w(w);
  if (s % t != 0) return Rational(0);
  const std::int64_t quotient = s / t;
  Rational out(c_entry_numerator(s, t, w));
  out /= Rational(power(quotient, 2));
  if (sign_power(s * w) < 0) out = -out;
  return out;
}

DivisorMatrix build_C(CMethod method, std::int64_t n, std::int64_t w) {
  require_size(n);
  require_w(w);
  if (method == CMethod::ClosedForm)
    return {MatrixKind::C, n, w,
            divisor_rows(n, [w](std::int64_t s, std::int64_t t) { return c_entry(s, t, w); })};

  const auto ab = multiply(build_matrix(MatrixKind::A, n, w), build_matrix(MatrixKind::B, n, w));
  const auto product =
      multiply(multiply(multiply(ab, build_matrix(MatrixKind::LtildeInv, n, w)),
                        triangular_inverse(ab)),
               build_matrix(MatrixKind::R, n, w));
  // Re-express on the full divisor pattern so both methods store the same cells.
  return {MatrixKind::C, n, w,
          divisor_rows(n, [&](std::int64_t s, std::int64_t t) { return product.at(s, t); })};
}

DivisorMatrix multiply(const DivisorMatrix& lhs, const DivisorMatrix& rhs) {
  if (lhs.size() != rhs.size())
    throw DimensionError("multiply: sizes " + std::to_string(lhs.size()) + " and " +
                         std::to_string(rhs.size()) + " differ");
  const std::int64_t n = lhs.size();
  std::vector<std::vector<MatrixEntry>> rows(n);
  for (std::int64_t i = 1; i <= n; ++i) {
    std::map<std::int64_t, Rational> acc;
    for (const auto& a : lhs.row(i)) {
      if (a.value == 0) continue;
      for (const auto& b : rhs.row(a.col)) acc[b.col] += a.value * b.value;
    }
    rows[i - 1] = to_row(acc);
  }
  return {MatrixKind::Custom, n, lhs.w(), std::move(rows)};
}

Rational determinant(const DivisorMatrix& m) {
  Rational det(1);
  for (std::int64_t i = 1; i <= m.size(); ++i) det *= m.at(i, i);
  return det;
}

DivisorMatrix triangular_inverse(const DivisorMatrix& m) {
  const std::int64_t n = m.size();
  std::vector<std::vector<MatrixEntry>> inv(n);
  // Row i of X = M^{-1} solves M_ii X_i = e_i - sum_{k < i} M_ik X_k.
  for (std::int64_t i = 1; i <= n; ++i) {
    const Rational diag = m.at(i, i);
    if (diag == 0) throw SingularMatrixError("zero diagonal entry at " + std::to_string(i));
    std::map<std::int64_t, Rational> acc;
    acc[i] = Rational(1);
    for (const auto& e : m.row(i)) {
      if (e.col == i || e.value == 0) continue;
      for (const auto& x : inv[e.col - 1]) acc[x.col] -= e.value * x.value;
    }
    for (auto& [col, value] : acc) value /= diag;
    inv[i - 1] = to_row(acc);
  }
  return {MatrixKind::Custom, n, m.w(), std::move(inv)};
}

std::vector<Rational> apply(const DivisorMatrix& m, std::span<const Rational> v) {
  if (static_cast<std::int64_t>(v.size()) != m.size())
    throw DimensionError("apply: vector length " + std::to_string(v.size()) +
                         " does not match matrix size " + std::to_string(m.size()));
  std::vector<Rational> out(v.size());
  for (std::int64_t i = 1; i <= m.size(); ++i)
    for (const auto& e : m.row(i)) out[i - 1] += e.value * v[e.col - 1];
  return out;
}

bool is_integral(const DivisorMatrix& m) {
  for (std::int64_t i = 1; i <= m.size(); ++i)
    for (const auto& e : m.row(i))
      if (!is_integral(e.value)) return false;
  return true;
}

}  // namespace relbps
