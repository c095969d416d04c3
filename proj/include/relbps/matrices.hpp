#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "relbps/arith.hpp"

namespace relbps {

/// R: relative multiple covers; A: diagonal (-1)^{iw+1} iw; L: local multiple
/// covers; B: diagonal 1/i^3; Ltilde: divisibility incidence; LtildeInv: its
/// Möbius inverse; C: relative-to-local BPS transformation.
enum class MatrixKind { R, A, L, B, Ltilde, LtildeInv, C, Custom };

std::string_view to_string(MatrixKind kind);

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct MatrixEntry {
  std::int64_t col;
  Rational value;
};

/// Sparse lower-triangular N x N matrix over Q with 1-based indices. Row i
/// stores its entries in ascending column order; absent entries are zero.
/// Immutable once built.
class DivisorMatrix {
 public:
  /// Builds from explicit rows; rows[i - 1] holds row i. Rejects entries above
  /// the diagonal, and off-divisor entries for divisor-supported kinds.
  DivisorMatrix(MatrixKind kind, std::int64_t size, std::int64_t w,
                std::vector<std::vector<MatrixEntry>> rows);

  static DivisorMatrix identity(std::int64_t size);

  MatrixKind kind() const { return kind_; }
  std::int64_t size() const { return size_; }
  std::int64_t w() const { return w_; }

  /// Entry (i, j); zero when not stored.
  Rational at(std::int64_t i, std::int64_t j) const;

  std::span<const MatrixEntry> row(std::int64_t i) const;

  std::size_t stored_entries() const;

  /// Entrywise equality of values, ignoring kind and which zeros are stored.
  bool same_entries(const DivisorMatrix& other) const;

 private:
  MatrixKind kind_;
  std::int64_t size_;
  std::int64_t w_;
  std::vector<std::vector<MatrixEntry>> rows_;
};

/// True for the kinds whose support is contained in {(i, j) : j | i}.
bool divisor_supported(MatrixKind kind);

DivisorMatrix build_matrix(MatrixKind kind, std::int64_t n, std::int64_t w);

enum class CMethod { ClosedForm, Product };

/// C_st for t | s from the closed form:
///   (-1)^{sw} / (s/t)^2 * sum_{k in I(s/t)} (-1)^{omega(s/kt)} (-1)^{ktw} binomial(k(tw-1)-1, k-1)
/// and 0 when t does not divide s.
Rational c_entry(std::int64_t s, std::int64_t t, std::int64_t w);

/// The unnormalized sum inside c_entry (everything after the (-1)^{sw}/(s/t)^2
/// prefactor). Requires t | s.
Integer c_entry_numerator(std::int64_t s, std::int64_t t, std::int64_t w);

/// ClosedForm evaluates c_entry on the divisor pattern; Product multiplies
/// AB * Ltilde^{-1} * (AB)^{-1} * R.
DivisorMatrix build_C(CMethod method, std::int64_t n, std::int64_t w);

DivisorMatrix multiply(const DivisorMatrix& lhs, const DivisorMatrix& rhs);

/// Product of the diagonal; every stored kind is triangular.
Rational determinant(const DivisorMatrix& m);

/// Exact inverse by forward substitution.
DivisorMatrix triangular_inverse(const DivisorMatrix& m);

std::vector<Rational> apply(const DivisorMatrix& m, std::span<const Rational> v);

/// True when every stored entry has denominator 1.
bool is_integral(const DivisorMatrix& m);

}  // namespace relbps
