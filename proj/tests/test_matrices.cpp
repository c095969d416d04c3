#include <doctest.h>

#include "relbps/matrices.hpp"
#include "test_support.hpp"

using namespace relbps;
using relbps::testing::ratio;

namespace {

bool is_identity(const DivisorMatrix& m) {
  return m.same_entries(DivisorMatrix::identity(m.size()));
}

}  // namespace

TEST_CASE("build_matrix examples") {
  const auto lt = build_matrix(MatrixKind::Ltilde, 4, 1);
  CHECK(lt.at(4, 1) == 1);
  CHECK(lt.at(3, 2) == 0);
  CHECK(build_matrix(MatrixKind::LtildeInv, 4, 1).at(4, 1) == 0);
  CHECK(build_matrix(MatrixKind::LtildeInv, 6, 1).at(6, 1) == 1);
  CHECK(build_matrix(MatrixKind::LtildeInv, 6, 1).at(6, 2) == -1);
  CHECK(build_matrix(MatrixKind::R, 2, 3).at(2, 1) == Rational(3, 4));
  CHECK(build_matrix(MatrixKind::L, 4, 1).at(4, 2) == Rational(1, 8));
  CHECK(build_matrix(MatrixKind::B, 3, 1).at(3, 3) == Rational(1, 27));
  CHECK(build_matrix(MatrixKind::A, 3, 2).at(3, 3) == -6);
  CHECK(build_matrix(MatrixKind::A, 3, 3).at(3, 3) == 9);
}

TEST_CASE("build errors") {
  CHECK_THROWS_AS(build_matrix(MatrixKind::R, 0, 2), DomainError);
  CHECK_THROWS_AS(build_matrix(MatrixKind::R, 3, 0), DomainError);
  CHECK_THROWS_AS(build_matrix(MatrixKind::Custom, 3, 1), DomainError);
  CHECK_THROWS_AS(build_C(CMethod::ClosedForm, 0, 1), DomainError);
  CHECK_THROWS_AS(build_C(CMethod::Product, 4, 0), DomainError);
}

TEST_CASE("structural invariants of every kind") {
  for (auto kind : {MatrixKind::R, MatrixKind::A, MatrixKind::L, MatrixKind::B, MatrixKind::Ltilde,
                    MatrixKind::LtildeInv, MatrixKind::C}) {
    const auto m = build_matrix(kind, 40, 3);
    for (std::int64_t i = 1; i <= 40; ++i) {
      for (const auto& e : m.row(i)) {
        REQUIRE(e.col <= i);
        REQUIRE(i % e.col == 0);
      }
      if (kind == MatrixKind::A) {
        REQUIRE(m.at(i, i) == Rational(sign_power(3 * i + 1) * 3 * i));
      } else if (kind == MatrixKind::B) {
        REQUIRE(m.at(i, i) == Rational(Integer(1), Integer(i * i * i)));
      } else {
        REQUIRE(m.at(i, i) == 1);
      }
    }
  }
}

TEST_CASE("constructor rejects entries off the allowed support") {
  std::vector<std::vector<MatrixEntry>> upper(2);
  upper[0] = {{2, Rational(1)}};
  CHECK_THROWS_AS(DivisorMatrix(MatrixKind::Custom, 2, 1, upper), DimensionError);
  std::vector<std::vector<MatrixEntry>> off(3);
  off[2] = {{2, Rational(1)}, {3, Rational(1)}};
  CHECK_THROWS_AS(DivisorMatrix(MatrixKind::C, 3, 1, off), DomainError);
  CHECK_NOTHROW(DivisorMatrix(MatrixKind::Custom, 3, 1, off));
  CHECK_THROWS_AS(DivisorMatrix(MatrixKind::Custom, 3, 1, upper), DimensionError);
}

TEST_CASE("closed-form C entries") {
  for (std::int64_t w = 1; w <= 12; ++w)
    for (std::int64_t t = 1; t <= 30; ++t) REQUIRE(c_entry(t, t, w) == 1);
  CHECK(c_entry(2, 1, 3) == 1);
  CHECK(c_entry(4, 2, 3) == 2);
  CHECK(c_entry(3, 2, 3) == 0);
  CHECK(build_C(CMethod::ClosedForm, 4, 3).at(4, 2) == 2);
}

TEST_CASE("closed form agrees with the product factorization") {
  for (std::int64_t w = 1; w <= 12; ++w) {
    const auto closed = build_C(CMethod::ClosedForm, 60, w);
    const auto product = build_C(CMethod::Product, 60, w);
    REQUIRE(closed.same_entries(product));
    REQUIRE(closed.stored_entries() == product.stored_entries());
  }
}

TEST_CASE("C equals A L^-1 A^-1 R computed with generic inversion") {
  for (std::int64_t w = 1; w <= 6; ++w) {
    const std::int64_t n = 30;
    const auto a = build_matrix(MatrixKind::A, n, w);
    const auto route = multiply(multiply(multiply(a, triangular_inverse(build_matrix(MatrixKind::L, n, w))),
                                         triangular_inverse(a)),
                                build_matrix(MatrixKind::R, n, w));
    REQUIRE(route.same_entries(build_C(CMethod::ClosedForm, n, w)));
  }
}

TEST_CASE("L factors through the incidence matrix") {
  const std::int64_t n = 50;
  const auto b = build_matrix(MatrixKind::B, n, 1);
  const auto conj = multiply(multiply(b, build_matrix(MatrixKind::Ltilde, n, 1)), triangular_inverse(b));
  CHECK(conj.same_entries(build_matrix(MatrixKind::L, n, 1)));
}

TEST_CASE("Möbius inversion of the incidence matrix") {
  const auto lt = build_matrix(MatrixKind::Ltilde, 200, 1);
  const auto inv = build_matrix(MatrixKind::LtildeInv, 200, 1);
  CHECK(triangular_inverse(lt).same_entries(inv));
  CHECK(is_identity(multiply(lt, inv)));
  CHECK(is_identity(multiply(inv, lt)));

  std::vector<Rational> mu;
  for (std::int64_t j = 1; j <= 200; ++j) mu.push_back(Rational(mobius(j)));
  const auto e1 = relbps::apply(lt, mu);
  CHECK(e1[0] == 1);
  for (std::size_t i = 1; i < e1.size(); ++i) REQUIRE(e1[i] == 0);
}

TEST_CASE("determinants") {
  for (std::int64_t w = 1; w <= 12; ++w) {
    CHECK(determinant(build_matrix(MatrixKind::R, 25, w)) == 1);
    CHECK(determinant(build_C(CMethod::ClosedForm, 25, w)) == 1);
  }
  CHECK(determinant(build_matrix(MatrixKind::A, 2, 2)) == 8);
  CHECK(determinant(build_matrix(MatrixKind::B, 3, 1)) == Rational(1, 216));
}

TEST_CASE("triangular inverse") {
  CHECK(is_identity(triangular_inverse(DivisorMatrix::identity(7))));

  std::vector<std::vector<MatrixEntry>> rows(3);
  rows[0] = {{1, Rational(2)}};
  rows[1] = {{1, Rational(1)}, {2, Rational(0)}};
  rows[2] = {{3, Rational(1)}};
  CHECK_THROWS_AS(triangular_inverse(DivisorMatrix(MatrixKind::Custom, 3, 1, rows)), SingularMatrixError);

  // A dense lower-triangular matrix: check M * M^-1 = I.
  std::vector<std::vector<MatrixEntry>> dense(5);
  for (std::int64_t i = 1; i <= 5; ++i)
    for (std::int64_t j = 1; j <= i; ++j) dense[i - 1].push_back({j, ratio(i + 2 * j, j + 1)});
  const DivisorMatrix m(MatrixKind::Custom, 5, 1, dense);
  CHECK(is_identity(multiply(m, triangular_inverse(m))));
}

TEST_CASE("C and its inverse are integral for 2 <= w <= 12") {
  for (std::int64_t w = 2; w <= 12; ++w) {
    const auto c = build_C(CMethod::ClosedForm, 60, w);
    REQUIRE(is_integral(c));
    const auto inv = triangular_inverse(c);
    REQUIRE(is_integral(inv));
    REQUIRE(is_identity(multiply(c, inv)));
  }
}

TEST_CASE("C is zero off the divisor lattice") {
  for (std::int64_t w = 1; w <= 5; ++w) {
    const auto c = build_C(CMethod::Product, 40, w);
    for (std::int64_t s = 1; s <= 40; ++s)
      for (std::int64_t t = 1; t <= s; ++t)
        if (s % t != 0) REQUIRE(c.at(s, t) == 0);
  }
}

TEST_CASE("C entries depend only on s/t and tw") {
  for (std::int64_t s = 1; s <= 60; ++s)
    for (std::int64_t t : divisors(s))
      for (std::int64_t w = 1; t * w <= 24; ++w) {
        const std::int64_t q = s / t, tw = t * w;
        for (std::int64_t t2 : divisors(tw)) REQUIRE(c_entry(q * t2, t2, tw / t2) == c_entry(s, t, w));
      }
}

TEST_CASE("apply") {
  const std::vector<Rational> v{Rational(1), Rational(-2, 3), Rational(5)};
  CHECK((relbps::apply(DivisorMatrix::identity(3), v) == v));
  CHECK_THROWS_AS(relbps::apply(DivisorMatrix::identity(4), v), DimensionError);
  const auto lt = relbps::apply(build_matrix(MatrixKind::Ltilde, 3, 1), v);
  CHECK((lt == std::vector<Rational>{Rational(1), Rational(1, 3), Rational(6)}));
}
