#include <doctest.h>

#include "bdshift/algebra.hpp"
#include "bdshift/error.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace bdshift;
using namespace bdshift::testing;

namespace {

const std::vector<std::int64_t> kPeriods{1, 2, 3, 6};
const SupernaturalNumber kSix = SupernaturalNumber::finite(6);

LocallyConstantFunction lcf(std::initializer_list<std::int64_t> xs) {
  std::vector<Scalar> v;
  for (auto x : xs) v.emplace_back(x);
  return LocallyConstantFunction(std::move(v));
}

const UnilateralElement U = UnilateralElement::shift();
const UnilateralElement Us = UnilateralElement::shift_adjoint();
const UnilateralElement P0 = UnilateralElement::vacuum_projection();
const UnilateralElement I = UnilateralElement::identity();
const BilateralElement V = BilateralElement::shift();
const BilateralElement Vi = BilateralElement::shift_inverse();

}  // namespace

TEST_CASE("unilateral rewrite examples") {
  CHECK(Us * U == I);
  const auto uus = U * Us;
  CHECK(uus == I - P0);
  CHECK(uus.coefficient(0) == EPSequence(Correction{{0, Scalar(-1)}}, LocallyConstantFunction::constant(Scalar(1))));
  CHECK(compare(oracle(uus), oracle(U) * oracle(Us), 0, 8).empty());

  const auto parity = EPSequence::periodic(lcf({1, -1}));
  CHECK(UnilateralElement::diagonal(parity) * U == U * UnilateralElement::diagonal(ep_shift(parity, 1)));
  CHECK(adjoint(U) == Us);
  CHECK(commutator(U, Us) == -P0);
  CHECK(commutator(UnilateralElement::diagonal(parity), UnilateralElement::diagonal(EPSequence::spike(2, Scalar(3))))
            .is_zero());
  CHECK(spectral_component(U, 1) == U);
  CHECK(spectral_component(U, 0).is_zero());
  CHECK(is_compact(P0));
  CHECK_FALSE(is_compact(U));

  const auto ua = U * UnilateralElement::diagonal(EPSequence(Correction{{1, Scalar(2)}}, lcf({1, 0, 3})));
  CHECK(compare(oracle(adjoint(ua)), adjoint_of(oracle(ua)), 0, 16).empty());
}

TEST_CASE("products match the operator oracle") {
  Gen g(31);
  for (int t = 0; t < 150; ++t) {
    const auto a = g.unilateral(kPeriods);
    const auto b = g.unilateral(kPeriods);
    INFO("case " << t);
    CHECK(compare(oracle(a * b), oracle(a) * oracle(b), 0, 40) == "");
    CHECK(compare(oracle(adjoint(a)), adjoint_of(oracle(a)), 0, 40) == "");
    CHECK(compare(oracle(a + b), oracle(a) + oracle(b), 0, 40) == "");
  }
}

TEST_CASE("algebraic identities on random triples") {
  Gen g(32);
  for (int t = 0; t < 100; ++t) {
    const auto a = g.unilateral(kPeriods, 3);
    const auto b = g.unilateral(kPeriods, 3);
    const auto c = g.unilateral(kPeriods, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(adjoint(a * b) == adjoint(b) * adjoint(a));
    CHECK(adjoint(adjoint(a)) == a);
    CHECK(commutator(a, a).is_zero());

    UnilateralElement sum;
    for (std::int64_t n = -8; n <= 8; ++n) {
      sum = sum + spectral_component(a, n);
      UnilateralElement graded;
      for (std::int64_t p = -4; p <= 4; ++p) {
        graded = graded + spectral_component(a, p) * spectral_component(b, n - p);
      }
      CHECK(spectral_component(a * b, n) == graded);
    }
    CHECK(sum == a);
  }
}

TEST_CASE("quotient is a *-homomorphism killing compacts") {
  CHECK(quotient(P0).is_zero());
  CHECK(quotient(U) == V);
  CHECK(quotient(Us) == Vi);
  Gen g(33);
  for (int t = 0; t < 100; ++t) {
    const auto a = g.unilateral(kPeriods);
    const auto b = g.unilateral(kPeriods);
    CHECK(quotient(a * b) == quotient(a) * quotient(b));
    CHECK(quotient(adjoint(a)) == bilateral_adjoint(quotient(a)));
    CHECK(quotient(a).is_zero() == is_compact(a));
  }
}

TEST_CASE("bilateral products, Toeplitz compression and defects") {
  CHECK(V * Vi == BilateralElement::identity());
  const auto b = BilateralElement::diagonal(lcf({1, 2, 5}));
  CHECK(b * V == V * BilateralElement::diagonal(lcf_shift(lcf({1, 2, 5}), 1)));
  CHECK(toeplitz(V) == U);
  CHECK(toeplitz(Vi) == Us);
  CHECK(toeplitz(BilateralElement::identity()) == I);
  CHECK(toeplitz(b) == UnilateralElement::diagonal(EPSequence::periodic(lcf({1, 2, 5}))));
  CHECK(mult_defect(V, Vi) == P0);
  CHECK(mult_defect(bilateral_power(V, 2), bilateral_power(V, 3)).is_zero());

  Gen g(34);
  for (int t = 0; t < 100; ++t) {
    const auto x = g.bilateral(kPeriods);
    const auto y = g.bilateral(kPeriods);
    CHECK(compare(oracle(x * y), oracle(x) * oracle(y), -20, 20) == "");
    CHECK(compare(oracle(bilateral_adjoint(x)), adjoint_of(oracle(x)), -20, 20) == "");
    CHECK(is_compact(mult_defect(x, y)));
    CHECK(quotient(toeplitz(x)) == x);

    // T(b) is the compression P b P.
    const LazyOp bx = oracle(x);
    const LazyOp tx = oracle(toeplitz(x));
    for (std::int64_t i = 0; i < 20; ++i) {
      for (std::int64_t j = 0; j < 20; ++j) CHECK(tx(i, j) == bx(i, j));
    }
  }
}

TEST_CASE("matrix units") {
  CHECK_THROWS_AS(matrix_units(SupernaturalNumber::prime_power_infinite(2)), Error);
  for (std::int64_t n : {2, 3, 4, 6}) {
    const auto big_n = SupernaturalNumber::finite(n);
    const auto p = matrix_units(big_n);
    CHECK(p[0][0] == BilateralElement::diagonal(LocallyConstantFunction::indicator(n)));
    BilateralElement rebuilt;
    for (std::int64_t s = 0; s < n; ++s) {
      for (std::int64_t r = 0; r < n; ++r) {
        CHECK(bilateral_adjoint(p[s][r]) == p[r][s]);
        for (std::int64_t u = 0; u < n; ++u) {
          for (std::int64_t q = 0; q < n; ++q) {
            const auto expected = u == r ? p[s][q] : BilateralElement();
            CHECK(p[s][r] * p[u][q] == expected);
          }
        }
      }
    }
    for (std::int64_t s = 1; s < n; ++s) rebuilt = rebuilt + p[s][s - 1];
    rebuilt = rebuilt + bilateral_power(V, static_cast<unsigned>(n)) * p[0][n - 1];
    CHECK(rebuilt == V);
  }
}

TEST_CASE("matrix form is a multiplicative bijection") {
  const auto three = SupernaturalNumber::finite(3);
  const auto vn = to_matrix_form(bilateral_power(V, 3), three);
  CHECK(vn == MatrixTrigPoly::identity(3).times(LaurentPolynomial::monomial(1, Scalar(1))));
  CHECK(to_matrix_form(BilateralElement::diagonal(LocallyConstantFunction::indicator(3)), three) ==
        MatrixTrigPoly::unit(3, 0, 0));
  CHECK_THROWS_AS(to_matrix_form(V, SupernaturalNumber::prime_power_infinite(3)), Error);

  Gen g(35);
  for (std::int64_t n : {2, 3, 4}) {
    const auto big_n = SupernaturalNumber::finite(n);
    const auto periods = finite_divisors(big_n, n);
    for (int t = 0; t < 40; ++t) {
      const auto x = g.bilateral(periods);
      const auto y = g.bilateral(periods);
      CHECK(to_matrix_form(x * y, big_n) == to_matrix_form(x, big_n) * to_matrix_form(y, big_n));
      CHECK(from_matrix_form(to_matrix_form(x, big_n)) == x);
      const auto m = g.matrix(n);
      CHECK(to_matrix_form(from_matrix_form(m), big_n) == m);
    }
  }
}

TEST_CASE("period checks") {
  const auto a = UnilateralElement::diagonal(EPSequence::periodic(lcf({1, 2, 3})));
  CHECK_NOTHROW(require_periods_divide(a, kSix));
  CHECK_THROWS_AS(require_periods_divide(a, SupernaturalNumber::finite(4)), Error);
}
