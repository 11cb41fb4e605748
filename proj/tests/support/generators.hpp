#pragma once

// Seeded random generators for property tests. Every test constructs its own Gen with a
// fixed seed so failures reproduce exactly.

#include <cstdint>
#include <random>
#include <vector>

#include "bdshift/algebra.hpp"
#include "bdshift/derivations.hpp"
#include "bdshift/profinite.hpp"
#include "bdshift/sequences.hpp"

namespace bdshift::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(xs.size()) - 1))];
  }

  Rational rational() { return make_rational(integer(-3, 3), integer(1, 3)); }

  /// Small Gaussian rational; real about half of the time.
  Scalar scalar() { return coin() ? Scalar(rational()) : Scalar(rational(), rational()); }

  Scalar nonzero_scalar() {
    for (;;) {
      Scalar s = scalar();
      if (!s.is_zero()) return s;
    }
  }

  LocallyConstantFunction lcf(std::int64_t period) {
    std::vector<Scalar> v;
    for (std::int64_t i = 0; i < period; ++i) v.push_back(scalar());
    return LocallyConstantFunction(std::move(v));
  }

  LocallyConstantFunction mean_zero_lcf(std::int64_t period) {
    std::vector<Scalar> v;
    Scalar sum;
    for (std::int64_t i = 0; i + 1 < period; ++i) {
      v.push_back(scalar());
      sum += v.back();
    }
    v.push_back(-sum);
    return LocallyConstantFunction(std::move(v));
  }

  Correction c00(std::int64_t max_support) {
    Correction c;
    const std::int64_t count = integer(0, 3);
    for (std::int64_t i = 0; i < count; ++i) c[integer(0, max_support - 1)] = scalar();
    return c;
  }

  EPSequence ep(const std::vector<std::int64_t>& periods, std::int64_t max_support = 8) {
    return EPSequence(c00(max_support), lcf(pick(periods)));
  }

  UnilateralElement unilateral(const std::vector<std::int64_t>& periods, std::int64_t max_degree = 4,
                               std::int64_t max_terms = 3) {
    UnilateralElement::Terms t;
    const std::int64_t count = integer(1, max_terms);
    for (std::int64_t i = 0; i < count; ++i) t[integer(-max_degree, max_degree)] = ep(periods);
    return UnilateralElement(std::move(t));
  }

  BilateralElement bilateral(const std::vector<std::int64_t>& periods, std::int64_t max_degree = 4,
                             std::int64_t max_terms = 3) {
    BilateralElement::Terms t;
    const std::int64_t count = integer(1, max_terms);
    for (std::int64_t i = 0; i < count; ++i) t[integer(-max_degree, max_degree)] = lcf(pick(periods));
    return BilateralElement(std::move(t));
  }

  /// Valid coefficient for degree n: linear part only outside the bounded regime.
  AffineSequence affine(std::int64_t n, const SupernaturalNumber& big_n, const std::vector<std::int64_t>& periods) {
    const Scalar linear = is_bounded_regime(n, big_n) ? Scalar(0) : scalar();
    return AffineSequence(linear, ep(periods));
  }

  DerivationSum derivation(const SupernaturalNumber& big_n, const std::vector<std::int64_t>& periods,
                           std::int64_t max_degree = 3) {
    DerivationSum::Components c;
    const std::int64_t count = integer(1, 3);
    for (std::int64_t i = 0; i < count; ++i) {
      const std::int64_t n = integer(-max_degree, max_degree);
      c[n] = affine(n, big_n, periods);
    }
    return DerivationSum(big_n, std::move(c));
  }

  LaurentPolynomial laurent(std::int64_t max_power = 2) {
    LaurentPolynomial::Coefficients c;
    const std::int64_t count = integer(1, 3);
    for (std::int64_t i = 0; i < count; ++i) c[integer(-max_power, max_power)] = nonzero_scalar();
    return LaurentPolynomial(std::move(c));
  }

  MatrixTrigPoly matrix(std::int64_t size, std::int64_t max_power = 2) {
    MatrixTrigPoly m(size);
    for (std::int64_t r = 0; r < size; ++r) {
      for (std::int64_t c = 0; c < size; ++c) {
        if (coin(0.6)) m.at(r, c) = laurent(max_power);
      }
    }
    return m;
  }

 private:
  std::mt19937_64 rng_;
};

/// Periods available below a bound for the given modulus.
inline std::vector<std::int64_t> periods_of(const SupernaturalNumber& n, std::int64_t bound = 12) {
  return finite_divisors(n, bound);
}

}  // namespace bdshift::testing
