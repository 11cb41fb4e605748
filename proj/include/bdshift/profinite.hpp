#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "bdshift/scalar.hpp"

namespace bdshift {

/// Formal product of prime powers with exponents in {1, 2, ..., infinity}.
/// Only finitely many primes are supported; the empty product is N = 1.
class SupernaturalNumber {
 public:
  static constexpr unsigned kInfinite = std::numeric_limits<unsigned>::max();

  SupernaturalNumber() = default;
  explicit SupernaturalNumber(std::map<std::uint64_t, unsigned> factors);

  static SupernaturalNumber finite(std::int64_t n);
  static SupernaturalNumber prime_power_infinite(std::uint64_t p);

  bool is_finite() const;
  /// The integer value; throws NotFinite for infinite N.
  std::int64_t value() const;
  unsigned exponent(std::uint64_t prime) const;
  const std::map<std::uint64_t, unsigned>& factors() const { return factors_; }

  friend bool operator==(const SupernaturalNumber&, const SupernaturalNumber&) = default;

 private:
  std::map<std::uint64_t, unsigned> factors_;
};

std::string to_string(const SupernaturalNumber& n);

std::map<std::uint64_t, unsigned> factorize(std::int64_t n);
bool divides(std::int64_t j, const SupernaturalNumber& n);
/// Throws PeriodNotDivisor unless j | N.
void require_divides(std::int64_t j, const SupernaturalNumber& n);
/// All j <= bound with j | N, ascending.
std::vector<std::int64_t> finite_divisors(const SupernaturalNumber& n, std::int64_t bound);
/// Non-negative x mod j.
std::int64_t floor_mod(std::int64_t x, std::int64_t j);

/// Ascending chain j_1 | j_2 | ... | j_m of finite divisors of N.
class DivisorChain {
 public:
  DivisorChain(std::vector<std::int64_t> levels, const SupernaturalNumber& n);

  const std::vector<std::int64_t>& levels() const { return levels_; }
  std::int64_t top() const { return levels_.back(); }
  std::size_t size() const { return levels_.size(); }

  friend bool operator==(const DivisorChain&, const DivisorChain&) = default;

 private:
  std::vector<std::int64_t> levels_;
};

/// Element of Z/NZ seen through a finite divisor chain.
class ProfiniteInteger {
 public:
  /// Validates ranges and the compatibility x_{i+1} mod j_i = x_i.
  ProfiniteInteger(DivisorChain chain, std::vector<std::int64_t> residues);

  const DivisorChain& chain() const { return chain_; }
  const std::vector<std::int64_t>& residues() const { return residues_; }

  ProfiniteInteger operator+(const ProfiniteInteger& o) const;
  ProfiniteInteger operator*(const ProfiniteInteger& o) const;
  ProfiniteInteger operator-() const;

  /// Residues modulo the prime-power parts of the top level (Chinese remainder split).
  std::map<std::uint64_t, std::int64_t> crt_components() const;

  friend bool operator==(const ProfiniteInteger&, const ProfiniteInteger&) = default;

 private:
  DivisorChain chain_;
  std::vector<std::int64_t> residues_;
};

ProfiniteInteger q_map(std::int64_t x, const DivisorChain& chain);
/// Inverse of the CRT split: the unique residue mod prod p^e.
std::int64_t crt_reconstruct(const std::map<std::uint64_t, std::int64_t>& residues,
                             const std::map<std::uint64_t, unsigned>& exponents);

/// Function on Z/NZ pulled back from Z/jZ; stored at its minimal period.
class LocallyConstantFunction {
 public:
  LocallyConstantFunction();  // the zero function
  /// Canonicalizes to the minimal period; does not check divisibility by N.
  explicit LocallyConstantFunction(std::vector<Scalar> values);
  static LocallyConstantFunction constant(Scalar c);
  /// e_j: indicator of j | x.
  static LocallyConstantFunction indicator(std::int64_t j);

  std::int64_t period() const { return static_cast<std::int64_t>(values_.size()); }
  const std::vector<Scalar>& values() const { return values_; }
  /// Value at the residue class of x (any integer).
  const Scalar& operator()(std::int64_t x) const { return values_[floor_mod(x, period())]; }
  /// Table lifted to a multiple of the period.
  std::vector<Scalar> table(std::int64_t length) const;

  bool is_zero() const;
  bool is_constant() const { return values_.size() == 1; }

  LocallyConstantFunction operator+(const LocallyConstantFunction& o) const;
  LocallyConstantFunction operator-(const LocallyConstantFunction& o) const;
  LocallyConstantFunction operator*(const LocallyConstantFunction& o) const;
  LocallyConstantFunction operator-() const;
  LocallyConstantFunction scaled(const Scalar& c) const;
  LocallyConstantFunction conj() const;

  friend bool operator==(const LocallyConstantFunction&, const LocallyConstantFunction&) = default;

 private:
  std::vector<Scalar> values_;
};

std::int64_t minimal_period(std::span<const Scalar> table);

/// Throws PeriodNotDivisor unless values.size() | N.
LocallyConstantFunction lcf_from_periodic(std::vector<Scalar> values, const SupernaturalNumber& n);
/// First `count` terms of k -> f(q(k)).
std::vector<Scalar> pullback_sequence(const LocallyConstantFunction& f, std::int64_t count);
Scalar haar_integral(const LocallyConstantFunction& f);
/// x -> f(x + t).
LocallyConstantFunction lcf_shift(const LocallyConstantFunction& f, std::int64_t t);
LocallyConstantFunction lcf_add(const LocallyConstantFunction& f, const LocallyConstantFunction& g,
                                const SupernaturalNumber& n);
LocallyConstantFunction lcf_mul(const LocallyConstantFunction& f, const LocallyConstantFunction& g,
                                const SupernaturalNumber& n);

}  // namespace bdshift
