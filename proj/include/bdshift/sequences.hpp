#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "bdshift/profinite.hpp"
#include "bdshift/scalar.hpp"

namespace bdshift {

using Correction = std::map<std::int64_t, Scalar>;

/// Eventually periodic sequence on k >= 0: a(k) = correction[k] + periodic(k).
/// Canonical: minimal period, no zero correction entries. Evaluates to 0 for k < 0.
class EPSequence {
 public:
  EPSequence() = default;
  EPSequence(Correction correction, LocallyConstantFunction periodic);

  static EPSequence constant(Scalar c);
  static EPSequence periodic(LocallyConstantFunction f);
  static EPSequence finite(Correction values);
  static EPSequence spike(std::int64_t k, Scalar value);
  /// a(k) = table[k mod j].
  static EPSequence from_table(std::vector<Scalar> table);

  Scalar operator()(std::int64_t k) const;

  const Correction& correction() const { return correction_; }
  const LocallyConstantFunction& periodic_part() const { return periodic_; }
  std::int64_t period() const { return periodic_.period(); }
  /// One past the largest correction key (0 when there is none).
  std::int64_t support_end() const;

  bool is_zero() const { return correction_.empty() && periodic_.is_zero(); }
  /// Finitely supported: the periodic part vanishes.
  bool is_c00() const { return periodic_.is_zero(); }

  EPSequence operator+(const EPSequence& o) const;
  EPSequence operator-(const EPSequence& o) const;
  EPSequence operator*(const EPSequence& o) const;
  EPSequence operator-() const { return scaled(Scalar(-1)); }
  EPSequence scaled(const Scalar& c) const;
  EPSequence conj() const;

  friend bool operator==(const EPSequence&, const EPSequence&) = default;

 private:
  Correction correction_;
  LocallyConstantFunction periodic_;
};

EPSequence ep_add(const EPSequence& a, const EPSequence& b, const SupernaturalNumber& n);
EPSequence ep_mul(const EPSequence& a, const EPSequence& b, const SupernaturalNumber& n);
/// k -> a(k + n), with a(m) = 0 for m < 0.
EPSequence ep_shift(const EPSequence& a, std::int64_t n);
std::pair<Correction, LocallyConstantFunction> ep_decompose(const EPSequence& a);
/// sup_k |a(k)|^2, exact.
Rational ep_supnorm_sq(const EPSequence& a);

/// beta(k) = C*(k+1) + ep(k); beta(-1) = 0.
class AffineSequence {
 public:
  AffineSequence() = default;
  AffineSequence(Scalar linear, EPSequence ep) : linear_(std::move(linear)), ep_(std::move(ep)) {}
  /// k -> k + 1.
  static AffineSequence label_plus_one() { return AffineSequence(Scalar(1), EPSequence()); }
  static AffineSequence bounded(EPSequence ep) { return AffineSequence(Scalar(0), std::move(ep)); }

  Scalar operator()(std::int64_t k) const;
  const Scalar& linear() const { return linear_; }
  const EPSequence& ep() const { return ep_; }
  bool is_bounded() const { return linear_.is_zero(); }
  bool is_zero() const { return linear_.is_zero() && ep_.is_zero(); }

  AffineSequence operator+(const AffineSequence& o) const { return {linear_ + o.linear_, ep_ + o.ep_}; }
  AffineSequence operator-(const AffineSequence& o) const { return {linear_ - o.linear_, ep_ - o.ep_}; }
  AffineSequence scaled(const Scalar& c) const { return {linear_ * c, ep_.scaled(c)}; }

  friend bool operator==(const AffineSequence&, const AffineSequence&) = default;

 private:
  Scalar linear_;
  EPSequence ep_;
};

/// beta(k) = sum_{i<=k} alpha(i).
AffineSequence partial_sums(const EPSequence& alpha);
/// alpha(k) = beta(k) - beta(k-1).
EPSequence increment(const AffineSequence& beta);

struct MeanDecomposition {
  Correction c00;
  Scalar mean;
  /// Mean-zero periodic part; its period divides the decomposition period.
  LocallyConstantFunction periodic;
  std::int64_t lift_period = 1;
};

/// alpha = c00 + mean + periodic with the periodic part summing to zero over N.
MeanDecomposition mean_decompose(const EPSequence& alpha, const SupernaturalNumber& n);
/// Same split using the period of alpha's periodic part (the infinite-N, n = 0 case).
MeanDecomposition mean_decompose(const EPSequence& alpha);

/// Eventually periodic sequence on Z: b(l) = correction[l] + periodic(l).
class BilateralEPSequence {
 public:
  BilateralEPSequence() = default;
  BilateralEPSequence(Correction correction, LocallyConstantFunction periodic);
  static BilateralEPSequence periodic(LocallyConstantFunction f) { return {{}, std::move(f)}; }
  static BilateralEPSequence constant(Scalar c) { return periodic(LocallyConstantFunction::constant(std::move(c))); }

  Scalar operator()(std::int64_t l) const;
  const Correction& correction() const { return correction_; }
  const LocallyConstantFunction& periodic_part() const { return periodic_; }
  std::int64_t period() const { return periodic_.period(); }
  bool is_zero() const { return correction_.empty() && periodic_.is_zero(); }
  bool is_c00() const { return periodic_.is_zero(); }

  BilateralEPSequence operator+(const BilateralEPSequence& o) const;
  BilateralEPSequence operator-(const BilateralEPSequence& o) const;
  BilateralEPSequence operator*(const BilateralEPSequence& o) const;
  BilateralEPSequence scaled(const Scalar& c) const;

  friend bool operator==(const BilateralEPSequence&, const BilateralEPSequence&) = default;

 private:
  Correction correction_;
  LocallyConstantFunction periodic_;
};

/// l -> b(l + n).
BilateralEPSequence bilateral_shift(const BilateralEPSequence& b, std::int64_t n);

/// eta(l) = C*l + ep(l).
class BilateralAffineSequence {
 public:
  BilateralAffineSequence() = default;
  BilateralAffineSequence(Scalar linear, BilateralEPSequence ep) : linear_(std::move(linear)), ep_(std::move(ep)) {}
  static BilateralAffineSequence label() { return {Scalar(1), BilateralEPSequence()}; }

  Scalar operator()(std::int64_t l) const;
  const Scalar& linear() const { return linear_; }
  const BilateralEPSequence& ep() const { return ep_; }
  bool is_bounded() const { return linear_.is_zero(); }

  BilateralAffineSequence operator+(const BilateralAffineSequence& o) const {
    return {linear_ + o.linear_, ep_ + o.ep_};
  }
  BilateralAffineSequence operator-(const BilateralAffineSequence& o) const {
    return {linear_ - o.linear_, ep_ - o.ep_};
  }
  BilateralAffineSequence scaled(const Scalar& c) const { return {linear_ * c, ep_.scaled(c)}; }

  friend bool operator==(const BilateralAffineSequence&, const BilateralAffineSequence&) = default;

 private:
  Scalar linear_;
  BilateralEPSequence ep_;
};

/// eta(l) - eta(l-1).
BilateralEPSequence bilateral_increment(const BilateralAffineSequence& eta);
/// Inverse of bilateral_increment anchored so that eta(l) = sum_{i=0}^{l} gamma(i) for l >= 0.
/// gamma must be correction-free.
BilateralAffineSequence bilateral_partial_sums(const BilateralEPSequence& gamma);

}  // namespace bdshift
