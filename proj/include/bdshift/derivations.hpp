#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "bdshift/algebra.hpp"
#include "bdshift/profinite.hpp"
#include "bdshift/sequences.hpp"

namespace bdshift {

/// f(t) = sum_j f_j e^{ijt} with finitely many nonzero f_j.
using LaurentFunction = LaurentPolynomial;

/// True when an n-covariant derivation must have a bounded coefficient:
/// N infinite and n != 0, or N finite and N does not divide n.
bool is_bounded_regime(std::int64_t n, const SupernaturalNumber& big_n);

/// d(a) = [U^n beta(K), a] for n >= 0 and [beta(K) (U*)^{-n}, a] for n < 0.
class CovariantDerivationData {
 public:
  CovariantDerivationData() = default;
  /// Validates; throws UnboundedCoefficient or PeriodNotDivisor.
  CovariantDerivationData(std::int64_t n, AffineSequence beta, SupernaturalNumber big_n);

  std::int64_t n() const { return n_; }
  const AffineSequence& beta() const { return beta_; }
  const SupernaturalNumber& modulus() const { return big_n_; }
  bool is_zero() const { return beta_.is_zero(); }

  friend bool operator==(const CovariantDerivationData&, const CovariantDerivationData&) = default;

 private:
  std::int64_t n_ = 0;
  AffineSequence beta_;
  SupernaturalNumber big_n_;
};

CovariantDerivationData covariant(std::int64_t n, AffineSequence beta, const SupernaturalNumber& big_n);
/// d_{n,K} = [U^n (K + I), .].
CovariantDerivationData d_nK(std::int64_t n, const SupernaturalNumber& big_n);

/// Finite sum of covariant components sharing one N.
class DerivationSum {
 public:
  using Components = std::map<std::int64_t, AffineSequence>;

  DerivationSum() = default;
  explicit DerivationSum(SupernaturalNumber big_n) : big_n_(std::move(big_n)) {}
  /// Validates each component; zero components are dropped.
  DerivationSum(SupernaturalNumber big_n, Components components);
  static DerivationSum single(const CovariantDerivationData& d);

  const SupernaturalNumber& modulus() const { return big_n_; }
  const Components& components() const { return components_; }
  CovariantDerivationData component(std::int64_t n) const;
  bool is_zero() const { return components_.empty(); }

  DerivationSum operator+(const DerivationSum& o) const;
  DerivationSum operator-(const DerivationSum& o) const;
  DerivationSum scaled(const Scalar& c) const;

  friend bool operator==(const DerivationSum&, const DerivationSum&) = default;

 private:
  SupernaturalNumber big_n_;
  Components components_;
};

/// The inner derivation [x, .].
DerivationSum from_inner(const UnilateralElement& x, const SupernaturalNumber& big_n);

/// Throws PeriodNotDivisor if a has a period not dividing N, InternalInvariant if unbounded
/// terms fail to cancel.
UnilateralElement apply(const CovariantDerivationData& d, const UnilateralElement& a);
UnilateralElement apply(const DerivationSum& d, const UnilateralElement& a);

CovariantDerivationData fourier_component(const DerivationSum& d, std::int64_t n);
/// sum over monomials a_m of a of the degree m + n part of d(a_m).
UnilateralElement fourier_of_image(const DerivationSum& d, std::int64_t n, const UnilateralElement& a);

/// Weight of component n in the Fejer mean of order M.
Rational fejer_weight(std::int64_t n, std::int64_t order);
DerivationSum fejer_mean(const DerivationSum& d, std::int64_t order);

struct Classification {
  Scalar linear;                     // C_n
  CovariantDerivationData inner_per;  // periodic bounded part
  CovariantDerivationData approx_c00; // eventually constant part
};

/// d_n = C_n d_{n,K} + inner_per + approx_c00. Throws RegimeMismatch in the bounded regime.
Classification classify(const CovariantDerivationData& d);
CovariantDerivationData reassemble(const Classification& c, std::int64_t n, const SupernaturalNumber& big_n);

/// sup_k |1 - (beta(k+1) - beta(k))|^2, exact.
Rational obstruction_gap(std::int64_t n, const SupernaturalNumber& big_n, const EPSequence& beta);

/// Components at n = jN with beta = (f_j / N)(k + 1). Throws NotFinite.
DerivationSum d_f_build(const LaurentFunction& f, const SupernaturalNumber& big_n);
/// T(f(V^N)) as a unilateral element.
UnilateralElement toeplitz_of_f(const LaurentFunction& f, std::int64_t big_n);
/// (1/N) T(f(V^N)) U.
UnilateralElement d_f_image_of_shift(const LaurentFunction& f, const SupernaturalNumber& big_n);
/// -(1/N) U* T(f(V^N)).
UnilateralElement d_f_image_of_shift_adjoint(const LaurentFunction& f, const SupernaturalNumber& big_n);

/// f_j = N C_{jN}. Throws NotFinite.
LaurentFunction extract_f(const DerivationSum& d);

/// Entrywise z^k -> k z^k followed by multiplication with f.
MatrixTrigPoly delta_f_apply(const LaurentFunction& f, const MatrixTrigPoly& m);

/// images[{r, s}] is delta(P_rs). Returns H = (1/N) sum_{r,s} delta(P_rs) P_sr so that
/// delta(A) = [H, A] on constant matrices. Throws NotDerivation on inconsistent images.
MatrixTrigPoly inner_part_H(const std::map<std::pair<std::int64_t, std::int64_t>, MatrixTrigPoly>& images,
                            std::int64_t big_n);

/// delta(b) = [V^n eta(L), b]; eta's periodic part is correction-free.
class BilateralCovariantData {
 public:
  BilateralCovariantData() = default;
  BilateralCovariantData(std::int64_t n, BilateralAffineSequence eta, SupernaturalNumber big_n);

  std::int64_t n() const { return n_; }
  const BilateralAffineSequence& eta() const { return eta_; }
  const SupernaturalNumber& modulus() const { return big_n_; }

  friend bool operator==(const BilateralCovariantData&, const BilateralCovariantData&) = default;

 private:
  std::int64_t n_ = 0;
  BilateralAffineSequence eta_;
  SupernaturalNumber big_n_;
};

class BilateralDerivationSum {
 public:
  using Components = std::map<std::int64_t, BilateralAffineSequence>;

  BilateralDerivationSum() = default;
  BilateralDerivationSum(SupernaturalNumber big_n, Components components);
  static BilateralDerivationSum single(const BilateralCovariantData& d);

  const SupernaturalNumber& modulus() const { return big_n_; }
  const Components& components() const { return components_; }
  bool is_zero() const { return components_.empty(); }

  friend bool operator==(const BilateralDerivationSum&, const BilateralDerivationSum&) = default;

 private:
  SupernaturalNumber big_n_;
  Components components_;
};

BilateralDerivationSum bilateral_from_inner(const BilateralElement& x, const SupernaturalNumber& big_n);
BilateralElement bilateral_apply(const BilateralCovariantData& d, const BilateralElement& b);
BilateralElement bilateral_apply(const BilateralDerivationSum& d, const BilateralElement& b);

/// The induced derivation on the quotient by the compacts.
BilateralCovariantData quotient_derivation(const CovariantDerivationData& d);
BilateralDerivationSum quotient_derivation(const DerivationSum& d);

/// Inner approximant built from the increments truncated at k <= M.
/// Throws RegimeMismatch unless the increment of beta is finitely supported.
DerivationSum approx_c00(const CovariantDerivationData& d, std::int64_t order);
/// sup-norm squared of the coefficient of apply(d - approx_c00(d, M), U).
Rational approx_c00_residual_sq(const CovariantDerivationData& d, std::int64_t order);

/// n = 0 datum with beta the partial sums of f. Throws NonzeroMean.
CovariantDerivationData approx_per(const LocallyConstantFunction& f, const SupernaturalNumber& big_n);

}  // namespace bdshift
