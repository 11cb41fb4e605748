#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "bdshift/profinite.hpp"
#include "bdshift/sequences.hpp"

namespace bdshift {

// Operators are encoded through their action on the canonical basis. A monomial
// of degree n maps E_k to w(k) E_{k+n}; w is its "column weight". For the
// unilateral normal form, U^n a(K) has weight a, and the negative-degree form
// a(K) (U*)^p (coefficient on the left) has weight k -> a(k - p), zero for k < p.

/// Element sum_{n>=0} U^n a_n(K) + sum_{n<0} a_n(K) (U*)^{-n} of the polynomial algebra.
class UnilateralElement {
 public:
  using Terms = std::map<std::int64_t, EPSequence>;

  UnilateralElement() = default;
  /// Drops zero coefficients.
  explicit UnilateralElement(Terms terms);

  static UnilateralElement identity();
  static UnilateralElement scalar(Scalar c);
  static UnilateralElement shift();          // U
  static UnilateralElement shift_adjoint();  // U*
  static UnilateralElement diagonal(EPSequence a);
  static UnilateralElement monomial(std::int64_t degree, EPSequence coefficient);
  /// Projection onto E_0.
  static UnilateralElement vacuum_projection();

  const Terms& terms() const { return terms_; }
  EPSequence coefficient(std::int64_t degree) const;
  std::int64_t max_abs_degree() const;
  bool is_zero() const { return terms_.empty(); }

  UnilateralElement operator+(const UnilateralElement& o) const;
  UnilateralElement operator-(const UnilateralElement& o) const;
  UnilateralElement operator-() const { return scaled(Scalar(-1)); }
  UnilateralElement operator*(const UnilateralElement& o) const;
  UnilateralElement scaled(const Scalar& c) const;

  friend bool operator==(const UnilateralElement&, const UnilateralElement&) = default;

 private:
  Terms terms_;
};

EPSequence column_weight(std::int64_t degree, const EPSequence& coefficient);
EPSequence coefficient_from_weight(std::int64_t degree, const EPSequence& weight);

UnilateralElement multiply(const UnilateralElement& a, const UnilateralElement& b);
UnilateralElement adjoint(const UnilateralElement& a);
UnilateralElement commutator(const UnilateralElement& x, const UnilateralElement& a);
UnilateralElement spectral_component(const UnilateralElement& a, std::int64_t n);
/// True iff every coefficient is finitely supported.
bool is_compact(const UnilateralElement& a);
/// Throws PeriodNotDivisor if some coefficient period does not divide N.
void require_periods_divide(const UnilateralElement& a, const SupernaturalNumber& n);

/// Element sum_n V^n b_n(L) of the bilateral polynomial algebra.
class BilateralElement {
 public:
  using Terms = std::map<std::int64_t, LocallyConstantFunction>;

  BilateralElement() = default;
  explicit BilateralElement(Terms terms);

  static BilateralElement identity();
  static BilateralElement scalar(Scalar c);
  static BilateralElement shift();          // V
  static BilateralElement shift_inverse();  // V^{-1}
  static BilateralElement diagonal(LocallyConstantFunction b);
  static BilateralElement monomial(std::int64_t degree, LocallyConstantFunction coefficient);

  const Terms& terms() const { return terms_; }
  LocallyConstantFunction coefficient(std::int64_t degree) const;
  std::int64_t max_abs_degree() const;
  bool is_zero() const { return terms_.empty(); }

  BilateralElement operator+(const BilateralElement& o) const;
  BilateralElement operator-(const BilateralElement& o) const;
  BilateralElement operator-() const { return scaled(Scalar(-1)); }
  BilateralElement operator*(const BilateralElement& o) const;
  BilateralElement scaled(const Scalar& c) const;

  friend bool operator==(const BilateralElement&, const BilateralElement&) = default;

 private:
  Terms terms_;
};

BilateralElement bilateral_multiply(const BilateralElement& a, const BilateralElement& b);
BilateralElement bilateral_adjoint(const BilateralElement& b);
BilateralElement bilateral_commutator(const BilateralElement& x, const BilateralElement& b);
BilateralElement bilateral_power(const BilateralElement& b, unsigned exponent);
void require_periods_divide(const BilateralElement& b, const SupernaturalNumber& n);

/// Image in the quotient by the compacts.
BilateralElement quotient(const UnilateralElement& a);
/// Compression to the non-negative half line.
UnilateralElement toeplitz(const BilateralElement& b);
/// toeplitz(b1 b2) - toeplitz(b1) toeplitz(b2); always compact.
UnilateralElement mult_defect(const BilateralElement& b1, const BilateralElement& b2);
/// P_sr = V^s e_N(L) V^{-r}, returned as units[s][r]. Requires finite N.
std::vector<std::vector<BilateralElement>> matrix_units(const SupernaturalNumber& n);

/// Finite Laurent polynomial sum_k c_k z^k.
class LaurentPolynomial {
 public:
  using Coefficients = std::map<std::int64_t, Scalar>;

  LaurentPolynomial() = default;
  explicit LaurentPolynomial(Coefficients c);
  static LaurentPolynomial monomial(std::int64_t power, Scalar c);

  const Coefficients& coefficients() const { return coeffs_; }
  Scalar coefficient(std::int64_t power) const;
  bool is_zero() const { return coeffs_.empty(); }

  LaurentPolynomial operator+(const LaurentPolynomial& o) const;
  LaurentPolynomial operator-(const LaurentPolynomial& o) const;
  LaurentPolynomial operator*(const LaurentPolynomial& o) const;
  LaurentPolynomial scaled(const Scalar& c) const;
  /// (1/i) d/dt at z = e^{it}: z^k -> k z^k.
  LaurentPolynomial angular_derivative() const;
  std::complex<double> evaluate(double t) const;

  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

 private:
  Coefficients coeffs_;
};

/// N x N matrix of Laurent polynomials in z, where z stands for V^N.
class MatrixTrigPoly {
 public:
  explicit MatrixTrigPoly(std::int64_t size = 1);
  static MatrixTrigPoly identity(std::int64_t size);
  static MatrixTrigPoly unit(std::int64_t size, std::int64_t row, std::int64_t col);

  std::int64_t size() const { return size_; }
  const LaurentPolynomial& at(std::int64_t row, std::int64_t col) const;
  LaurentPolynomial& at(std::int64_t row, std::int64_t col);

  bool is_zero() const;
  MatrixTrigPoly operator+(const MatrixTrigPoly& o) const;
  MatrixTrigPoly operator-(const MatrixTrigPoly& o) const;
  MatrixTrigPoly operator*(const MatrixTrigPoly& o) const;
  MatrixTrigPoly scaled(const Scalar& c) const;
  /// Multiplies every entry by a scalar Laurent polynomial.
  MatrixTrigPoly times(const LaurentPolynomial& p) const;

  friend bool operator==(const MatrixTrigPoly&, const MatrixTrigPoly&) = default;

 private:
  std::int64_t size_;
  std::vector<LaurentPolynomial> entries_;
};

MatrixTrigPoly matrix_commutator(const MatrixTrigPoly& a, const MatrixTrigPoly& b);
MatrixTrigPoly to_matrix_form(const BilateralElement& b, const SupernaturalNumber& n);
BilateralElement from_matrix_form(const MatrixTrigPoly& f);

}  // namespace bdshift
