#include "bdshift/algebra.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "bdshift/error.hpp"

namespace bdshift {

namespace {

template <typename Terms>
Terms strip_zero_terms(Terms terms) {
  std::erase_if(terms, [](const auto& kv) { return kv.second.is_zero(); });
  return terms;
}

template <typename Terms>
std::int64_t max_abs_key(const Terms& terms) {
  std::int64_t d = 0;
  for (const auto& kv : terms) d = std::max(d, std::abs(kv.first));
  return d;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

// ---------------------------------------------------------------- unilateral

UnilateralElement::UnilateralElement(Terms terms) : terms_(strip_zero_terms(std::move(terms))) {}

UnilateralElement UnilateralElement::identity() { return scalar(Scalar(1)); }

UnilateralElement UnilateralElement::scalar(Scalar c) { return diagonal(EPSequence::constant(std::move(c))); }

UnilateralElement UnilateralElement::shift() { return monomial(1, EPSequence::constant(Scalar(1))); }

UnilateralElement UnilateralElement::shift_adjoint() { return monomial(-1, EPSequence::constant(Scalar(1))); }

UnilateralElement UnilateralElement::diagonal(EPSequence a) { return monomial(0, std::move(a)); }

UnilateralElement UnilateralElement::monomial(std::int64_t degree, EPSequence coefficient) {
  return UnilateralElement(Terms{{degree, std::move(coefficient)}});
}

UnilateralElement UnilateralElement::vacuum_projection() { return diagonal(EPSequence::spike(0, Scalar(1))); }

EPSequence UnilateralElement::coefficient(std::int64_t degree) const {
  auto it = terms_.find(degree);
  return it == terms_.end() ? EPSequence() : it->second;
}

std::int64_t UnilateralElement::max_abs_degree() const { return max_abs_key(terms_); }

UnilateralElement UnilateralElement::operator+(const UnilateralElement& o) const {
  Terms t = terms_;
  for (const auto& [n, c] : o.terms_) {
    auto [it, inserted] = t.emplace(n, c);
    if (!inserted) it->second = it->second + c;
  }
  return UnilateralElement(std::move(t));
}

UnilateralElement UnilateralElement::operator-(const UnilateralElement& o) const { return *this + (-o); }

UnilateralElement UnilateralElement::operator*(const UnilateralElement& o) const { return multiply(*this, o); }

UnilateralElement UnilateralElement::scaled(const Scalar& c) const {
  Terms t;
  for (const auto& [n, a] : terms_) t.emplace(n, a.scaled(c));
  return UnilateralElement(std::move(t));
}

EPSequence column_weight(std::int64_t degree, const EPSequence& coefficient) {
  return degree >= 0 ? coefficient : ep_shift(coefficient, degree);
}

EPSequence coefficient_from_weight(std::int64_t degree, const EPSequence& weight) {
  return degree >= 0 ? weight : ep_shift(weight, -degree);
}

UnilateralElement multiply(const UnilateralElement& a, const UnilateralElement& b) {
  // (XY) E_k = w_Y(k) w_X(k + m) E_{k+m+n}: this single composition rule covers
  // a(K)U = U a(K+I), U*U = I and the U^p c(K) (U*)^p = c(K-pI) chi_{>=p}(K) cutoff.
  std::vector<std::pair<std::int64_t, EPSequence>> wb;
  for (const auto& [m, c] : b.terms()) wb.emplace_back(m, column_weight(m, c));
  UnilateralElement::Terms out;
  for (const auto& [n, c] : a.terms()) {
    EPSequence wa = column_weight(n, c);
    for (const auto& [m, w] : wb) {
      EPSequence prod = w * ep_shift(wa, m);
      if (prod.is_zero()) continue;
      EPSequence coeff = coefficient_from_weight(n + m, prod);
      auto [it, inserted] = out.emplace(n + m, coeff);
      if (!inserted) it->second = it->second + coeff;
    }
  }
  return UnilateralElement(std::move(out));
}

UnilateralElement adjoint(const UnilateralElement& a) {
  UnilateralElement::Terms out;
  for (const auto& [n, c] : a.terms()) {
    EPSequence w = ep_shift(column_weight(n, c).conj(), -n);
    out.emplace(-n, coefficient_from_weight(-n, w));
  }
  return UnilateralElement(std::move(out));
}

UnilateralElement commutator(const UnilateralElement& x, const UnilateralElement& a) {
  return multiply(x, a) - multiply(a, x);
}

UnilateralElement spectral_component(const UnilateralElement& a, std::int64_t n) {
  auto it = a.terms().find(n);
  if (it == a.terms().end()) return {};
  return UnilateralElement::monomial(n, it->second);
}

bool is_compact(const UnilateralElement& a) {
  for (const auto& kv : a.terms()) {
    if (!kv.second.is_c00()) return false;
  }
  return true;
}

void require_periods_divide(const UnilateralElement& a, const SupernaturalNumber& n) {
  for (const auto& kv : a.terms()) require_divides(kv.second.period(), n);
}

// ----------------------------------------------------------------- bilateral

BilateralElement::BilateralElement(Terms terms) : terms_(strip_zero_terms(std::move(terms))) {}

BilateralElement BilateralElement::identity() { return scalar(Scalar(1)); }

BilateralElement BilateralElement::scalar(Scalar c) {
  return diagonal(LocallyConstantFunction::constant(std::move(c)));
}

BilateralElement BilateralElement::shift() { return monomial(1, LocallyConstantFunction::constant(Scalar(1))); }

BilateralElement BilateralElement::shift_inverse() {
  return monomial(-1, LocallyConstantFunction::constant(Scalar(1)));
}

BilateralElement BilateralElement::diagonal(LocallyConstantFunction b) { return monomial(0, std::move(b)); }

BilateralElement BilateralElement::monomial(std::int64_t degree, LocallyConstantFunction coefficient) {
  return BilateralElement(Terms{{degree, std::move(coefficient)}});
}

LocallyConstantFunction BilateralElement::coefficient(std::int64_t degree) const {
  auto it = terms_.find(degree);
  return it == terms_.end() ? LocallyConstantFunction() : it->second;
}

std::int64_t BilateralElement::max_abs_degree() const { return max_abs_key(terms_); }

BilateralElement BilateralElement::operator+(const BilateralElement& o) const {
  Terms t = terms_;
  for (const auto& [n, c] : o.terms_) {
    auto [it, inserted] = t.emplace(n, c);
    if (!inserted) it->second = it->second + c;
  }
  return BilateralElement(std::move(t));
}

BilateralElement BilateralElement::operator-(const BilateralElement& o) const { return *this + (-o); }

BilateralElement BilateralElement::operator*(const BilateralElement& o) const {
  return bilateral_multiply(*this, o);
}

BilateralElement BilateralElement::scaled(const Scalar& c) const {
  Terms t;
  for (const auto& [n, b] : terms_) t.emplace(n, b.scaled(c));
  return BilateralElement(std::move(t));
}

BilateralElement bilateral_multiply(const BilateralElement& a, const BilateralElement& b) {
  // V^n x(L) V^m y(L) = V^{n+m} x(L+m) y(L)
  BilateralElement::Terms out;
  for (const auto& [n, x] : a.terms()) {
    for (const auto& [m, y] : b.terms()) {
      LocallyConstantFunction c = lcf_shift(x, m) * y;
      auto [it, inserted] = out.emplace(n + m, c);
      if (!inserted) it->second = it->second + c;
    }
  }
  return BilateralElement(std::move(out));
}

BilateralElement bilateral_adjoint(const BilateralElement& b) {
  // (V^n b(L))* = b*(L) V^{-n} = V^{-n} b*(L - n)
  BilateralElement::Terms out;
  for (const auto& [n, c] : b.terms()) out.emplace(-n, lcf_shift(c.conj(), -n));
  return BilateralElement(std::move(out));
}

BilateralElement bilateral_commutator(const BilateralElement& x, const BilateralElement& b) {
  return bilateral_multiply(x, b) - bilateral_multiply(b, x);
}

BilateralElement bilateral_power(const BilateralElement& b, unsigned exponent) {
  BilateralElement out = BilateralElement::identity();
  for (unsigned k = 0; k < exponent; ++k) out = bilateral_multiply(out, b);
  return out;
}

void require_periods_divide(const BilateralElement& b, const SupernaturalNumber& n) {
  for (const auto& kv : b.terms()) require_divides(kv.second.period(), n);
}

BilateralElement quotient(const UnilateralElement& a) {
  BilateralElement::Terms out;
  for (const auto& [n, c] : a.terms()) {
    out.emplace(n, column_weight(n, c).periodic_part());
  }
  return BilateralElement(std::move(out));
}

UnilateralElement toeplitz(const BilateralElement& b) {
  // P V^n b(L) E_k = b(k) E_{k+n} when k + n >= 0.
  UnilateralElement::Terms out;
  for (const auto& [n, c] : b.terms()) {
    LocallyConstantFunction coeff = n >= 0 ? c : lcf_shift(c, -n);
    out.emplace(n, EPSequence::periodic(std::move(coeff)));
  }
  return UnilateralElement(std::move(out));
}

UnilateralElement mult_defect(const BilateralElement& b1, const BilateralElement& b2) {
  return toeplitz(bilateral_multiply(b1, b2)) - multiply(toeplitz(b1), toeplitz(b2));
}

std::vector<std::vector<BilateralElement>> matrix_units(const SupernaturalNumber& n) {
  const std::int64_t big_n = n.value();
  const BilateralElement e = BilateralElement::diagonal(LocallyConstantFunction::indicator(big_n));
  std::vector<std::vector<BilateralElement>> units(static_cast<std::size_t>(big_n));
  for (std::int64_t s = 0; s < big_n; ++s) {
    for (std::int64_t r = 0; r < big_n; ++r) {
      BilateralElement left = bilateral_power(BilateralElement::shift(), static_cast<unsigned>(s));
      BilateralElement right = bilateral_power(BilateralElement::shift_inverse(), static_cast<unsigned>(r));
      units[s].push_back(bilateral_multiply(bilateral_multiply(left, e), right));
    }
  }
  return units;
}

// ------------------------------------------------------------ matrix picture

LaurentPolynomial::LaurentPolynomial(Coefficients c) : coeffs_(strip_zero_terms(std::move(c))) {}

LaurentPolynomial LaurentPolynomial::monomial(std::int64_t power, Scalar c) {
  return LaurentPolynomial(Coefficients{{power, std::move(c)}});
}

Scalar LaurentPolynomial::coefficient(std::int64_t power) const {
  auto it = coeffs_.find(power);
  return it == coeffs_.end() ? Scalar(0) : it->second;
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
  Coefficients c = coeffs_;
  for (const auto& [k, v] : o.coeffs_) c[k] += v;
  return LaurentPolynomial(std::move(c));
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& o) const {
  Coefficients c = coeffs_;
  for (const auto& [k, v] : o.coeffs_) c[k] -= v;
  return LaurentPolynomial(std::move(c));
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
  Coefficients c;
  for (const auto& [k, v] : coeffs_) {
    for (const auto& [l, w] : o.coeffs_) c[k + l] += v * w;
  }
  return LaurentPolynomial(std::move(c));
}

LaurentPolynomial LaurentPolynomial::scaled(const Scalar& s) const {
  Coefficients c = coeffs_;
  for (auto& kv : c) kv.second *= s;
  return LaurentPolynomial(std::move(c));
}

LaurentPolynomial LaurentPolynomial::angular_derivative() const {
  Coefficients c = coeffs_;
  for (auto& [k, v] : c) v *= Scalar(k);
  return LaurentPolynomial(std::move(c));
}

std::complex<double> LaurentPolynomial::evaluate(double t) const {
  std::complex<double> sum = 0;
  for (const auto& [k, v] : coeffs_) sum += v.to_complex() * std::polar(1.0, static_cast<double>(k) * t);
  return sum;
}

MatrixTrigPoly::MatrixTrigPoly(std::int64_t size) : size_(size) {
  require(size >= 1, ErrorKind::InvalidArgument, "matrix size must be >= 1");
  entries_.resize(static_cast<std::size_t>(size * size));
}

MatrixTrigPoly MatrixTrigPoly::identity(std::int64_t size) {
  MatrixTrigPoly m(size);
  for (std::int64_t r = 0; r < size; ++r) m.at(r, r) = LaurentPolynomial::monomial(0, Scalar(1));
  return m;
}

MatrixTrigPoly MatrixTrigPoly::unit(std::int64_t size, std::int64_t row, std::int64_t col) {
  MatrixTrigPoly m(size);
  m.at(row, col) = LaurentPolynomial::monomial(0, Scalar(1));
  return m;
}

const LaurentPolynomial& MatrixTrigPoly::at(std::int64_t row, std::int64_t col) const {
  return entries_.at(static_cast<std::size_t>(row * size_ + col));
}

LaurentPolynomial& MatrixTrigPoly::at(std::int64_t row, std::int64_t col) {
  return entries_.at(static_cast<std::size_t>(row * size_ + col));
}

bool MatrixTrigPoly::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

MatrixTrigPoly MatrixTrigPoly::operator+(const MatrixTrigPoly& o) const {
  require(size_ == o.size_, ErrorKind::InvalidArgument, "matrix sizes differ");
  MatrixTrigPoly m(size_);
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = entries_[i] + o.entries_[i];
  return m;
}

MatrixTrigPoly MatrixTrigPoly::operator-(const MatrixTrigPoly& o) const {
  require(size_ == o.size_, ErrorKind::InvalidArgument, "matrix sizes differ");
  MatrixTrigPoly m(size_);
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = entries_[i] - o.entries_[i];
  return m;
}

MatrixTrigPoly MatrixTrigPoly::operator*(const MatrixTrigPoly& o) const {
  require(size_ == o.size_, ErrorKind::InvalidArgument, "matrix sizes differ");
  MatrixTrigPoly m(size_);
  for (std::int64_t r = 0; r < size_; ++r) {
    for (std::int64_t c = 0; c < size_; ++c) {
      LaurentPolynomial acc;
      for (std::int64_t t = 0; t < size_; ++t) {
        if (at(r, t).is_zero() || o.at(t, c).is_zero()) continue;
        acc = acc + at(r, t) * o.at(t, c);
      }
      m.at(r, c) = std::move(acc);
    }
  }
  return m;
}

MatrixTrigPoly MatrixTrigPoly::scaled(const Scalar& c) const {
  MatrixTrigPoly m(size_);
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = entries_[i].scaled(c);
  return m;
}

MatrixTrigPoly MatrixTrigPoly::times(const LaurentPolynomial& p) const {
  MatrixTrigPoly m(size_);
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = entries_[i] * p;
  return m;
}

MatrixTrigPoly matrix_commutator(const MatrixTrigPoly& a, const MatrixTrigPoly& b) { return a * b - b * a; }

MatrixTrigPoly to_matrix_form(const BilateralElement& b, const SupernaturalNumber& n) {
  const std::int64_t big_n = n.value();
  require_periods_divide(b, n);
  // Basis E_{kN+j} <-> z^k (x) e_j; V^n b(L) sends column j to row (j+n) mod N with z^{floor((j+n)/N)}.
  MatrixTrigPoly m(big_n);
  for (const auto& [deg, c] : b.terms()) {
    for (std::int64_t j = 0; j < big_n; ++j) {
      const Scalar& v = c(j);
      if (v.is_zero()) continue;
      std::int64_t row = floor_mod(j + deg, big_n);
      std::int64_t power = floor_div(j + deg, big_n);
      m.at(row, j) = m.at(row, j) + LaurentPolynomial::monomial(power, v);
    }
  }
  return m;
}

BilateralElement from_matrix_form(const MatrixTrigPoly& f) {
  const std::int64_t big_n = f.size();
  std::map<std::int64_t, std::vector<Scalar>> tables;
  for (std::int64_t row = 0; row < big_n; ++row) {
    for (std::int64_t col = 0; col < big_n; ++col) {
      for (const auto& [power, v] : f.at(row, col).coefficients()) {
        std::int64_t deg = power * big_n + row - col;
        auto [it, inserted] = tables.try_emplace(deg, static_cast<std::size_t>(big_n), Scalar(0));
        it->second[static_cast<std::size_t>(col)] = v;
      }
    }
  }
  BilateralElement::Terms terms;
  for (auto& [deg, table] : tables) terms.emplace(deg, LocallyConstantFunction(std::move(table)));
  return BilateralElement(std::move(terms));
}

}  // namespace bdshift
