#include "bdshift/derivations.hpp"

#include <algorithm>

#include "bdshift/error.hpp"

namespace bdshift {

namespace {

/// k -> k * slope(k) + offset(k) on k >= 0, zero for k < 0. Carries the unbounded
/// part of a column weight through products until it cancels.
struct LinearEP {
  EPSequence slope;
  EPSequence offset;

  LinearEP shifted(std::int64_t t) const {
    EPSequence s = ep_shift(slope, t);
    return {s, s.scaled(Scalar(t)) + ep_shift(offset, t)};
  }
  LinearEP times(const EPSequence& e) const { return {slope * e, offset * e}; }
  LinearEP operator-(const LinearEP& o) const { return {slope - o.slope, offset - o.offset}; }

  EPSequence to_ep() const {
    require(slope.is_c00(), ErrorKind::InternalInvariant, "unbounded part of a derivation image did not cancel");
    Correction folded;
    for (const auto& [k, v] : slope.correction()) folded.emplace(k, v * Scalar(k));
    return offset + EPSequence::finite(std::move(folded));
  }
};

EPSequence at_least(std::int64_t p) {
  Correction c;
  for (std::int64_t k = 0; k < p; ++k) c.emplace(k, Scalar(-1));
  return {std::move(c), LocallyConstantFunction::constant(Scalar(1))};
}

LinearEP covariant_weight(std::int64_t n, const AffineSequence& beta) {
  const Scalar& c = beta.linear();
  if (n >= 0) return {EPSequence::constant(c), EPSequence::constant(c) + beta.ep()};
  const std::int64_t p = -n;
  EPSequence cut = at_least(p);
  return {cut.scaled(c), cut.scaled(c * Scalar(1 - p)) + ep_shift(beta.ep(), -p)};
}

void add_term(UnilateralElement::Terms& out, std::int64_t degree, const EPSequence& coeff) {
  auto [it, inserted] = out.emplace(degree, coeff);
  if (!inserted) it->second = it->second + coeff;
}

AffineSequence zero_affine() { return {}; }

}  // namespace

bool is_bounded_regime(std::int64_t n, const SupernaturalNumber& big_n) {
  if (!big_n.is_finite()) return n != 0;
  return n % big_n.value() != 0;
}

CovariantDerivationData::CovariantDerivationData(std::int64_t n, AffineSequence beta, SupernaturalNumber big_n)
    : n_(n), beta_(std::move(beta)), big_n_(std::move(big_n)) {
  if (is_bounded_regime(n_, big_n_)) {
    require(beta_.linear().is_zero(), ErrorKind::UnboundedCoefficient,
            "degree " + std::to_string(n_) + " with N = " + to_string(big_n_) + " needs a bounded coefficient");
  }
  require_divides(beta_.ep().period(), big_n_);
}

CovariantDerivationData covariant(std::int64_t n, AffineSequence beta, const SupernaturalNumber& big_n) {
  return {n, std::move(beta), big_n};
}

CovariantDerivationData d_nK(std::int64_t n, const SupernaturalNumber& big_n) {
  return {n, AffineSequence::label_plus_one(), big_n};
}

DerivationSum::DerivationSum(SupernaturalNumber big_n, Components components) : big_n_(std::move(big_n)) {
  for (auto& [n, beta] : components) {
    if (beta.is_zero()) continue;
    CovariantDerivationData check(n, beta, big_n_);
    components_.emplace(n, std::move(beta));
  }
}

DerivationSum DerivationSum::single(const CovariantDerivationData& d) {
  return DerivationSum(d.modulus(), Components{{d.n(), d.beta()}});
}

CovariantDerivationData DerivationSum::component(std::int64_t n) const {
  auto it = components_.find(n);
  return {n, it == components_.end() ? zero_affine() : it->second, big_n_};
}

DerivationSum DerivationSum::operator+(const DerivationSum& o) const {
  require(big_n_ == o.big_n_, ErrorKind::InvalidArgument, "derivations live over different N");
  Components c = components_;
  for (const auto& [n, beta] : o.components_) {
    auto [it, inserted] = c.emplace(n, beta);
    if (!inserted) it->second = it->second + beta;
  }
  return DerivationSum(big_n_, std::move(c));
}

DerivationSum DerivationSum::operator-(const DerivationSum& o) const { return *this + o.scaled(Scalar(-1)); }

DerivationSum DerivationSum::scaled(const Scalar& s) const {
  Components c;
  for (const auto& [n, beta] : components_) c.emplace(n, beta.scaled(s));
  return DerivationSum(big_n_, std::move(c));
}

DerivationSum from_inner(const UnilateralElement& x, const SupernaturalNumber& big_n) {
  DerivationSum::Components c;
  for (const auto& [n, coeff] : x.terms()) c.emplace(n, AffineSequence::bounded(coeff));
  return DerivationSum(big_n, std::move(c));
}

UnilateralElement apply(const CovariantDerivationData& d, const UnilateralElement& a) {
  require_periods_divide(a, d.modulus());
  const std::int64_t n = d.n();
  const LinearEP wx = covariant_weight(n, d.beta());
  UnilateralElement::Terms out;
  for (const auto& [m, coeff] : a.terms()) {
    EPSequence wy = column_weight(m, coeff);
    // [X, Y] E_k = (w_Y(k) W_X(k+m) - W_X(k) w_Y(k+n)) E_{k+n+m}
    LinearEP w = wx.shifted(m).times(wy) - wx.times(ep_shift(wy, n));
    add_term(out, n + m, coefficient_from_weight(n + m, w.to_ep()));
  }
  return UnilateralElement(std::move(out));
}

UnilateralElement apply(const DerivationSum& d, const UnilateralElement& a) {
  UnilateralElement out;
  for (const auto& [n, beta] : d.components()) out = out + apply(CovariantDerivationData(n, beta, d.modulus()), a);
  return out;
}

CovariantDerivationData fourier_component(const DerivationSum& d, std::int64_t n) { return d.component(n); }

UnilateralElement fourier_of_image(const DerivationSum& d, std::int64_t n, const UnilateralElement& a) {
  UnilateralElement out;
  for (const auto& [m, coeff] : a.terms()) {
    out = out + spectral_component(apply(d, UnilateralElement::monomial(m, coeff)), m + n);
  }
  return out;
}

Rational fejer_weight(std::int64_t n, std::int64_t order) {
  require(order >= 0, ErrorKind::InvalidArgument, "Fejer order must be >= 0");
  const std::int64_t num = order + 1 - std::abs(n);
  if (num <= 0) return 0;
  return make_rational(num, order + 1);
}

DerivationSum fejer_mean(const DerivationSum& d, std::int64_t order) {
  DerivationSum::Components c;
  for (const auto& [n, beta] : d.components()) {
    Rational w = fejer_weight(n, order);
    if (w != 0) c.emplace(n, beta.scaled(Scalar(w)));
  }
  return DerivationSum(d.modulus(), std::move(c));
}

Classification classify(const CovariantDerivationData& d) {
  const SupernaturalNumber& big_n = d.modulus();
  require(!is_bounded_regime(d.n(), big_n), ErrorKind::RegimeMismatch,
          "degree " + std::to_string(d.n()) + " is in the bounded regime; the derivation is inner");
  EPSequence alpha = increment(d.beta());
  MeanDecomposition parts = big_n.is_finite() ? mean_decompose(alpha, big_n) : mean_decompose(alpha);
  Classification out;
  out.linear = parts.mean;
  out.inner_per = {d.n(), partial_sums(EPSequence::periodic(parts.periodic)), big_n};
  out.approx_c00 = {d.n(), partial_sums(EPSequence::finite(parts.c00)), big_n};
  require(out.inner_per.beta().is_bounded() && out.approx_c00.beta().is_bounded(), ErrorKind::InternalInvariant,
          "classification parts must be bounded");
  return out;
}

CovariantDerivationData reassemble(const Classification& c, std::int64_t n, const SupernaturalNumber& big_n) {
  AffineSequence beta = AffineSequence(c.linear, EPSequence()) + c.inner_per.beta() + c.approx_c00.beta();
  return {n, std::move(beta), big_n};
}

Rational obstruction_gap(std::int64_t n, const SupernaturalNumber& big_n, const EPSequence& beta) {
  CovariantDerivationData check(n, AffineSequence::bounded(beta), big_n);
  EPSequence gap = EPSequence::constant(Scalar(1)) - (ep_shift(beta, 1) - beta);
  return ep_supnorm_sq(gap);
}

DerivationSum d_f_build(const LaurentFunction& f, const SupernaturalNumber& big_n) {
  const std::int64_t nn = big_n.value();
  DerivationSum::Components c;
  for (const auto& [j, fj] : f.coefficients()) c.emplace(j * nn, AffineSequence(fj / Scalar(nn), EPSequence()));
  return DerivationSum(big_n, std::move(c));
}

UnilateralElement toeplitz_of_f(const LaurentFunction& f, std::int64_t big_n) {
  BilateralElement::Terms t;
  for (const auto& [j, fj] : f.coefficients()) t.emplace(j * big_n, LocallyConstantFunction::constant(fj));
  return toeplitz(BilateralElement(std::move(t)));
}

UnilateralElement d_f_image_of_shift(const LaurentFunction& f, const SupernaturalNumber& big_n) {
  const std::int64_t nn = big_n.value();
  // Factor order follows the commutator formula; the reverse order differs by a rank-one term.
  return multiply(toeplitz_of_f(f, nn), UnilateralElement::shift()).scaled(Scalar(1) / Scalar(nn));
}

UnilateralElement d_f_image_of_shift_adjoint(const LaurentFunction& f, const SupernaturalNumber& big_n) {
  const std::int64_t nn = big_n.value();
  return multiply(UnilateralElement::shift_adjoint(), toeplitz_of_f(f, nn)).scaled(Scalar(-1) / Scalar(nn));
}

LaurentFunction extract_f(const DerivationSum& d) {
  const std::int64_t nn = d.modulus().value();
  LaurentFunction::Coefficients f;
  for (const auto& [n, beta] : d.components()) {
    if (n % nn != 0) continue;
    Classification c = classify(CovariantDerivationData(n, beta, d.modulus()));
    f.emplace(n / nn, c.linear * Scalar(nn));
  }
  return LaurentFunction(std::move(f));
}

MatrixTrigPoly delta_f_apply(const LaurentFunction& f, const MatrixTrigPoly& m) {
  MatrixTrigPoly out(m.size());
  for (std::int64_t r = 0; r < m.size(); ++r) {
    for (std::int64_t c = 0; c < m.size(); ++c) out.at(r, c) = m.at(r, c).angular_derivative() * f;
  }
  return out;
}

MatrixTrigPoly inner_part_H(const std::map<std::pair<std::int64_t, std::int64_t>, MatrixTrigPoly>& images,
                            std::int64_t big_n) {
  require(big_n >= 1, ErrorKind::InvalidArgument, "matrix size must be >= 1");
  auto image = [&](std::int64_t r, std::int64_t s) {
    auto it = images.find({r, s});
    if (it == images.end()) return MatrixTrigPoly(big_n);
    require(it->second.size() == big_n, ErrorKind::InvalidArgument, "image has the wrong size");
    return it->second;
  };
  for (const auto& kv : images) {
    const auto [r, s] = kv.first;
    require(r >= 0 && r < big_n && s >= 0 && s < big_n, ErrorKind::InvalidArgument, "matrix unit index out of range");
  }
  for (std::int64_t s = 0; s < big_n; ++s) {
    for (std::int64_t r = 0; r < big_n; ++r) {
      const MatrixTrigPoly d_sr = image(s, r);
      const MatrixTrigPoly e_sr = MatrixTrigPoly::unit(big_n, s, r);
      for (std::int64_t t = 0; t < big_n; ++t) {
        for (std::int64_t q = 0; q < big_n; ++q) {
          MatrixTrigPoly lhs = d_sr * MatrixTrigPoly::unit(big_n, t, q) + e_sr * image(t, q);
          MatrixTrigPoly rhs = t == r ? image(s, q) : MatrixTrigPoly(big_n);
          require(lhs == rhs, ErrorKind::NotDerivation,
                  "Leibniz rule fails on P_" + std::to_string(s) + std::to_string(r) + " P_" + std::to_string(t) +
                      std::to_string(q));
        }
      }
    }
  }
  MatrixTrigPoly h(big_n);
  for (std::int64_t r = 0; r < big_n; ++r) {
    for (std::int64_t s = 0; s < big_n; ++s) h = h + image(r, s) * MatrixTrigPoly::unit(big_n, s, r);
  }
  return h.scaled(Scalar(1) / Scalar(big_n));
}

// ----------------------------------------------------------------- bilateral

BilateralCovariantData::BilateralCovariantData(std::int64_t n, BilateralAffineSequence eta, SupernaturalNumber big_n)
    : n_(n), eta_(std::move(eta)), big_n_(std::move(big_n)) {
  if (is_bounded_regime(n_, big_n_)) {
    require(eta_.linear().is_zero(), ErrorKind::UnboundedCoefficient,
            "degree " + std::to_string(n_) + " with N = " + to_string(big_n_) + " needs a bounded coefficient");
  }
  require(eta_.ep().correction().empty(), ErrorKind::InvalidArgument,
          "bilateral coefficients must be locally constant (no finite corrections)");
  require_divides(eta_.ep().period(), big_n_);
}

BilateralDerivationSum::BilateralDerivationSum(SupernaturalNumber big_n, Components components)
    : big_n_(std::move(big_n)) {
  for (auto& [n, eta] : components) {
    if (eta.linear().is_zero() && eta.ep().is_zero()) continue;
    BilateralCovariantData check(n, eta, big_n_);
    components_.emplace(n, std::move(eta));
  }
}

BilateralDerivationSum BilateralDerivationSum::single(const BilateralCovariantData& d) {
  return BilateralDerivationSum(d.modulus(), Components{{d.n(), d.eta()}});
}

BilateralDerivationSum bilateral_from_inner(const BilateralElement& x, const SupernaturalNumber& big_n) {
  BilateralDerivationSum::Components c;
  for (const auto& [n, coeff] : x.terms()) c.emplace(n, BilateralAffineSequence(Scalar(0), BilateralEPSequence::periodic(coeff)));
  return BilateralDerivationSum(big_n, std::move(c));
}

BilateralElement bilateral_apply(const BilateralCovariantData& d, const BilateralElement& b) {
  require_periods_divide(b, d.modulus());
  const std::int64_t n = d.n();
  const LocallyConstantFunction c = LocallyConstantFunction::constant(d.eta().linear());
  const LocallyConstantFunction& ep = d.eta().ep().periodic_part();
  BilateralElement::Terms out;
  for (const auto& [m, y] : b.terms()) {
    // weight of X Y minus weight of Y X, where X(l) = C l + ep(l)
    LocallyConstantFunction y_n = lcf_shift(y, n);
    LocallyConstantFunction slope = c * y - c * y_n;
    require(slope.is_zero(), ErrorKind::InternalInvariant, "unbounded part of a derivation image did not cancel");
    LocallyConstantFunction w = y * (c.scaled(Scalar(m)) + lcf_shift(ep, m)) - ep * y_n;
    auto [it, inserted] = out.emplace(n + m, w);
    if (!inserted) it->second = it->second + w;
  }
  return BilateralElement(std::move(out));
}

BilateralElement bilateral_apply(const BilateralDerivationSum& d, const BilateralElement& b) {
  BilateralElement out;
  for (const auto& [n, eta] : d.components()) out = out + bilateral_apply(BilateralCovariantData(n, eta, d.modulus()), b);
  return out;
}

BilateralCovariantData quotient_derivation(const CovariantDerivationData& d) {
  const std::int64_t shift = std::min<std::int64_t>(d.n(), 0);
  const Scalar& c = d.beta().linear();
  LocallyConstantFunction ep = LocallyConstantFunction::constant(c * Scalar(1 + shift)) +
                               lcf_shift(d.beta().ep().periodic_part(), shift);
  return {d.n(), BilateralAffineSequence(c, BilateralEPSequence::periodic(std::move(ep))), d.modulus()};
}

BilateralDerivationSum quotient_derivation(const DerivationSum& d) {
  BilateralDerivationSum::Components c;
  for (const auto& [n, beta] : d.components()) {
    c.emplace(n, quotient_derivation(CovariantDerivationData(n, beta, d.modulus())).eta());
  }
  return BilateralDerivationSum(d.modulus(), std::move(c));
}

DerivationSum approx_c00(const CovariantDerivationData& d, std::int64_t order) {
  require(order >= 0, ErrorKind::InvalidArgument, "truncation order must be >= 0");
  EPSequence alpha = increment(d.beta());
  require(alpha.is_c00(), ErrorKind::RegimeMismatch, "increment has a periodic part; not a finitely supported case");
  Correction kept;
  for (const auto& [k, v] : alpha.correction()) {
    if (k <= order) kept.emplace(k, v);
  }
  return DerivationSum::single(CovariantDerivationData(d.n(), partial_sums(EPSequence::finite(std::move(kept))),
                                                       d.modulus()));
}

Rational approx_c00_residual_sq(const CovariantDerivationData& d, std::int64_t order) {
  DerivationSum diff = DerivationSum::single(d) - approx_c00(d, order);
  Rational best = 0;
  const UnilateralElement image = apply(diff, UnilateralElement::shift());
  for (const auto& kv : image.terms()) best = std::max(best, ep_supnorm_sq(kv.second));
  return best;
}

CovariantDerivationData approx_per(const LocallyConstantFunction& f, const SupernaturalNumber& big_n) {
  require(haar_integral(f).is_zero(), ErrorKind::NonzeroMean, "approx_per needs a mean-zero function");
  return {0, partial_sums(EPSequence::periodic(f)), big_n};
}

}  // namespace bdshift
