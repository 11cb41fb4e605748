#include "bdshift/sequences.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "bdshift/error.hpp"

namespace bdshift {

namespace {

Correction strip_zeros(Correction c) {
  std::erase_if(c, [](const auto& kv) { return kv.second.is_zero(); });
  return c;
}

/// Correction entries needed at `keys` so that periodic + correction reproduces value(k).
template <typename Eval>
Correction corrections_at(const std::set<std::int64_t>& keys, Eval value, const LocallyConstantFunction& periodic) {
  Correction out;
  for (std::int64_t k : keys) {
    Scalar c = value(k) - periodic(k);
    if (!c.is_zero()) out.emplace(k, std::move(c));
  }
  return out;
}

std::set<std::int64_t> key_union(const Correction& a, const Correction& b) {
  std::set<std::int64_t> keys;
  for (const auto& kv : a) keys.insert(kv.first);
  for (const auto& kv : b) keys.insert(kv.first);
  return keys;
}

LocallyConstantFunction mean_zero_partial_sums(const LocallyConstantFunction& p, const Scalar& first) {
  // S(0) = first, S(r) = S(r-1) + p(r); periodic when p sums to zero over a period.
  std::vector<Scalar> table;
  table.reserve(static_cast<std::size_t>(p.period()));
  Scalar run = first;
  table.push_back(run);
  for (std::int64_t r = 1; r < p.period(); ++r) {
    run += p(r);
    table.push_back(run);
  }
  return LocallyConstantFunction(std::move(table));
}

}  // namespace

EPSequence::EPSequence(Correction correction, LocallyConstantFunction periodic)
    : correction_(strip_zeros(std::move(correction))), periodic_(std::move(periodic)) {
  if (!correction_.empty()) {
    require(correction_.begin()->first >= 0, ErrorKind::InvalidArgument,
            "unilateral correction keys must be non-negative");
  }
}

EPSequence EPSequence::constant(Scalar c) { return {{}, LocallyConstantFunction::constant(std::move(c))}; }

EPSequence EPSequence::periodic(LocallyConstantFunction f) { return {{}, std::move(f)}; }

EPSequence EPSequence::finite(Correction values) { return {std::move(values), LocallyConstantFunction()}; }

EPSequence EPSequence::spike(std::int64_t k, Scalar value) { return finite({{k, std::move(value)}}); }

EPSequence EPSequence::from_table(std::vector<Scalar> table) {
  return periodic(LocallyConstantFunction(std::move(table)));
}

Scalar EPSequence::operator()(std::int64_t k) const {
  if (k < 0) return Scalar(0);
  Scalar v = periodic_(k);
  if (auto it = correction_.find(k); it != correction_.end()) v += it->second;
  return v;
}

std::int64_t EPSequence::support_end() const {
  return correction_.empty() ? 0 : correction_.rbegin()->first + 1;
}

EPSequence EPSequence::operator+(const EPSequence& o) const {
  Correction c = correction_;
  for (const auto& [k, v] : o.correction_) c[k] += v;
  return {std::move(c), periodic_ + o.periodic_};
}

EPSequence EPSequence::operator-(const EPSequence& o) const {
  Correction c = correction_;
  for (const auto& [k, v] : o.correction_) c[k] -= v;
  return {std::move(c), periodic_ - o.periodic_};
}

EPSequence EPSequence::operator*(const EPSequence& o) const {
  LocallyConstantFunction per = periodic_ * o.periodic_;
  auto keys = key_union(correction_, o.correction_);
  return {corrections_at(keys, [&](std::int64_t k) { return (*this)(k) * o(k); }, per), per};
}

EPSequence EPSequence::scaled(const Scalar& c) const {
  Correction out = correction_;
  for (auto& kv : out) kv.second *= c;
  return {std::move(out), periodic_.scaled(c)};
}

EPSequence EPSequence::conj() const {
  Correction out = correction_;
  for (auto& kv : out) kv.second = kv.second.conj();
  return {std::move(out), periodic_.conj()};
}

EPSequence ep_add(const EPSequence& a, const EPSequence& b, const SupernaturalNumber& n) {
  require_divides(std::lcm(a.period(), b.period()), n);
  return a + b;
}

EPSequence ep_mul(const EPSequence& a, const EPSequence& b, const SupernaturalNumber& n) {
  require_divides(std::lcm(a.period(), b.period()), n);
  return a * b;
}

EPSequence ep_shift(const EPSequence& a, std::int64_t n) {
  if (n == 0) return a;
  LocallyConstantFunction per = lcf_shift(a.periodic_part(), n);
  std::set<std::int64_t> keys;
  for (const auto& kv : a.correction()) {
    if (kv.first - n >= 0) keys.insert(kv.first - n);
  }
  for (std::int64_t k = 0; k < -n; ++k) keys.insert(k);
  return {corrections_at(keys, [&](std::int64_t k) { return a(k + n); }, per), per};
}

std::pair<Correction, LocallyConstantFunction> ep_decompose(const EPSequence& a) {
  return {a.correction(), a.periodic_part()};
}

Rational ep_supnorm_sq(const EPSequence& a) {
  Rational best = 0;
  auto consider = [&](std::int64_t k) {
    Rational v = a(k).norm_sq();
    if (v > best) best = v;
  };
  for (const auto& kv : a.correction()) consider(kv.first);
  const std::int64_t end = a.support_end();
  for (std::int64_t k = end; k < end + a.period(); ++k) consider(k);
  return best;
}

Scalar AffineSequence::operator()(std::int64_t k) const {
  if (k < 0) return Scalar(0);
  return linear_ * Scalar(k + 1) + ep_(k);
}

AffineSequence partial_sums(const EPSequence& alpha) {
  const LocallyConstantFunction& p = alpha.periodic_part();
  Scalar mean = haar_integral(p);
  LocallyConstantFunction centered = p - LocallyConstantFunction::constant(mean);
  LocallyConstantFunction periodic_sums = mean_zero_partial_sums(centered, centered(0));

  Scalar total;
  for (const auto& kv : alpha.correction()) total += kv.second;

  Correction corr;
  Scalar run;
  for (std::int64_t k = 0; k < alpha.support_end(); ++k) {
    if (auto it = alpha.correction().find(k); it != alpha.correction().end()) run += it->second;
    corr[k] = run - total;
  }
  LocallyConstantFunction per = periodic_sums + LocallyConstantFunction::constant(total);
  return AffineSequence(mean, EPSequence(std::move(corr), std::move(per)));
}

EPSequence increment(const AffineSequence& beta) {
  return EPSequence::constant(beta.linear()) + beta.ep() - ep_shift(beta.ep(), -1);
}

MeanDecomposition mean_decompose(const EPSequence& alpha) {
  MeanDecomposition out;
  out.c00 = alpha.correction();
  out.mean = haar_integral(alpha.periodic_part());
  out.periodic = alpha.periodic_part() - LocallyConstantFunction::constant(out.mean);
  out.lift_period = alpha.period();
  return out;
}

MeanDecomposition mean_decompose(const EPSequence& alpha, const SupernaturalNumber& n) {
  const std::int64_t big_n = n.value();
  require_divides(alpha.period(), n);
  MeanDecomposition out = mean_decompose(alpha);
  out.lift_period = big_n;
  return out;
}

BilateralEPSequence::BilateralEPSequence(Correction correction, LocallyConstantFunction periodic)
    : correction_(strip_zeros(std::move(correction))), periodic_(std::move(periodic)) {}

Scalar BilateralEPSequence::operator()(std::int64_t l) const {
  Scalar v = periodic_(l);
  if (auto it = correction_.find(l); it != correction_.end()) v += it->second;
  return v;
}

BilateralEPSequence BilateralEPSequence::operator+(const BilateralEPSequence& o) const {
  Correction c = correction_;
  for (const auto& [k, v] : o.correction_) c[k] += v;
  return {std::move(c), periodic_ + o.periodic_};
}

BilateralEPSequence BilateralEPSequence::operator-(const BilateralEPSequence& o) const {
  Correction c = correction_;
  for (const auto& [k, v] : o.correction_) c[k] -= v;
  return {std::move(c), periodic_ - o.periodic_};
}

BilateralEPSequence BilateralEPSequence::operator*(const BilateralEPSequence& o) const {
  LocallyConstantFunction per = periodic_ * o.periodic_;
  auto keys = key_union(correction_, o.correction_);
  return {corrections_at(keys, [&](std::int64_t l) { return (*this)(l) * o(l); }, per), per};
}

BilateralEPSequence BilateralEPSequence::scaled(const Scalar& c) const {
  Correction out = correction_;
  for (auto& kv : out) kv.second *= c;
  return {std::move(out), periodic_.scaled(c)};
}

BilateralEPSequence bilateral_shift(const BilateralEPSequence& b, std::int64_t n) {
  Correction c;
  for (const auto& [l, v] : b.correction()) c.emplace(l - n, v);
  return {std::move(c), lcf_shift(b.periodic_part(), n)};
}

Scalar BilateralAffineSequence::operator()(std::int64_t l) const { return linear_ * Scalar(l) + ep_(l); }

BilateralEPSequence bilateral_increment(const BilateralAffineSequence& eta) {
  return BilateralEPSequence::constant(eta.linear()) + eta.ep() - bilateral_shift(eta.ep(), -1);
}

BilateralAffineSequence bilateral_partial_sums(const BilateralEPSequence& gamma) {
  require(gamma.correction().empty(), ErrorKind::RegimeMismatch,
          "bilateral partial sums need a correction-free increment");
  const LocallyConstantFunction& g = gamma.periodic_part();
  Scalar mean = haar_integral(g);
  LocallyConstantFunction centered = g - LocallyConstantFunction::constant(mean);
  return {mean, BilateralEPSequence::periodic(mean_zero_partial_sums(centered, g(0)))};
}

}  // namespace bdshift
