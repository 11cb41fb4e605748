#include "bdshift/profinite.hpp"

#include <numeric>
#include <sstream>

#include "bdshift/error.hpp"

namespace bdshift {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::int64_t checked_pow(std::uint64_t p, unsigned e) {
  std::int64_t out = 1;
  for (unsigned k = 0; k < e; ++k) {
    require(out <= std::numeric_limits<std::int64_t>::max() / static_cast<std::int64_t>(p),
            ErrorKind::InvalidArgument, "prime power overflows 64-bit integer");
    out *= static_cast<std::int64_t>(p);
  }
  return out;
}

}  // namespace

SupernaturalNumber::SupernaturalNumber(std::map<std::uint64_t, unsigned> factors) {
  for (auto& [p, e] : factors) {
    require(is_prime(p), ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
    if (e != 0) factors_.emplace(p, e);
  }
}

SupernaturalNumber SupernaturalNumber::finite(std::int64_t n) {
  require(n >= 1, ErrorKind::InvalidArgument, "finite supernatural number must be >= 1");
  return SupernaturalNumber(factorize(n));
}

SupernaturalNumber SupernaturalNumber::prime_power_infinite(std::uint64_t p) {
  return SupernaturalNumber({{p, kInfinite}});
}

bool SupernaturalNumber::is_finite() const {
  for (const auto& [p, e] : factors_) {
    if (e == kInfinite) return false;
  }
  return true;
}

std::int64_t SupernaturalNumber::value() const {
  require(is_finite(), ErrorKind::NotFinite, "N = " + to_string(*this) + " is infinite");
  std::int64_t out = 1;
  for (const auto& [p, e] : factors_) {
    std::int64_t pe = checked_pow(p, e);
    require(out <= std::numeric_limits<std::int64_t>::max() / pe, ErrorKind::InvalidArgument,
            "N overflows 64-bit integer");
    out *= pe;
  }
  return out;
}

unsigned SupernaturalNumber::exponent(std::uint64_t prime) const {
  auto it = factors_.find(prime);
  return it == factors_.end() ? 0 : it->second;
}

std::string to_string(const SupernaturalNumber& n) {
  if (n.factors().empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : n.factors()) {
    if (!first) os << "*";
    first = false;
    os << p;
    if (e == SupernaturalNumber::kInfinite) {
      os << "^inf";
    } else if (e != 1) {
      os << "^" << e;
    }
  }
  return os.str();
}

std::map<std::uint64_t, unsigned> factorize(std::int64_t n) {
  require(n >= 1, ErrorKind::InvalidArgument, "factorize expects a positive integer");
  std::map<std::uint64_t, unsigned> out;
  auto m = static_cast<std::uint64_t>(n);
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    while (m % d == 0) {
      ++out[d];
      m /= d;
    }
  }
  if (m > 1) ++out[m];
  return out;
}

bool divides(std::int64_t j, const SupernaturalNumber& n) {
  require(j >= 1, ErrorKind::InvalidArgument, "divides expects j >= 1");
  for (const auto& [p, e] : factorize(j)) {
    if (e > n.exponent(p)) return false;
  }
  return true;
}

void require_divides(std::int64_t j, const SupernaturalNumber& n) {
  require(divides(j, n), ErrorKind::PeriodNotDivisor,
          "period " + std::to_string(j) + " does not divide N = " + to_string(n));
}

std::vector<std::int64_t> finite_divisors(const SupernaturalNumber& n, std::int64_t bound) {
  require(bound >= 1, ErrorKind::InvalidArgument, "bound must be >= 1");
  std::vector<std::int64_t> out;
  for (std::int64_t j = 1; j <= bound; ++j) {
    if (divides(j, n)) out.push_back(j);
  }
  return out;
}

std::int64_t floor_mod(std::int64_t x, std::int64_t j) {
  std::int64_t r = x % j;
  return r < 0 ? r + j : r;
}

DivisorChain::DivisorChain(std::vector<std::int64_t> levels, const SupernaturalNumber& n)
    : levels_(std::move(levels)) {
  require(!levels_.empty(), ErrorKind::InvalidArgument, "divisor chain must be non-empty");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    require(levels_[i] >= 1, ErrorKind::InvalidArgument, "chain levels must be positive");
    require_divides(levels_[i], n);
    if (i > 0) {
      require(levels_[i] % levels_[i - 1] == 0, ErrorKind::InvalidArgument,
              "chain levels must divide each other in order");
    }
  }
}

ProfiniteInteger::ProfiniteInteger(DivisorChain chain, std::vector<std::int64_t> residues)
    : chain_(std::move(chain)), residues_(std::move(residues)) {
  const auto& lv = chain_.levels();
  require(residues_.size() == lv.size(), ErrorKind::InvalidArgument, "one residue per chain level");
  for (std::size_t i = 0; i < lv.size(); ++i) {
    require(residues_[i] >= 0 && residues_[i] < lv[i], ErrorKind::InvalidArgument,
            "residue out of range");
    if (i + 1 < lv.size()) {
      require(residues_[i + 1] % lv[i] == residues_[i], ErrorKind::InvalidArgument,
              "residues are not compatible along the chain");
    }
  }
}

ProfiniteInteger ProfiniteInteger::operator+(const ProfiniteInteger& o) const {
  require(chain_ == o.chain_, ErrorKind::InvalidArgument, "chains differ");
  std::vector<std::int64_t> r(residues_.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = (residues_[i] + o.residues_[i]) % chain_.levels()[i];
  }
  return ProfiniteInteger(chain_, std::move(r));
}

ProfiniteInteger ProfiniteInteger::operator*(const ProfiniteInteger& o) const {
  require(chain_ == o.chain_, ErrorKind::InvalidArgument, "chains differ");
  std::vector<std::int64_t> r(residues_.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    auto j = static_cast<__int128>(chain_.levels()[i]);
    r[i] = static_cast<std::int64_t>((static_cast<__int128>(residues_[i]) * o.residues_[i]) % j);
  }
  return ProfiniteInteger(chain_, std::move(r));
}

ProfiniteInteger ProfiniteInteger::operator-() const {
  std::vector<std::int64_t> r(residues_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = floor_mod(-residues_[i], chain_.levels()[i]);
  return ProfiniteInteger(chain_, std::move(r));
}

std::map<std::uint64_t, std::int64_t> ProfiniteInteger::crt_components() const {
  std::map<std::uint64_t, std::int64_t> out;
  for (const auto& [p, e] : factorize(chain_.top())) {
    out[p] = residues_.back() % checked_pow(p, e);
  }
  return out;
}

ProfiniteInteger q_map(std::int64_t x, const DivisorChain& chain) {
  std::vector<std::int64_t> r;
  r.reserve(chain.size());
  for (std::int64_t j : chain.levels()) r.push_back(floor_mod(x, j));
  return ProfiniteInteger(chain, std::move(r));
}

std::int64_t crt_reconstruct(const std::map<std::uint64_t, std::int64_t>& residues,
                             const std::map<std::uint64_t, unsigned>& exponents) {
  std::int64_t modulus = 1;
  std::int64_t x = 0;
  for (const auto& [p, e] : exponents) {
    std::int64_t pe = checked_pow(p, e);
    auto it = residues.find(p);
    require(it != residues.end(), ErrorKind::InvalidArgument, "missing CRT residue");
    // Solve x + modulus*t = r (mod pe) by scanning t; pe is small at desk scale.
    std::int64_t t = 0;
    while (floor_mod(x + modulus * t - it->second, pe) != 0) ++t;
    x += modulus * t;
    modulus *= pe;
    x = floor_mod(x, modulus);
  }
  return x;
}

std::int64_t minimal_period(std::span<const Scalar> table) {
  const auto j = static_cast<std::int64_t>(table.size());
  for (std::int64_t d = 1; d < j; ++d) {
    if (j % d != 0) continue;
    bool ok = true;
    for (std::int64_t r = d; r < j && ok; ++r) ok = table[r] == table[r % d];
    if (ok) return d;
  }
  return j;
}

LocallyConstantFunction::LocallyConstantFunction() : values_{Scalar(0)} {}

LocallyConstantFunction::LocallyConstantFunction(std::vector<Scalar> values) : values_(std::move(values)) {
  require(!values_.empty(), ErrorKind::InvalidArgument, "locally constant function needs a period >= 1");
  values_.resize(static_cast<std::size_t>(minimal_period(values_)));
}

LocallyConstantFunction LocallyConstantFunction::constant(Scalar c) {
  return LocallyConstantFunction(std::vector<Scalar>{std::move(c)});
}

LocallyConstantFunction LocallyConstantFunction::indicator(std::int64_t j) {
  require(j >= 1, ErrorKind::InvalidArgument, "indicator period must be >= 1");
  std::vector<Scalar> v(static_cast<std::size_t>(j), Scalar(0));
  v[0] = Scalar(1);
  return LocallyConstantFunction(std::move(v));
}

std::vector<Scalar> LocallyConstantFunction::table(std::int64_t length) const {
  require(length % period() == 0, ErrorKind::InvalidArgument, "table length must be a multiple of the period");
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(length));
  for (std::int64_t r = 0; r < length; ++r) out.push_back((*this)(r));
  return out;
}

bool LocallyConstantFunction::is_zero() const { return values_.size() == 1 && values_[0].is_zero(); }

namespace {

template <typename Op>
LocallyConstantFunction pointwise(const LocallyConstantFunction& f, const LocallyConstantFunction& g, Op op) {
  std::int64_t j = std::lcm(f.period(), g.period());
  std::vector<Scalar> v;
  v.reserve(static_cast<std::size_t>(j));
  for (std::int64_t r = 0; r < j; ++r) v.push_back(op(f(r), g(r)));
  return LocallyConstantFunction(std::move(v));
}

}  // namespace

LocallyConstantFunction LocallyConstantFunction::operator+(const LocallyConstantFunction& o) const {
  return pointwise(*this, o, [](const Scalar& a, const Scalar& b) { return a + b; });
}

LocallyConstantFunction LocallyConstantFunction::operator-(const LocallyConstantFunction& o) const {
  return pointwise(*this, o, [](const Scalar& a, const Scalar& b) { return a - b; });
}

LocallyConstantFunction LocallyConstantFunction::operator*(const LocallyConstantFunction& o) const {
  return pointwise(*this, o, [](const Scalar& a, const Scalar& b) { return a * b; });
}

LocallyConstantFunction LocallyConstantFunction::operator-() const { return scaled(Scalar(-1)); }

LocallyConstantFunction LocallyConstantFunction::scaled(const Scalar& c) const {
  std::vector<Scalar> v = values_;
  for (auto& x : v) x *= c;
  return LocallyConstantFunction(std::move(v));
}

LocallyConstantFunction LocallyConstantFunction::conj() const {
  std::vector<Scalar> v = values_;
  for (auto& x : v) x = x.conj();
  return LocallyConstantFunction(std::move(v));
}

LocallyConstantFunction lcf_from_periodic(std::vector<Scalar> values, const SupernaturalNumber& n) {
  require(!values.empty(), ErrorKind::InvalidArgument, "empty value table");
  require_divides(static_cast<std::int64_t>(values.size()), n);
  return LocallyConstantFunction(std::move(values));
}

std::vector<Scalar> pullback_sequence(const LocallyConstantFunction& f, std::int64_t count) {
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  for (std::int64_t k = 0; k < count; ++k) out.push_back(f(k));
  return out;
}

Scalar haar_integral(const LocallyConstantFunction& f) {
  Scalar sum;
  for (const auto& v : f.values()) sum += v;
  return sum / Scalar(f.period());
}

LocallyConstantFunction lcf_shift(const LocallyConstantFunction& f, std::int64_t t) {
  std::vector<Scalar> v;
  v.reserve(static_cast<std::size_t>(f.period()));
  for (std::int64_t r = 0; r < f.period(); ++r) v.push_back(f(r + t));
  return LocallyConstantFunction(std::move(v));
}

LocallyConstantFunction lcf_add(const LocallyConstantFunction& f, const LocallyConstantFunction& g,
                                const SupernaturalNumber& n) {
  require_divides(std::lcm(f.period(), g.period()), n);
  return f + g;
}

LocallyConstantFunction lcf_mul(const LocallyConstantFunction& f, const LocallyConstantFunction& g,
                                const SupernaturalNumber& n) {
  require_divides(std::lcm(f.period(), g.period()), n);
  return f * g;
}

}  // namespace bdshift
