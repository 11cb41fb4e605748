#include "bdshift/gns.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "bdshift/error.hpp"

namespace bdshift {

namespace {

template <typename Entries>
Entries strip_zero_entries(Entries e) {
  std::erase_if(e, [](const auto& kv) { return kv.second.is_zero(); });
  return e;
}

void require_level(const LocallyConstantFunction& f, std::int64_t level, const char* what) {
  require(level % f.period() == 0, ErrorKind::LevelMismatch,
          std::string(what) + " has period " + std::to_string(f.period()) + " which does not divide the level " +
              std::to_string(level));
}

std::int64_t haar_index(std::int64_t m, std::int64_t x, std::int64_t window, std::int64_t level) {
  return (m + window) * level + x;
}

}  // namespace

LocallyConstantFunction expectation(const BilateralElement& b) { return b.coefficient(0); }

Scalar tau0(const BilateralElement& b) { return expectation(b)(0); }

Scalar tau_haar(const BilateralElement& b) { return haar_integral(expectation(b)); }

// ------------------------------------------------------------------- vectors

GNSVector0::GNSVector0(Entries e) : entries_(strip_zero_entries(std::move(e))) {}

GNSVector0 GNSVector0::basis(std::int64_t l) { return GNSVector0(Entries{{l, Scalar(1)}}); }

Scalar GNSVector0::at(std::int64_t l) const {
  auto it = entries_.find(l);
  return it == entries_.end() ? Scalar(0) : it->second;
}

Scalar inner(const GNSVector0& u, const GNSVector0& v) {
  Scalar s;
  for (const auto& [l, x] : u.entries()) s += x.conj() * v.at(l);
  return s;
}

GNSVector0 pi0_apply(const BilateralElement& b, const GNSVector0& v) {
  GNSVector0::Entries out;
  for (const auto& [n, coeff] : b.terms()) {
    for (const auto& [l, x] : v.entries()) out[l + n] += coeff(l) * x;
  }
  return GNSVector0(std::move(out));
}

GNSVectorHaar::GNSVectorHaar(std::int64_t level) : level_(level) {
  require(level >= 1, ErrorKind::InvalidArgument, "level must be >= 1");
}

GNSVectorHaar::GNSVectorHaar(std::int64_t level, Entries e) : GNSVectorHaar(level) {
  for (const auto& kv : e) {
    require(kv.first.second >= 0 && kv.first.second < level, ErrorKind::LevelMismatch,
            "fibre coordinate outside Z/" + std::to_string(level));
  }
  entries_ = strip_zero_entries(std::move(e));
}

GNSVectorHaar GNSVectorHaar::cyclic(std::int64_t level) {
  Entries e;
  for (std::int64_t x = 0; x < level; ++x) e.emplace(std::pair{std::int64_t{0}, x}, Scalar(1));
  return {level, std::move(e)};
}

Scalar GNSVectorHaar::at(std::int64_t m, std::int64_t x) const {
  auto it = entries_.find({m, x});
  return it == entries_.end() ? Scalar(0) : it->second;
}

Scalar inner(const GNSVectorHaar& u, const GNSVectorHaar& v) {
  require(u.level() == v.level(), ErrorKind::LevelMismatch, "vectors live at different levels");
  Scalar s;
  for (const auto& [key, x] : u.entries()) s += x.conj() * v.at(key.first, key.second);
  return s / Scalar(u.level());
}

GNSVectorHaar pi_haar_apply(const BilateralElement& b, const GNSVectorHaar& v) {
  const std::int64_t j = v.level();
  GNSVectorHaar::Entries out;
  for (const auto& [n, coeff] : b.terms()) {
    require_level(coeff, j, "coefficient");
    for (const auto& [key, val] : v.entries()) {
      const auto [m0, x] = key;  // source (m - n, x)
      out[{m0 + n, x}] += coeff(x + m0) * val;
    }
  }
  return {j, std::move(out)};
}

// ----------------------------------------------------------- implementations

std::string to_string(ImplementationCase c) {
  switch (c) {
    case ImplementationCase::Bounded:
      return "bounded";
    case ImplementationCase::InfiniteInvariant:
      return "infinite-invariant";
    case ImplementationCase::FiniteDivisible:
      return "finite-divisible";
  }
  return "unknown";
}

std::string to_string(GNSState s) { return s == GNSState::Tau0 ? "tau0" : "haar"; }

ImplementationData make_implementation(std::int64_t n, ImplementationCase kind, Scalar linear,
                                       LocallyConstantFunction fn, const SupernaturalNumber& big_n,
                                       std::int64_t level, LocallyConstantFunction psi, Scalar shift_constant) {
  ImplementationCase expected = is_bounded_regime(n, big_n) ? ImplementationCase::Bounded
                                : big_n.is_finite()          ? ImplementationCase::FiniteDivisible
                                                             : ImplementationCase::InfiniteInvariant;
  require(kind == expected, ErrorKind::RegimeMismatch,
          "degree " + std::to_string(n) + " with N = " + to_string(big_n) + " is the " + to_string(expected) +
              " case, not " + to_string(kind));
  if (kind == ImplementationCase::Bounded) {
    require(linear.is_zero(), ErrorKind::UnboundedCoefficient, "bounded case has no linear part");
  }
  if (kind == ImplementationCase::InfiniteInvariant) {
    require(haar_integral(fn).is_zero(), ErrorKind::NonzeroMean, "the increment part must have mean zero");
  }
  require_divides(fn.period(), big_n);
  require_divides(psi.period(), big_n);
  if (level == 0) level = big_n.is_finite() ? big_n.value() : std::lcm(fn.period(), psi.period());
  require(level >= 1, ErrorKind::InvalidArgument, "level must be >= 1");
  require_divides(level, big_n);
  if (big_n.is_finite()) {
    require(level == big_n.value(), ErrorKind::LevelMismatch, "finite N uses the full fibre Z/NZ");
  }
  require_level(fn, level, "coefficient");
  require_level(psi, level, "psi");
  ImplementationData d;
  d.n = n;
  d.kind = kind;
  d.linear = std::move(linear);
  d.fn = std::move(fn);
  d.psi = std::move(psi);
  d.shift_constant = std::move(shift_constant);
  d.level = level;
  d.modulus = big_n;
  return d;
}

ImplementationData implementation_from(const BilateralCovariantData& d, std::int64_t level) {
  const LocallyConstantFunction& ep = d.eta().ep().periodic_part();
  const SupernaturalNumber& big_n = d.modulus();
  if (is_bounded_regime(d.n(), big_n)) {
    return make_implementation(d.n(), ImplementationCase::Bounded, Scalar(0), ep, big_n, level);
  }
  if (big_n.is_finite()) {
    return make_implementation(d.n(), ImplementationCase::FiniteDivisible, d.eta().linear(), ep, big_n, level);
  }
  return make_implementation(d.n(), ImplementationCase::InfiniteInvariant, d.eta().linear(), ep - lcf_shift(ep, -1),
                             big_n, level);
}

BilateralCovariantData implemented_derivation(const ImplementationData& data) {
  LocallyConstantFunction ep = data.fn;
  if (data.kind == ImplementationCase::InfiniteInvariant) {
    ep = bilateral_partial_sums(BilateralEPSequence::periodic(data.fn)).ep().periodic_part();
  }
  return {data.n, BilateralAffineSequence(data.linear, BilateralEPSequence::periodic(std::move(ep))), data.modulus};
}

ExactMatrix build_D_tau0_exact(const ImplementationData& data, std::int64_t m) {
  require(m >= 0, ErrorKind::InvalidArgument, "window must be >= 0");
  const BilateralAffineSequence eta = implemented_derivation(data).eta();
  const Scalar c = data.n == 0 ? data.shift_constant : Scalar(0);
  ExactMatrix out(2 * m + 1, 2 * m + 1);
  for (std::int64_t l = -m; l <= m; ++l) out.add(l + data.n + m, l + m, eta(l) + c);
  return out;
}

DenseMatrix build_D_tau0(const ImplementationData& data, std::int64_t m) { return build_D_tau0_exact(data, m).to_dense(); }

ExactMatrix build_D_haar_exact(const ImplementationData& data, std::int64_t m) {
  require(m >= 0, ErrorKind::InvalidArgument, "window must be >= 0");
  const std::int64_t j = data.level;
  const std::int64_t n = data.n;
  const LocallyConstantFunction ep = implemented_derivation(data).eta().ep().periodic_part();
  ExactMatrix out((2 * m + 1) * j, (2 * m + 1) * j);
  for (std::int64_t src = -m; src <= m; ++src) {
    const std::int64_t dst = src + n;
    if (dst < -m || dst > m) continue;
    for (std::int64_t x = 0; x < j; ++x) {
      const std::int64_t row = haar_index(dst, x, m, j);
      if (data.kind == ImplementationCase::Bounded) {
        out.add(row, haar_index(src, x, m, j), data.fn(x + src));
        out.add(row, haar_index(src, floor_mod(x + n, j), m, j), data.psi(x) - data.fn(x));
      } else {
        Scalar a = data.linear * Scalar(src) + ep(x + src) - ep(x) + data.psi(x);
        out.add(row, haar_index(src, x, m, j), a);
      }
    }
  }
  return out;
}

DenseMatrix build_D_haar(const ImplementationData& data, std::int64_t m) { return build_D_haar_exact(data, m).to_dense(); }

ExactMatrix pi0_matrix(const BilateralElement& b, std::int64_t m) { return truncate_bilateral_exact(b, -m, m); }

ExactMatrix pi_haar_matrix(const BilateralElement& b, std::int64_t m, std::int64_t level) {
  ExactMatrix out((2 * m + 1) * level, (2 * m + 1) * level);
  for (const auto& [n, coeff] : b.terms()) {
    require_level(coeff, level, "coefficient");
    for (std::int64_t src = -m; src <= m; ++src) {
      const std::int64_t dst = src + n;
      if (dst < -m || dst > m) continue;
      for (std::int64_t x = 0; x < level; ++x) {
        out.add(haar_index(dst, x, m, level), haar_index(src, x, m, level), coeff(x + src));
      }
    }
  }
  return out;
}

std::vector<std::int64_t> tau0_labels(std::int64_t m) {
  std::vector<std::int64_t> out;
  for (std::int64_t l = -m; l <= m; ++l) out.push_back(l);
  return out;
}

std::vector<std::int64_t> haar_labels(std::int64_t m, std::int64_t level) {
  std::vector<std::int64_t> out;
  for (std::int64_t l = -m; l <= m; ++l) out.insert(out.end(), static_cast<std::size_t>(level), l);
  return out;
}

double check_covariance(const DenseMatrix& d, const std::vector<std::int64_t>& labels, std::int64_t n,
                        std::int64_t grid) {
  require(static_cast<Eigen::Index>(labels.size()) == d.rows() && d.rows() == d.cols(), ErrorKind::InvalidArgument,
          "one label per basis vector of a square matrix");
  require(grid >= 1, ErrorKind::InvalidArgument, "grid must be >= 1");
  double worst = 0.0;
  for (std::int64_t q = 0; q < grid; ++q) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(grid);
    const std::complex<double> phase = std::polar(1.0, static_cast<double>(n) * theta);
    double sum = 0.0;
    for (Eigen::Index r = 0; r < d.rows(); ++r) {
      for (Eigen::Index c = 0; c < d.cols(); ++c) {
        if (d(r, c) == 0.0) continue;
        const std::complex<double> conj = std::polar(1.0, static_cast<double>(labels[r] - labels[c]) * theta);
        sum += std::norm(conj * d(r, c) - phase * d(r, c));
      }
    }
    worst = std::max(worst, std::sqrt(sum));
  }
  return worst;
}

ImplementationCheck check_implementation(const ImplementationData& data, GNSState state, const BilateralElement& b,
                                         std::int64_t m) {
  ImplementationCheck out;
  out.margin = std::abs(data.n) + b.max_abs_degree();
  require(m > out.margin, ErrorKind::WindowTooSmall,
          "window " + std::to_string(m) + " leaves no interior for margin " + std::to_string(out.margin));
  const BilateralElement image = bilateral_apply(implemented_derivation(data), b);
  const bool haar = state == GNSState::Haar;
  const ExactMatrix d = haar ? build_D_haar_exact(data, m) : build_D_tau0_exact(data, m);
  const ExactMatrix p = haar ? pi_haar_matrix(b, m, data.level) : pi0_matrix(b, m);
  const ExactMatrix expected = haar ? pi_haar_matrix(image, m, data.level) : pi0_matrix(image, m);
  const ExactMatrix comm = d * p - p * d;
  const std::vector<std::int64_t> labels = haar ? haar_labels(m, data.level) : tau0_labels(m);
  const std::int64_t inner_bound = m - out.margin;
  out.exact = true;
  for (std::int64_t r = 0; r < comm.rows(); ++r) {
    if (std::abs(labels[r]) > inner_bound) continue;
    for (std::int64_t c = 0; c < comm.cols(); ++c) {
      if (std::abs(labels[c]) > inner_bound) continue;
      const Scalar diff = comm.at(r, c) - expected.at(r, c);
      if (!diff.is_zero()) {
        out.exact = false;
        out.max_deviation = std::max(out.max_deviation, std::abs(diff.to_complex()));
      }
    }
  }
  return out;
}

bool parametrix_predicate(const ImplementationData& data, GNSState state) {
  if (data.linear.is_zero()) return false;
  if (state == GNSState::Tau0) return !is_bounded_regime(data.n, data.modulus);
  return data.modulus.is_finite() && data.n % data.modulus.value() == 0;
}

namespace {

/// Singular values of the fibre blocks A_m (source m -> m + n) for |m| in (lo, hi].
template <typename Visit>
void visit_blocks(const ImplementationData& data, GNSState state, std::int64_t lo, std::int64_t hi, Visit visit) {
  const std::int64_t window = hi + std::abs(data.n);
  const bool haar = state == GNSState::Haar;
  const std::int64_t j = haar ? data.level : 1;
  const ExactMatrix d = haar ? build_D_haar_exact(data, window) : build_D_tau0_exact(data, window);
  for (std::int64_t src = -hi; src <= hi; ++src) {
    if (std::abs(src) <= lo) continue;
    DenseMatrix block(j, j);
    for (std::int64_t x = 0; x < j; ++x) {
      for (std::int64_t y = 0; y < j; ++y) {
        block(x, y) = d.at(haar_index(src + data.n, x, window, j), haar_index(src, y, window, j)).to_complex();
      }
    }
    Eigen::JacobiSVD<DenseMatrix> svd(block);
    visit(svd.singularValues());
  }
}

}  // namespace

ParametrixReport parametrix_report(const ImplementationData& data, GNSState state,
                                   const std::vector<std::int64_t>& windows) {
  require(windows.size() >= 2, ErrorKind::InvalidArgument, "need at least two windows for the growth test");
  ParametrixReport rep;
  rep.state = state;
  rep.windows = windows;
  for (std::int64_t w : windows) {
    require(w >= 2, ErrorKind::InvalidArgument, "windows must be >= 2");
    double best = std::numeric_limits<double>::infinity();
    visit_blocks(data, state, w / 2, w, [&](const Eigen::VectorXd& sv) {
      best = std::min(best, std::sqrt(1.0 + sv.minCoeff() * sv.minCoeff()));
    });
    rep.min_sv.push_back(best);
  }
  rep.diverges = true;
  for (std::size_t i = 1; i < rep.min_sv.size(); ++i) {
    rep.growth.push_back(rep.min_sv[i] / rep.min_sv[i - 1]);
    if (rep.growth.back() < kGrowthThreshold) rep.diverges = false;
  }

  if (state == GNSState::Haar && !data.modulus.is_finite()) {
    // Refine the fibre along a prime with infinite exponent and count small singular values.
    std::uint64_t p = 0;
    for (const auto& [q, e] : data.modulus.factors()) {
      if (e == SupernaturalNumber::kInfinite) {
        p = q;
        break;
      }
    }
    std::int64_t level = data.level;
    for (int step = 0; step < 3; ++step, level *= static_cast<std::int64_t>(p)) {
      ImplementationData refined = data;
      refined.level = level;
      std::int64_t count = 0;
      visit_blocks(refined, state, -1, windows.front(), [&](const Eigen::VectorXd& sv) {
        for (Eigen::Index i = 0; i < sv.size(); ++i) count += sv(i) * sv(i) <= 3.0 ? 1 : 0;
      });
      rep.levels.push_back(level);
      rep.small_counts.push_back(count);
    }
    rep.fibres_grow = rep.small_counts.back() > rep.small_counts.front();
  }

  rep.numeric_positive = rep.diverges && !rep.fibres_grow;
  rep.predicate = parametrix_predicate(data, state);
  if (state == GNSState::Tau0) {
    rep.predicate_text = is_bounded_regime(data.n, data.modulus) ? "bounded regime: D is bounded"
                                                                 : "eta_n(l) -> infinity iff C_n != 0";
  } else {
    rep.predicate_text = data.modulus.is_finite() && data.n % data.modulus.value() == 0
                             ? "N finite, N | n: compact parametrices iff C_n != 0"
                             : "multiplication by L^2 functions on infinite or bounded fibres: never";
  }
  rep.verdict = rep.numeric_positive ? "compact-parametrix-consistent" : "no-compact-parametrix";
  return rep;
}

}  // namespace bdshift
