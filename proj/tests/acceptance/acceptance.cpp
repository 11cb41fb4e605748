// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bdshift/algebra.hpp"
#include "bdshift/derivations.hpp"
#include "bdshift/error.hpp"
#include "bdshift/gns.hpp"
#include "bdshift/numerics.hpp"
#include "support/generators.hpp"

using namespace bdshift;
using namespace bdshift::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

struct Criterion {
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

const UnilateralElement U = UnilateralElement::shift();
const UnilateralElement Us = UnilateralElement::shift_adjoint();
const UnilateralElement P0 = UnilateralElement::vacuum_projection();
const BilateralElement V = BilateralElement::shift();
const BilateralElement Vi = BilateralElement::shift_inverse();

UnilateralElement upow(const UnilateralElement& x, int p) {
  UnilateralElement out = UnilateralElement::identity();
  for (int i = 0; i < p; ++i) out = out * x;
  return out;
}

std::string str(const std::string& label, double v) {
  std::ostringstream os;
  os << label << " " << v;
  return os.str();
}

Outcome products() {
  Outcome o;
  Gen g(1001);
  const std::vector<std::int64_t> moduli{1, 2, 3, 4, 6, 12};
  for (int t = 0; t < 200; ++t) {
    const auto big_n = SupernaturalNumber::finite(g.pick(moduli));
    const auto periods = finite_divisors(big_n, 12);
    const auto rep = oracle_product_check(g.unilateral(periods), g.unilateral(periods), 64);
    o.require(rep.exact_match && rep.float_match, "pair " + std::to_string(t) + ": " + rep.verdict);
  }
  o.detail = o.pass ? "200 pairs exact on the interior window, M = 64" : o.detail;
  return o;
}

Outcome units() {
  Outcome o;
  for (std::int64_t n : {2, 3, 4, 6}) {
    const auto big_n = SupernaturalNumber::finite(n);
    const auto p = matrix_units(big_n);
    for (std::int64_t s = 0; s < n; ++s) {
      for (std::int64_t r = 0; r < n; ++r) {
        o.require(bilateral_adjoint(p[s][r]) == p[r][s], "adjoint relation, N = " + std::to_string(n));
        for (std::int64_t u = 0; u < n; ++u) {
          for (std::int64_t q = 0; q < n; ++q) {
            const auto expected = u == r ? p[s][q] : BilateralElement();
            o.require(p[s][r] * p[u][q] == expected, "product relation, N = " + std::to_string(n));
          }
        }
      }
    }
    BilateralElement rebuilt = bilateral_power(V, static_cast<unsigned>(n)) * p[0][n - 1];
    for (std::int64_t s = 1; s < n; ++s) rebuilt = rebuilt + p[s][s - 1];
    o.require(rebuilt == V, "V is not reassembled from matrix units, N = " + std::to_string(n));
  }
  if (o.pass) o.detail = "relations exact for N = 2, 3, 4, 6";
  return o;
}

Outcome defects() {
  Outcome o;
  o.require(mult_defect(V, Vi) == P0, "defect(V, V^-1) differs from P0");
  Gen g(1003);
  for (const auto& big_n : {SupernaturalNumber::finite(6), SupernaturalNumber::prime_power_infinite(2)}) {
    const auto periods = finite_divisors(big_n, 8);
    for (int t = 0; t < 50; ++t) {
      o.require(is_compact(mult_defect(g.bilateral(periods), g.bilateral(periods))), "noncompact defect");
    }
  }
  if (o.pass) o.detail = "100 pairs compact; defect(V, V^-1) = P0";
  return o;
}

Outcome compacts() {
  Outcome o;
  Gen g(1004);
  const std::vector<SupernaturalNumber> moduli{SupernaturalNumber::finite(2), SupernaturalNumber::finite(6),
                                               SupernaturalNumber::prime_power_infinite(2)};
  for (int t = 0; t < 50; ++t) {
    const auto& big_n = moduli[static_cast<std::size_t>(t % 3)];
    const auto d = g.derivation(big_n, finite_divisors(big_n, 8));
    for (int r = 0; r <= 3; ++r) {
      for (int s = 0; s <= 3; ++s) {
        o.require(is_compact(apply(d, upow(U, r) * P0 * upow(Us, s))), "image of a basis compact is noncompact");
      }
    }
  }
  if (o.pass) o.detail = "50 derivations x 16 compacts";
  return o;
}

Outcome classification() {
  Outcome o;
  Gen g(1005);
  const auto two = SupernaturalNumber::finite(2);
  const auto six = SupernaturalNumber::finite(6);
  const auto two_inf = SupernaturalNumber::prime_power_infinite(2);
  struct Regime {
    SupernaturalNumber big_n;
    std::vector<std::int64_t> degrees;
  };
  for (const Regime& regime : {Regime{two, {-4, -2, 0, 2, 4}}, Regime{six, {-6, 0, 6}}, Regime{two_inf, {0}}}) {
    for (int t = 0; t < 100; ++t) {
      const std::int64_t n = g.pick(regime.degrees);
      const auto d = covariant(n, g.affine(n, regime.big_n, finite_divisors(regime.big_n, 8)), regime.big_n);
      o.require(reassemble(classify(d), n, regime.big_n) == d, "round trip failed");
    }
  }
  for (const auto& [n, big_n] : std::vector<std::pair<std::int64_t, SupernaturalNumber>>{{1, two}, {3, six}, {2, two_inf}}) {
    bool rejected = false;
    try {
      covariant(n, AffineSequence::label_plus_one(), big_n);
    } catch (const Error& e) {
      rejected = e.kind() == ErrorKind::UnboundedCoefficient;
    }
    o.require(rejected, "C != 0 accepted in the bounded regime");
    bool refused = false;
    try {
      classify(covariant(n, AffineSequence::bounded(EPSequence::constant(Scalar(1))), big_n));
    } catch (const Error& e) {
      refused = e.kind() == ErrorKind::RegimeMismatch;
    }
    o.require(refused, "classify ran in the bounded regime");
  }
  for (int t = 0; t < 100; ++t) {
    o.require(obstruction_gap(0, six, g.ep({1, 2, 3, 6})) >= 1, "obstruction gap below 1");
  }
  if (o.pass) o.detail = "300 round trips, bounded-regime rejection, 100 gaps >= 1";
  return o;
}

Outcome fejer() {
  Outcome o;
  Gen g(1006);
  const auto big_n = SupernaturalNumber::finite(1);
  constexpr std::int64_t kWindow = 64;
  for (int t = 0; t < 5; ++t) {
    // Inner derivations have bounded components, so every d_n(U) is a bounded operator.
    UnilateralElement::Terms terms;
    for (int i = 0; i < 4; ++i) terms[g.integer(-8, 8)] = EPSequence::constant(g.nonzero_scalar());
    const auto d = from_inner(UnilateralElement(std::move(terms)), big_n);
    std::int64_t max_n = 0;
    double sum_norms = 0.0;
    for (const auto& [n, beta] : d.components()) {
      max_n = std::max(max_n, std::abs(n));
      sum_norms += norm_lower(apply(DerivationSum::single(d.component(n)), U), kWindow).value;
    }
    double previous = 1e300;
    for (std::int64_t m : {8, 16, 32, 64}) {
      const auto mean = fejer_mean(d, m);
      // Symbolic pattern: d - F_M d = sum_n |n|/(M+1) d_n.
      DerivationSum::Components expected;
      for (const auto& [n, beta] : d.components()) {
        o.require(mean.component(n).beta() == beta.scaled(Scalar(fejer_weight(n, m))), "Fejer weight mismatch");
        const Rational w = make_rational(std::abs(n), m + 1);
        if (w != 0) expected.emplace(n, beta.scaled(Scalar(w)));
      }
      o.require(d - mean == DerivationSum(big_n, std::move(expected)), "Fejer residual pattern mismatch");
      const double residual = norm_lower(apply(d, U) - apply(mean, U), kWindow).value;
      const double bound = static_cast<double>(max_n) / static_cast<double>(m + 1) * sum_norms;
      o.require(residual <= bound * (1 + 1e-9) + 1e-12, str("residual above bound at M =", static_cast<double>(m)));
      o.require(residual < previous || residual == 0.0, str("residual not decreasing at M =", static_cast<double>(m)));
      previous = residual;
    }
  }
  if (o.pass) o.detail = "M = 8, 16, 32, 64: exact weights, decreasing residual under the bound";
  return o;
}

Outcome finite_classification() {
  Outcome o;
  Gen g(1007);
  for (std::int64_t n : {2, 3, 4}) {
    const auto big_n = SupernaturalNumber::finite(n);
    const auto periods = finite_divisors(big_n, n);
    const auto vn = bilateral_power(V, static_cast<unsigned>(n));
    for (int t = 0; t < 50; ++t) {
      const auto f = g.laurent(2);
      o.require(extract_f(d_f_build(f, big_n)) == f, "extract_f(d_f) != f");
      const auto mixed = d_f_build(f, big_n) + from_inner(g.unilateral(periods), big_n);
      o.require(extract_f(mixed) == f, "extract_f misses f on d_f + inner");
      const auto rest = mixed - d_f_build(f, big_n);
      for (const auto& kv : rest.components()) {
        if (!is_bounded_regime(kv.first, big_n)) {
          o.require(classify(rest.component(kv.first)).linear.is_zero(), "remainder has C_n != 0");
        }
      }
      const std::int64_t deg = n * g.integer(-2, 2);
      const auto dn = covariant(deg, g.affine(deg, big_n, periods), big_n);
      const auto expected =
          BilateralElement::monomial(deg + n, LocallyConstantFunction::constant(Scalar(n) * classify(dn).linear));
      o.require(bilateral_apply(quotient_derivation(dn), vn) == expected, "[d_n](V^N) != N C_n V^(n+N)");
    }
  }
  if (o.pass) o.detail = "N = 2, 3, 4: 150 f recovered, remainders inner, quotient image identity";
  return o;
}

Outcome delta_and_h() {
  Outcome o;
  Gen g(1008);
  for (int t = 0; t < 50; ++t) {
    const std::int64_t n = 2 + t % 2;
    const auto f = g.laurent(2);
    const auto x = g.matrix(n);
    const auto y = g.matrix(n);
    o.require(delta_f_apply(f, x * y) == delta_f_apply(f, x) * y + x * delta_f_apply(f, y), "Leibniz fails");
  }
  for (std::int64_t n : {2, 3}) {
    for (int t = 0; t < 10; ++t) {
      const auto x = g.matrix(n);
      std::map<std::pair<std::int64_t, std::int64_t>, MatrixTrigPoly> images;
      for (std::int64_t r = 0; r < n; ++r) {
        for (std::int64_t s = 0; s < n; ++s) images[{r, s}] = matrix_commutator(x, MatrixTrigPoly::unit(n, r, s));
      }
      const auto h = inner_part_H(images, n);
      for (const auto& [rs, image] : images) {
        o.require(matrix_commutator(h, MatrixTrigPoly::unit(n, rs.first, rs.second)) == image, "[H, A] mismatch");
      }
    }
  }
  if (o.pass) o.detail = "50 Leibniz pairs; H reproduces all matrix-unit images for N = 2, 3";
  return o;
}

Outcome gns_suite() {
  Outcome o;
  Gen g(1009);
  o.require(tau0(BilateralElement::identity()) == Scalar(1) && tau_haar(BilateralElement::identity()) == Scalar(1),
            "states are not normalized");
  for (int t = 0; t < 100; ++t) {
    const auto b = g.bilateral({1, 2, 4});
    const auto bb = bilateral_adjoint(b) * b;
    o.require(tau0(bb).is_real() && tau0(bb).re >= 0, "tau0 not positive");
    o.require(tau_haar(bb).is_real() && tau_haar(bb).re >= 0, "tau_Haar not positive");
    o.require(inner(GNSVector0::basis(0), pi0_apply(b, GNSVector0::basis(0))) == tau0(b), "tau0 not reproduced");
    const auto chi = GNSVectorHaar::cyclic(4);
    o.require(inner(chi, pi_haar_apply(b, chi)) == tau_haar(b), "tau_Haar not reproduced");
  }

  const auto two = SupernaturalNumber::finite(2);
  const auto three = SupernaturalNumber::finite(3);
  const auto two_inf = SupernaturalNumber::prime_power_infinite(2);
  std::vector<ImplementationData> all{
      make_implementation(1, ImplementationCase::Bounded, Scalar(0), g.lcf(3), three, 0, g.lcf(3)),
      make_implementation(2, ImplementationCase::Bounded, Scalar(0), g.lcf(4), two_inf, 4, g.lcf(4)),
      make_implementation(2, ImplementationCase::FiniteDivisible, Scalar(0), g.lcf(2), two),
      make_implementation(2, ImplementationCase::FiniteDivisible, Scalar(1), g.lcf(2), two, 0, g.lcf(2)),
      make_implementation(-2, ImplementationCase::FiniteDivisible, Scalar(make_rational(1, 2)), g.lcf(2), two),
      make_implementation(0, ImplementationCase::InfiniteInvariant, Scalar(0), g.mean_zero_lcf(4), two_inf, 4),
      make_implementation(0, ImplementationCase::InfiniteInvariant, Scalar(1), g.mean_zero_lcf(4), two_inf, 4,
                          g.lcf(2), g.scalar()),
  };
  for (const auto& data : all) {
    for (GNSState state : {GNSState::Tau0, GNSState::Haar}) {
      const bool haar = state == GNSState::Haar;
      const auto labels = haar ? haar_labels(64, data.level) : tau0_labels(64);
      const double residual = check_covariance(haar ? build_D_haar(data, 64) : build_D_tau0(data, 64), labels, data.n, 16);
      o.require(residual < 1e-12, str("covariance residual", residual));
      const auto periods = finite_divisors(data.modulus, data.level);
      for (int t = 0; t < 3; ++t) {
        const auto check = check_implementation(data, state, g.bilateral(periods, 2, 2), 16);
        o.require(check.exact, to_string(data.kind) + " implementation not exact");
      }
    }
  }

  // Regime matrix: bounded / linear data, both states, C zero and nonzero where the regime allows it.
  const std::vector<ImplementationData> matrix{all[0], all[1], all[2], all[3], all[5], all[6]};
  int cases = 0;
  for (const auto& data : matrix) {
    for (GNSState state : {GNSState::Tau0, GNSState::Haar}) {
      ++cases;
      const auto rep = parametrix_report(data, state, {64, 128, 256});
      const std::string tag = to_string(data.kind) + "/" + to_string(state);
      o.require(rep.predicate == parametrix_predicate(data, state), tag + " predicate mismatch");
      o.require((rep.verdict == "compact-parametrix-consistent") == rep.predicate, tag + " verdict mismatch");
      if (rep.predicate) {
        o.require(rep.growth.size() == 2, tag + " missing growth factors");
        for (double gr : rep.growth) o.require(gr >= kGrowthThreshold, tag + str(" growth", gr));
      }
    }
  }
  if (o.pass) o.detail = "states, identities, 14 D operators, " + std::to_string(cases) + "-case parametrix matrix";
  return o;
}

Outcome naturality() {
  Outcome o;
  Gen g(1010);
  const std::vector<SupernaturalNumber> moduli{SupernaturalNumber::finite(2), SupernaturalNumber::finite(6),
                                               SupernaturalNumber::prime_power_infinite(2)};
  for (int t = 0; t < 100; ++t) {
    const auto& big_n = moduli[static_cast<std::size_t>(t % 3)];
    const auto periods = finite_divisors(big_n, 8);
    const auto d = g.derivation(big_n, periods);
    const auto a = g.unilateral(periods, 3);
    o.require(quotient(apply(d, a)) == bilateral_apply(quotient_derivation(d), quotient(a)), "naturality fails");
  }
  if (o.pass) o.detail = "100 random (d, a)";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1 products agree with the operator oracle", 60, products},
      {"2 matrix units", 5, units},
      {"3 multiplicative defects are compact", 0, defects},
      {"4 derivations preserve compacts", 0, compacts},
      {"5 classification round trips", 0, classification},
      {"6 Fejer convergence", 30, fejer},
      {"7 finite-N classification", 0, finite_classification},
      {"8 delta_f and H", 0, delta_and_h},
      {"9 GNS suite", 300, gns_suite},
      {"10 quotient naturality", 0, naturality},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
      o.pass = false;
      o.detail += str("; over the time limit of", c.limit_seconds);
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s  %-44s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.name, seconds, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
