#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bdshift/algebra.hpp"
#include "bdshift/derivations.hpp"
#include "bdshift/numerics.hpp"

namespace bdshift {

/// E(b) = b_0.
LocallyConstantFunction expectation(const BilateralElement& b);
Scalar tau0(const BilateralElement& b);
Scalar tau_haar(const BilateralElement& b);

/// Finitely supported vector of l^2(Z); key l stands for E_l.
class GNSVector0 {
 public:
  using Entries = std::map<std::int64_t, Scalar>;
  GNSVector0() = default;
  explicit GNSVector0(Entries e);
  static GNSVector0 basis(std::int64_t l);

  const Entries& entries() const { return entries_; }
  Scalar at(std::int64_t l) const;
  friend bool operator==(const GNSVector0&, const GNSVector0&) = default;

 private:
  Entries entries_;
};

Scalar inner(const GNSVector0& u, const GNSVector0& v);
GNSVector0 pi0_apply(const BilateralElement& b, const GNSVector0& v);

/// Finitely supported f(m, x) on Z x Z/jZ with normalized counting measure in x.
class GNSVectorHaar {
 public:
  using Entries = std::map<std::pair<std::int64_t, std::int64_t>, Scalar>;
  explicit GNSVectorHaar(std::int64_t level = 1);
  GNSVectorHaar(std::int64_t level, Entries e);
  /// chi_0: 1 on m = 0 for every x.
  static GNSVectorHaar cyclic(std::int64_t level);

  std::int64_t level() const { return level_; }
  const Entries& entries() const { return entries_; }
  Scalar at(std::int64_t m, std::int64_t x) const;
  friend bool operator==(const GNSVectorHaar&, const GNSVectorHaar&) = default;

 private:
  std::int64_t level_;
  Entries entries_;
};

Scalar inner(const GNSVectorHaar& u, const GNSVectorHaar& v);
/// (pi(V^n b) f)(m, x) = b(x + m - n) f(m - n, x). Throws LevelMismatch if a period of b
/// does not divide the level.
GNSVectorHaar pi_haar_apply(const BilateralElement& b, const GNSVectorHaar& v);

enum class ImplementationCase {
  Bounded,            // eta = h, bounded regime
  InfiniteInvariant,  // N infinite, n = 0: increments C + g
  FiniteDivisible,    // N finite, N | n: eta = C l + h
};

std::string to_string(ImplementationCase c);

struct ImplementationData {
  std::int64_t n = 0;
  ImplementationCase kind = ImplementationCase::Bounded;
  Scalar linear;                // C_n (zero in the bounded case)
  LocallyConstantFunction fn;   // h_n, g_0 (mean zero) or h_n according to kind
  LocallyConstantFunction psi;  // Haar implementations
  Scalar shift_constant;        // c, tau_0 with n = 0
  std::int64_t level = 1;       // size of the x-fibre for the Haar space
  SupernaturalNumber modulus;
};

/// Validates the case tag against (N, n) and the level against N.
ImplementationData make_implementation(std::int64_t n, ImplementationCase kind, Scalar linear,
                                       LocallyConstantFunction fn, const SupernaturalNumber& big_n,
                                       std::int64_t level = 0, LocallyConstantFunction psi = {},
                                       Scalar shift_constant = Scalar(0));
/// Case data read off a bilateral covariant derivation.
ImplementationData implementation_from(const BilateralCovariantData& d, std::int64_t level = 0);
/// The derivation implemented by the data.
BilateralCovariantData implemented_derivation(const ImplementationData& data);

/// Window E_{-M..M}; index r stands for E_{r - M}.
ExactMatrix build_D_tau0_exact(const ImplementationData& data, std::int64_t m);
DenseMatrix build_D_tau0(const ImplementationData& data, std::int64_t m);
/// Window |m| <= M, x in [0, level); index (m + M) * level + x.
ExactMatrix build_D_haar_exact(const ImplementationData& data, std::int64_t m);
DenseMatrix build_D_haar(const ImplementationData& data, std::int64_t m);
ExactMatrix pi0_matrix(const BilateralElement& b, std::int64_t m);
ExactMatrix pi_haar_matrix(const BilateralElement& b, std::int64_t m, std::int64_t level);

/// Spectral label m of every basis index.
std::vector<std::int64_t> tau0_labels(std::int64_t m);
std::vector<std::int64_t> haar_labels(std::int64_t m, std::int64_t level);

/// max over theta_q = 2 pi q / grid of the Frobenius norm of Phi D Phi^{-1} - e^{in theta} D.
double check_covariance(const DenseMatrix& d, const std::vector<std::int64_t>& labels, std::int64_t n,
                        std::int64_t grid);

enum class GNSState { Tau0, Haar };
std::string to_string(GNSState s);

struct ImplementationCheck {
  std::int64_t margin = 0;
  bool exact = false;
  double max_deviation = 0.0;
};

/// Compares [D, pi(b)] with pi(delta(b)) on the window shrunk by |n| + deg(b).
/// Throws WindowTooSmall when nothing is left.
ImplementationCheck check_implementation(const ImplementationData& data, GNSState state, const BilateralElement& b,
                                         std::int64_t m);

struct ParametrixReport {
  GNSState state = GNSState::Tau0;
  std::vector<std::int64_t> windows;
  /// min eigenvalue of (I + D*D)^{1/2} over the shell M/2 < |m| <= M.
  std::vector<double> min_sv;
  std::vector<double> growth;
  bool diverges = false;
  /// Level sweep (infinite N Haar only): eigenvalues of D*D below 3 at |m| <= first window.
  std::vector<std::int64_t> levels;
  std::vector<std::int64_t> small_counts;
  bool fibres_grow = false;
  bool numeric_positive = false;
  bool predicate = false;
  std::string predicate_text;
  std::string verdict;
};

inline constexpr double kGrowthThreshold = 1.5;

/// Closed-form criterion for compact parametrices, read off the data.
bool parametrix_predicate(const ImplementationData& data, GNSState state);
ParametrixReport parametrix_report(const ImplementationData& data, GNSState state,
                                   const std::vector<std::int64_t>& windows = {64, 128, 256});

}  // namespace bdshift
