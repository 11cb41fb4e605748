#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bdshift/algebra.hpp"

namespace bdshift {

using DenseMatrix = Eigen::MatrixXcd;

/// Sparse exact-rational matrix; rows are stored as ordered column maps.
class ExactMatrix {
 public:
  ExactMatrix(std::int64_t rows, std::int64_t cols);

  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }
  Scalar at(std::int64_t r, std::int64_t c) const;
  /// Adds v to entry (r, c); out-of-range indices are ignored.
  void add(std::int64_t r, std::int64_t c, const Scalar& v);
  const std::map<std::int64_t, Scalar>& row(std::int64_t r) const { return data_[static_cast<std::size_t>(r)]; }

  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix operator-(const ExactMatrix& o) const;
  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix adjoint() const;
  DenseMatrix to_dense() const;
  /// True when the leading rows x cols block is zero.
  bool is_zero_on(std::int64_t rows, std::int64_t cols) const;

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  std::int64_t rows_;
  std::int64_t cols_;
  std::vector<std::map<std::int64_t, Scalar>> data_;
};

/// Compression to span{E_0, ..., E_{M-1}}: a degree-n term puts w(k) at (k + n, k).
ExactMatrix truncate_unilateral_exact(const UnilateralElement& a, std::int64_t m);
DenseMatrix truncate_unilateral(const UnilateralElement& a, std::int64_t m);
/// Compression to span{E_lo, ..., E_hi}; row/column r stands for E_{lo + r}.
ExactMatrix truncate_bilateral_exact(const BilateralElement& b, std::int64_t lo, std::int64_t hi);
DenseMatrix truncate_bilateral(const BilateralElement& b, std::int64_t lo, std::int64_t hi);

struct TruncationReport {
  std::int64_t window = 0;       // M
  std::int64_t margin = 0;       // D
  bool exact_match = false;      // rational path, zero tolerance
  double max_deviation = 0.0;    // float path, interior window
  double relative_deviation = 0.0;
  bool float_match = false;      // relative deviation <= 1e-12
  std::string verdict;
};

/// Compares truncate(a b) with truncate(a) truncate(b) on indices < M - D.
/// Throws WindowTooSmall unless M > 2 D.
TruncationReport oracle_product_check(const UnilateralElement& a, const UnilateralElement& b, std::int64_t m);
/// Same on the window E_{-M..M} for bilateral elements.
TruncationReport oracle_bilateral_product_check(const BilateralElement& a, const BilateralElement& b,
                                                std::int64_t m);

struct NormEstimate {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

inline constexpr double kPowerTolerance = 1e-10;
inline constexpr int kPowerIterationCap = 10000;
inline constexpr std::uint64_t kPowerSeed = 0x5eed5eedULL;

/// Largest singular value by power iteration on the Gram matrix (fixed seed).
NormEstimate largest_singular_value(const DenseMatrix& a);
/// Operator-norm lower bound from the M x M truncation.
NormEstimate norm_lower(const UnilateralElement& a, std::int64_t m);

/// diag(e^{ik theta}) T diag(e^{-ik theta}) for the M x M truncation T.
DenseMatrix rho_theta(const UnilateralElement& a, double theta, std::int64_t m);
/// (1/Q) sum_q e^{-i n theta_q} rho_{theta_q}(a) on Q uniform nodes.
DenseMatrix numeric_spectral_component(const UnilateralElement& a, std::int64_t n, std::int64_t m,
                                       std::int64_t nodes);

struct QuotientNormEstimate {
  double value = 0.0;
  /// (grid size, max over that grid), coarse to fine.
  std::vector<std::pair<std::int64_t, double>> refinement;
};

/// Complex N x N matrix of the matrix form at z = e^{it}.
DenseMatrix evaluate_matrix_form(const MatrixTrigPoly& f, double t);
/// max over a uniform grid of the spectral norm of the matrix form. Throws NotFinite.
QuotientNormEstimate quotient_norm_estimate(const BilateralElement& b, const SupernaturalNumber& n,
                                            std::int64_t grid);

/// Lines "row,col,re,im" for the nonzero entries, with a header line.
std::string to_csv(const DenseMatrix& m);

}  // namespace bdshift
