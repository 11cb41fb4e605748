#include "bdshift/numerics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "bdshift/error.hpp"

namespace bdshift {

ExactMatrix::ExactMatrix(std::int64_t rows, std::int64_t cols) : rows_(rows), cols_(cols) {
  require(rows >= 0 && cols >= 0, ErrorKind::InvalidArgument, "matrix dimensions must be non-negative");
  data_.resize(static_cast<std::size_t>(rows));
}

Scalar ExactMatrix::at(std::int64_t r, std::int64_t c) const {
  const auto& row = data_.at(static_cast<std::size_t>(r));
  auto it = row.find(c);
  return it == row.end() ? Scalar(0) : it->second;
}

void ExactMatrix::add(std::int64_t r, std::int64_t c, const Scalar& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_ || v.is_zero()) return;
  auto& row = data_[static_cast<std::size_t>(r)];
  auto [it, inserted] = row.emplace(c, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) row.erase(it);
  }
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::InvalidArgument, "matrix shapes differ");
  ExactMatrix out = *this;
  for (std::int64_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : o.row(r)) out.add(r, c, v);
  }
  return out;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::InvalidArgument, "matrix shapes differ");
  ExactMatrix out = *this;
  for (std::int64_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : o.row(r)) out.add(r, c, -v);
  }
  return out;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  require(cols_ == o.rows_, ErrorKind::InvalidArgument, "matrix shapes do not compose");
  ExactMatrix out(rows_, o.cols_);
  for (std::int64_t r = 0; r < rows_; ++r) {
    for (const auto& [k, v] : row(r)) {
      for (const auto& [c, w] : o.row(k)) out.add(r, c, v * w);
    }
  }
  return out;
}

ExactMatrix ExactMatrix::adjoint() const {
  ExactMatrix out(cols_, rows_);
  for (std::int64_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : row(r)) out.add(c, r, v.conj());
  }
  return out;
}

DenseMatrix ExactMatrix::to_dense() const {
  DenseMatrix out = DenseMatrix::Zero(rows_, cols_);
  for (std::int64_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : row(r)) out(r, c) = v.to_complex();
  }
  return out;
}

bool ExactMatrix::is_zero_on(std::int64_t rows, std::int64_t cols) const {
  for (std::int64_t r = 0; r < std::min(rows, rows_); ++r) {
    const auto& rw = row(r);
    if (!rw.empty() && rw.begin()->first < cols) return false;
  }
  return true;
}

ExactMatrix truncate_unilateral_exact(const UnilateralElement& a, std::int64_t m) {
  require(m >= 1, ErrorKind::InvalidArgument, "window must be >= 1");
  ExactMatrix out(m, m);
  for (const auto& [n, coeff] : a.terms()) {
    EPSequence w = column_weight(n, coeff);
    for (std::int64_t k = std::max<std::int64_t>(0, -n); k < m && k + n < m; ++k) out.add(k + n, k, w(k));
  }
  return out;
}

DenseMatrix truncate_unilateral(const UnilateralElement& a, std::int64_t m) {
  return truncate_unilateral_exact(a, m).to_dense();
}

ExactMatrix truncate_bilateral_exact(const BilateralElement& b, std::int64_t lo, std::int64_t hi) {
  require(hi >= lo, ErrorKind::InvalidArgument, "empty bilateral window");
  const std::int64_t size = hi - lo + 1;
  ExactMatrix out(size, size);
  for (const auto& [n, coeff] : b.terms()) {
    for (std::int64_t l = lo; l <= hi; ++l) out.add(l + n - lo, l - lo, coeff(l));
  }
  return out;
}

DenseMatrix truncate_bilateral(const BilateralElement& b, std::int64_t lo, std::int64_t hi) {
  return truncate_bilateral_exact(b, lo, hi).to_dense();
}

namespace {

/// Fills the comparison fields given symbolic and matrix products on [0, inner)^2.
void compare_blocks(const ExactMatrix& symbolic, const ExactMatrix& product, const DenseMatrix& fsym,
                    const DenseMatrix& fprod, std::int64_t offset, std::int64_t inner, TruncationReport& report) {
  report.exact_match = true;
  double dev = 0.0;
  double scale = 0.0;
  for (std::int64_t i = offset; i < offset + inner; ++i) {
    for (std::int64_t j = offset; j < offset + inner; ++j) {
      if (symbolic.at(i, j) != product.at(i, j)) report.exact_match = false;
      dev = std::max(dev, std::abs(fsym(i, j) - fprod(i, j)));
      scale = std::max(scale, std::abs(fsym(i, j)));
    }
  }
  report.max_deviation = dev;
  report.relative_deviation = scale > 0 ? dev / scale : dev;
  report.float_match = report.relative_deviation <= 1e-12;
  report.verdict = report.exact_match && report.float_match ? "match" : "mismatch";
}

}  // namespace

TruncationReport oracle_product_check(const UnilateralElement& a, const UnilateralElement& b, std::int64_t m) {
  TruncationReport report;
  report.window = m;
  report.margin = a.max_abs_degree() + b.max_abs_degree();
  require(m > 2 * report.margin, ErrorKind::WindowTooSmall,
          "window " + std::to_string(m) + " must exceed twice the margin " + std::to_string(report.margin));
  ExactMatrix ta = truncate_unilateral_exact(a, m);
  ExactMatrix tb = truncate_unilateral_exact(b, m);
  ExactMatrix symbolic = truncate_unilateral_exact(multiply(a, b), m);
  ExactMatrix product = ta * tb;
  DenseMatrix fprod = ta.to_dense() * tb.to_dense();
  compare_blocks(symbolic, product, symbolic.to_dense(), fprod, 0, m - report.margin, report);
  return report;
}

TruncationReport oracle_bilateral_product_check(const BilateralElement& a, const BilateralElement& b,
                                                std::int64_t m) {
  TruncationReport report;
  report.window = m;
  report.margin = a.max_abs_degree() + b.max_abs_degree();
  require(m > 2 * report.margin, ErrorKind::WindowTooSmall,
          "window " + std::to_string(m) + " must exceed twice the margin " + std::to_string(report.margin));
  ExactMatrix ta = truncate_bilateral_exact(a, -m, m);
  ExactMatrix tb = truncate_bilateral_exact(b, -m, m);
  ExactMatrix symbolic = truncate_bilateral_exact(bilateral_multiply(a, b), -m, m);
  ExactMatrix product = ta * tb;
  DenseMatrix fprod = ta.to_dense() * tb.to_dense();
  compare_blocks(symbolic, product, symbolic.to_dense(), fprod, report.margin, 2 * (m - report.margin) + 1, report);
  return report;
}

NormEstimate largest_singular_value(const DenseMatrix& a) {
  NormEstimate out;
  if (a.size() == 0) {
    out.converged = true;
    return out;
  }
  const DenseMatrix gram = a.adjoint() * a;
  std::mt19937_64 rng(kPowerSeed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(gram.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {gauss(rng), gauss(rng)};
  v.normalize();
  double lambda = 0.0;
  for (int it = 1; it <= kPowerIterationCap; ++it) {
    Eigen::VectorXcd w = gram * v;
    const double next = std::real(v.dot(w));
    out.iterations = it;
    const double norm = w.norm();
    if (norm == 0.0) {
      lambda = 0.0;
      out.converged = true;
      break;
    }
    // Stop on the eigen-residual; a stalled Rayleigh quotient alone can sit well below the top eigenvalue.
    const double residual = (w - next * v).norm();
    v = w / norm;
    lambda = next;
    if (residual <= kPowerTolerance * std::max(1.0, std::abs(next))) {
      out.converged = true;
      break;
    }
  }
  out.value = std::sqrt(std::max(lambda, 0.0));
  return out;
}

NormEstimate norm_lower(const UnilateralElement& a, std::int64_t m) {
  return largest_singular_value(truncate_unilateral(a, m));
}

DenseMatrix rho_theta(const UnilateralElement& a, double theta, std::int64_t m) {
  DenseMatrix t = truncate_unilateral(a, m);
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    for (Eigen::Index j = 0; j < t.cols(); ++j) {
      if (t(i, j) != 0.0) t(i, j) *= std::polar(1.0, static_cast<double>(i - j) * theta);
    }
  }
  return t;
}

DenseMatrix numeric_spectral_component(const UnilateralElement& a, std::int64_t n, std::int64_t m,
                                       std::int64_t nodes) {
  require(nodes >= 1, ErrorKind::InvalidArgument, "need at least one quadrature node");
  DenseMatrix acc = DenseMatrix::Zero(m, m);
  for (std::int64_t q = 0; q < nodes; ++q) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(nodes);
    acc += std::polar(1.0, -static_cast<double>(n) * theta) * rho_theta(a, theta, m);
  }
  return acc / static_cast<double>(nodes);
}

DenseMatrix evaluate_matrix_form(const MatrixTrigPoly& f, double t) {
  DenseMatrix out(f.size(), f.size());
  for (std::int64_t r = 0; r < f.size(); ++r) {
    for (std::int64_t c = 0; c < f.size(); ++c) out(r, c) = f.at(r, c).evaluate(t);
  }
  return out;
}

QuotientNormEstimate quotient_norm_estimate(const BilateralElement& b, const SupernaturalNumber& n,
                                            std::int64_t grid) {
  require(grid >= 1, ErrorKind::InvalidArgument, "grid size must be >= 1");
  const MatrixTrigPoly f = to_matrix_form(b, n);
  QuotientNormEstimate out;
  std::vector<std::int64_t> sizes;
  for (std::int64_t g = grid; g >= 1 && sizes.size() < 3; g /= 2) {
    sizes.insert(sizes.begin(), g);
    if (g % 2 != 0) break;
  }
  for (std::int64_t g : sizes) {
    double best = 0.0;
    for (std::int64_t q = 0; q < g; ++q) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(g);
      Eigen::JacobiSVD<DenseMatrix> svd(evaluate_matrix_form(f, t));
      best = std::max(best, svd.singularValues()(0));
    }
    out.refinement.emplace_back(g, best);
    out.value = std::max(out.value, best);
  }
  return out;
}

std::string to_csv(const DenseMatrix& m) {
  std::ostringstream os;
  os.precision(17);
  os << "row,col,re,im\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m(r, c) == 0.0) continue;
      os << r << ',' << c << ',' << m(r, c).real() << ',' << m(r, c).imag() << '\n';
    }
  }
  return os.str();
}

}  // namespace bdshift
