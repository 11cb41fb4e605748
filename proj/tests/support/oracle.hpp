#pragma once

// Reference semantics written directly from the operator definitions. Operators are infinite
// band matrices evaluated entry by entry, so products are exact with no truncation effects.
// Only coefficient evaluation is borrowed from the library.

#include <functional>
#include <string>

#include "bdshift/algebra.hpp"
#include "bdshift/sequences.hpp"

namespace bdshift::testing {

struct LazyOp {
  std::function<Scalar(std::int64_t, std::int64_t)> entry;  // <e_row, T e_col>
  std::int64_t band = 0;
  bool half_line = true;  // indices in N (unilateral) or Z (bilateral)

  Scalar operator()(std::int64_t row, std::int64_t col) const {
    if (half_line && (row < 0 || col < 0)) return Scalar(0);
    if (row - col > band || col - row > band) return Scalar(0);
    return entry(row, col);
  }
};

/// U^n c(K) for n >= 0; c(K) (U*)^p for n = -p.
inline LazyOp oracle(const UnilateralElement& a) {
  return {[a](std::int64_t i, std::int64_t j) {
            const std::int64_t n = i - j;
            const EPSequence c = a.coefficient(n);
            return n >= 0 ? c(j) : c(i);
          },
          a.max_abs_degree(), true};
}

/// V^n b(L): e_l -> b(l) e_{l+n}.
inline LazyOp oracle(const BilateralElement& b) {
  return {[b](std::int64_t i, std::int64_t j) { return b.coefficient(i - j)(j); }, b.max_abs_degree(), false};
}

/// The unbounded generator U^n beta(K) of a covariant derivation, same side convention.
inline LazyOp oracle_generator(std::int64_t n, const AffineSequence& beta) {
  return {[n, beta](std::int64_t i, std::int64_t j) {
            if (i - j != n) return Scalar(0);
            return n >= 0 ? beta(j) : beta(i);
          },
          n < 0 ? -n : n, true};
}

inline LazyOp oracle_generator(std::int64_t n, const BilateralAffineSequence& eta) {
  return {[n, eta](std::int64_t i, std::int64_t j) { return i - j == n ? eta(j) : Scalar(0); }, n < 0 ? -n : n,
          false};
}

inline LazyOp operator*(const LazyOp& x, const LazyOp& y) {
  return {[x, y](std::int64_t i, std::int64_t j) {
            Scalar s;
            for (std::int64_t k = j - y.band; k <= j + y.band; ++k) {
              if (x.half_line && k < 0) continue;
              s += x(i, k) * y(k, j);
            }
            return s;
          },
          x.band + y.band, x.half_line};
}

inline LazyOp operator+(const LazyOp& x, const LazyOp& y) {
  return {[x, y](std::int64_t i, std::int64_t j) { return x(i, j) + y(i, j); }, std::max(x.band, y.band),
          x.half_line};
}

inline LazyOp operator-(const LazyOp& x, const LazyOp& y) {
  return {[x, y](std::int64_t i, std::int64_t j) { return x(i, j) - y(i, j); }, std::max(x.band, y.band),
          x.half_line};
}

inline LazyOp adjoint_of(const LazyOp& x) {
  return {[x](std::int64_t i, std::int64_t j) { return x(j, i).conj(); }, x.band, x.half_line};
}

inline LazyOp commutator_of(const LazyOp& x, const LazyOp& y) { return x * y - y * x; }

/// Empty when equal on rows/cols [lo, hi); otherwise the first differing entry.
inline std::string compare(const LazyOp& x, const LazyOp& y, std::int64_t lo, std::int64_t hi) {
  for (std::int64_t j = lo; j < hi; ++j) {
    for (std::int64_t i = std::max(lo, j - std::max(x.band, y.band));
         i < std::min(hi, j + std::max(x.band, y.band) + 1); ++i) {
      if (x(i, j) != y(i, j)) {
        return "(" + std::to_string(i) + "," + std::to_string(j) + "): " + to_string(x(i, j)) +
               " vs " + to_string(y(i, j));
      }
    }
  }
  return {};
}

}  // namespace bdshift::testing
