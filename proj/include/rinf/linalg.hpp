#pragma once

#include <vector>

#include "rinf/rational.hpp"

namespace rinf {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;  // row-major

inline Vec zero_vec(std::size_t n) { return Vec(n, Rational(0)); }

inline bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec scale(const Rational& c, const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

// Gaussian elimination over the rationals; exact.  Returns the rank and
// leaves `m` in row echelon form.
inline std::size_t echelonize(Mat& m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c].is_zero()) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank(Mat m) { return echelonize(m); }

// Basis of the right kernel {x : m x = 0}.
inline std::vector<Vec> kernel_basis(Mat m) {
  if (m.empty()) return {};
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    Rational inv = Rational(1) / m[rank][c];
    for (std::size_t k = c; k < cols; ++k) m[rank][k] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c].is_zero()) continue;
      Rational f = m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    Vec x = zero_vec(cols);
    x[c] = Rational(1);
    for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = -m[r][c];
    basis.push_back(std::move(x));
  }
  return basis;
}

// Solves a x = b for one solution; empty result means inconsistent.
inline std::pair<bool, Vec> solve(Mat a, Vec b) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t r = 0; r < rows; ++r) a[r].push_back(b[r]);
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[rank], a[pivot]);
    Rational inv = Rational(1) / a[rank][c];
    for (std::size_t k = c; k <= cols; ++k) a[rank][k] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c].is_zero()) continue;
      Rational f = a[r][c];
      for (std::size_t k = c; k <= cols; ++k) a[r][k] -= f * a[rank][k];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (!a[r][cols].is_zero()) return {false, {}};
  Vec x = zero_vec(cols);
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = a[r][cols];
  return {true, x};
}

inline Rational det(Mat m) {
  std::size_t n = m.size();
  Rational d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c].is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != c) { std::swap(m[c], m[pivot]); d = -d; }
    d *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

}  // namespace rinf
