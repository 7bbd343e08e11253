#pragma once

// Exact Gaussian elimination over Q or K, used for kernels and span tests.

#include <optional>
#include <vector>

#include "pbw/coeffield.hpp"

namespace pbw {

inline bool is_zero_value(const Rational& x) { return x == 0; }
inline bool is_zero_value(const RationalFunction& x) { return x.is_zero(); }

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& a, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < a.size(); ++col) {
    std::size_t piv = row;
    while (piv < a.size() && is_zero_value(a[piv][col])) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[row]);
    const T inv = T(1) / a[row][col];
    for (std::size_t c = col; c < ncols; ++c)
      if (!is_zero_value(a[row][c])) a[row][c] = a[row][c] * inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || is_zero_value(a[r][col])) continue;
      const T f = a[r][col];
      for (std::size_t c = col; c < ncols; ++c)
        if (!is_zero_value(a[row][c])) a[r][c] = a[r][c] - f * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Basis of { x : A x = 0 }.
template <class T>
Matrix<T> nullspace(Matrix<T> a, std::size_t ncols) {
  auto pivots = rref(a, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix<T> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> x(ncols, T(0));
    x[free] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = T(0) - a[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

// Some x with A x = b, if one exists.
template <class T>
std::optional<std::vector<T>> solve(Matrix<T> a, const std::vector<T>& b, std::size_t ncols) {
  for (std::size_t r = 0; r < a.size(); ++r) a[r].push_back(b[r]);
  auto pivots = rref(a, ncols + 1);
  if (!pivots.empty() && pivots.back() == ncols) return std::nullopt;
  std::vector<T> x(ncols, T(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][ncols];
  return x;
}

}  // namespace pbw
