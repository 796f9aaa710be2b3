#pragma once
#include <optional>
#include <vector>

#include "epsum/ratfun.hpp"

namespace epsum {

template <class F>
inline bool fieldZero(const F& x) {
  if constexpr (std::is_same_v<F, Rat>)
    return x == 0;
  else
    return x.isZero();
}

template <class F>
struct LinSolution {
  bool consistent = false;
  std::vector<F> particular;           // one solution (when consistent)
  std::vector<std::vector<F>> kernel;  // basis of the homogeneous solutions
};

// dense Gaussian elimination over an exact field (Rat or RatFun)
template <class F>
LinSolution<F> solveLinear(std::vector<std::vector<F>> A, std::vector<F> b) {
  size_t rows = A.size();
  size_t cols = rows ? A[0].size() : (b.empty() ? 0 : 0);
  if (!rows) {
    LinSolution<F> s;
    s.consistent = true;
    return s;
  }
  cols = A[0].size();
  std::vector<long> pivotCol(rows, -1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && fieldZero(A[p][c])) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[r]);
    std::swap(b[p], b[r]);
    F inv = F(1) / A[r][c];
    for (size_t j = c; j < cols; ++j) A[r][j] = A[r][j] * inv;
    b[r] = b[r] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || fieldZero(A[i][c])) continue;
      F f = A[i][c];
      for (size_t j = c; j < cols; ++j) A[i][j] = A[i][j] - f * A[r][j];
      b[i] = b[i] - f * b[r];
    }
    pivotCol[r] = (long)c;
    ++r;
  }
  LinSolution<F> s;
  for (size_t i = r; i < rows; ++i)
    if (!fieldZero(b[i])) return s;  // inconsistent
  s.consistent = true;
  s.particular.assign(cols, F(0));
  std::vector<bool> isPivot(cols, false);
  for (size_t i = 0; i < r; ++i) {
    s.particular[(size_t)pivotCol[i]] = b[i];
    isPivot[(size_t)pivotCol[i]] = true;
  }
  for (size_t c = 0; c < cols; ++c) {
    if (isPivot[c]) continue;
    std::vector<F> v(cols, F(0));
    v[c] = F(1);
    for (size_t i = 0; i < r; ++i) v[(size_t)pivotCol[i]] = F(0) - A[i][c];
    s.kernel.push_back(std::move(v));
  }
  return s;
}

}  // namespace epsum
