#pragma once
#include <functional>

#include "epsum/nested.hpp"

namespace epsum {

// Truncated Laurent series in eps with nested-sum coefficients:
//   sum_{k=lo}^{trunc-1} c[k] eps^k  +  O(eps^trunc)
// Absent map entries in [lo, trunc) are zero; nothing is known from order
// trunc on.  normalize() keeps lo at the first nonzero coefficient, so the
// truncation bookkeeping of products stays tight.
struct LaurentSeries {
  long lo = 0;
  long trunc = 0;
  std::map<long, SumExpr> c;

  static LaurentSeries zero(long truncAt) { return {truncAt, truncAt, {}}; }
  static LaurentSeries one(long truncAt) { return monomial(SumExpr::fromRat(RatFun(1)), 0, truncAt); }
  static LaurentSeries monomial(const SumExpr& v, long ord, long truncAt);

  bool isZero() const { return c.empty(); }
  bool known(long k) const { return k < trunc; }
  // zero when absent and known; Truncation error at or past trunc
  SumExpr at(long k) const;
  long poleOrder() const { return c.empty() ? 0 : std::max(0L, -lo); }

  void set(long k, const SumExpr& v);
  void normalize();

  LaurentSeries operator+(const LaurentSeries& o) const;
  LaurentSeries operator-() const;
  LaurentSeries operator-(const LaurentSeries& o) const { return *this + (-o); }
  LaurentSeries operator*(const LaurentSeries& o) const;
  LaurentSeries scale(const RatFun& f) const;
  LaurentSeries shift(long d) const;  // multiply by eps^d
  LaurentSeries truncate(long t) const;
  // reciprocal; requires an invertible leading coefficient (single term, no sums)
  LaurentSeries inv() const;

  LaurentSeries map(const std::function<SumExpr(const SumExpr&)>& f) const;

  bool operator==(const LaurentSeries& o) const {
    return lo == o.lo && trunc == o.trunc && c == o.c;
  }
  std::string str() const;
};

}  // namespace epsum
