#include "epsum/series.hpp"

#include <sstream>

namespace epsum {

LaurentSeries LaurentSeries::monomial(const SumExpr& v, long ord, long truncAt) {
  LaurentSeries s;
  s.trunc = truncAt;
  if (v.isZero() || ord >= truncAt) {
    s.lo = truncAt;
    return s;
  }
  s.lo = ord;
  s.c[ord] = v;
  return s;
}

SumExpr LaurentSeries::at(long k) const {
  if (k >= trunc)
    fail(ErrCode::Truncation,
         "coefficient of eps^" + std::to_string(k) + " beyond truncation order " +
             std::to_string(trunc));
  auto it = c.find(k);
  return it == c.end() ? SumExpr() : it->second;
}

void LaurentSeries::set(long k, const SumExpr& v) {
  if (k >= trunc) fail(ErrCode::Truncation, "set past truncation order");
  if (v.isZero())
    c.erase(k);
  else
    c[k] = v;
  lo = c.empty() ? trunc : std::min(lo, c.begin()->first);
}

void LaurentSeries::normalize() {
  for (auto it = c.begin(); it != c.end();) {
    if (it->second.isZero() || it->first >= trunc)
      it = c.erase(it);
    else
      ++it;
  }
  lo = c.empty() ? trunc : c.begin()->first;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
  LaurentSeries r;
  r.trunc = std::min(trunc, o.trunc);
  for (auto& [k, v] : c)
    if (k < r.trunc) r.c[k] = v;
  for (auto& [k, v] : o.c) {
    if (k >= r.trunc) continue;
    auto it = r.c.find(k);
    if (it == r.c.end())
      r.c[k] = v;
    else
      it->second += v;
  }
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (auto& [k, v] : r.c) v = -v;
  return r;
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
  LaurentSeries r;
  r.trunc = std::min(lo + o.trunc, o.lo + trunc);
  for (auto& [i, a] : c)
    for (auto& [j, b] : o.c) {
      if (i + j >= r.trunc) continue;
      SumExpr p = a * b;
      if (p.isZero()) continue;
      auto it = r.c.find(i + j);
      if (it == r.c.end())
        r.c[i + j] = p;
      else
        it->second += p;
    }
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::scale(const RatFun& f) const {
  LaurentSeries r;
  r.trunc = trunc;
  if (f.isZero()) {
    r.lo = trunc;
    return r;
  }
  SumExpr ff = SumExpr::fromRat(f);
  for (auto& [k, v] : c) r.c[k] = v * ff;
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::shift(long d) const {
  LaurentSeries r;
  r.lo = lo + d;
  r.trunc = trunc + d;
  for (auto& [k, v] : c) r.c[k + d] = v;
  return r;
}

LaurentSeries LaurentSeries::truncate(long t) const {
  LaurentSeries r = *this;
  r.trunc = std::min(trunc, t);
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::inv() const {
  if (c.empty()) fail(ErrCode::Pole, "inverse of a zero series");
  long cnt = trunc - lo;
  const SumExpr& a0 = c.begin()->second;
  if (c.begin()->first != lo || a0.terms.size() != 1 || !a0.terms[0].sums.empty())
    fail(ErrCode::Unsupported, "series inverse needs an invertible leading coefficient");
  SumTerm it;
  it.hyp = a0.terms[0].hyp.inv();
  for (auto& [k, e] : a0.terms[0].consts) it.consts[k] = -e;
  SumExpr i0;
  i0.terms.push_back(it);
  std::vector<SumExpr> I((size_t)cnt);
  I[0] = i0;
  for (long k = 1; k < cnt; ++k) {
    SumExpr s;
    for (long j = 1; j <= k; ++j) {
      SumExpr aj = at(lo + j);
      if (!aj.isZero() && !I[(size_t)(k - j)].isZero()) s += aj * I[(size_t)(k - j)];
    }
    I[(size_t)k] = (-i0) * s;
  }
  LaurentSeries r;
  r.lo = -lo;
  r.trunc = -lo + cnt;
  for (long k = 0; k < cnt; ++k)
    if (!I[(size_t)k].isZero()) r.c[-lo + k] = I[(size_t)k];
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::map(const std::function<SumExpr(const SumExpr&)>& f) const {
  LaurentSeries r;
  r.trunc = trunc;
  for (auto& [k, v] : c) {
    SumExpr w = f(v);
    if (!w.isZero()) r.c[k] = w;
  }
  r.normalize();
  return r;
}

std::string LaurentSeries::str() const {
  std::ostringstream o;
  bool first = true;
  for (auto& [k, v] : c) {
    if (!first) o << " + ";
    first = false;
    o << "eps^" << k << "*(" << v.str() << ")";
  }
  if (!first) o << " + ";
  o << "O(eps^" << trunc << ")";
  return o.str();
}

}  // namespace epsum
