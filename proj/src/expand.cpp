#include "epsum/expand.hpp"

namespace epsum {

namespace {

constexpr long kExact = 1L << 40;  // truncation order of exact factors

// S_k(m) as an expression; constant arguments evaluate on the spot
SumExpr harmonicS(int k, const LinearForm& m) {
  if (m.a.empty()) {
    if (!isInt(m.c) || m.c < 0)
      fail(ErrCode::Domain, "harmonic sum at non-natural constant argument " + m.c.get_str());
    Rat acc(0);
    for (long i = 1; i <= toLong(m.c); ++i) acc += ratPow(Rat(1, i), k);
    return SumExpr::fromRat(RatFun(acc));
  }
  return SumExpr::fromSum(harmonicSum({k}, m));
}

// log Gamma(m + 1 + r eps) - log Gamma(m+1), coefficient of eps^k:
//   k = 1:   r (S_1(m) - EulerGamma)
//   k >= 2:  (-r)^k / k (zeta_k - S_k(m))
// accumulated into L[1..] with weight w (the Gamma exponent)
void addLogGamma(std::vector<SumExpr>& L, const LinearForm& m, const Rat& r, long w) {
  for (size_t k = 1; k < L.size(); ++k) {
    Rat rk = ratPow(r, (long)k);
    if (k % 2) rk = -rk;  // (-r)^k
    SumExpr zk = k == 1 ? SumExpr::fromConst(ConstVal::atom(cGamma()))
                        : SumExpr::fromConst(ConstVal::atom(cZeta((int)k)));
    L[k] += (zk - harmonicS((int)k, m)).scale(rk * ratOf(w, (long)k));
  }
}

// exp(sum_{k>=1} L[k] eps^k) through eps^(L.size()-1):  E' = (sum k L_k
// eps^(k-1)) E gives E_k = (1/k) sum_{j=1}^{k} j L_j E_{k-j}
std::vector<SumExpr> expSeries(const std::vector<SumExpr>& L) {
  std::vector<SumExpr> E(L.size());
  E[0] = SumExpr::fromRat(RatFun(1));
  for (size_t k = 1; k < L.size(); ++k) {
    SumExpr s;
    for (size_t j = 1; j <= k; ++j)
      if (!L[j].isZero() && !E[k - j].isZero()) s += L[j].scale(Rat((long)j)) * E[k - j];
    E[k] = s.scale(ratOf(1, (long)k));
  }
  return E;
}

// eps-leading order of a nonzero polynomial
long epsLead(const Poly& p) {
  auto cs = p.coeffsIn(symEps());
  for (size_t i = 0; i < cs.size(); ++i)
    if (!cs[i].isZero()) return (long)i;
  fail(ErrCode::Internal, "epsLead of zero polynomial");
}

// rational function of eps (and other symbols) as a Laurent series in eps with
// rational-function coefficients, need+1 of them from the leading order on
LaurentSeries ratEpsSeries(const RatFun& f, long need) {
  if (f.isZero()) return LaurentSeries::zero(kExact);
  auto N = f.num.coeffsIn(symEps());
  auto D = f.den.coeffsIn(symEps());
  long a = epsLead(f.num), b = epsLead(f.den);
  auto nOf = [&](long k) { return a + k < (long)N.size() ? N[(size_t)(a + k)] : Poly(); };
  auto dOf = [&](long k) { return b + k < (long)D.size() ? D[(size_t)(b + k)] : Poly(); };
  RatFun d0inv = RatFun(Poly(1), D[(size_t)b]);
  std::vector<RatFun> Q((size_t)need + 1, RatFun(0));
  LaurentSeries r;
  r.lo = a - b;
  r.trunc = a - b + need + 1;
  for (long k = 0; k <= need; ++k) {
    RatFun acc(nOf(k));
    for (long j = 1; j <= k; ++j) acc = acc - RatFun(dOf(j)) * Q[(size_t)(k - j)];
    Q[(size_t)k] = acc * d0inv;
    if (!Q[(size_t)k].isZero()) r.c[a - b + k] = SumExpr::fromRat(Q[(size_t)k]);
  }
  r.normalize();
  return r;
}

// (fbar + r eps)^e as a series: sum_k binom(e,k) r^k eps^k fbar^(e-k)
LaurentSeries binomLinSeries(const LinearForm& f, long e, long need) {
  Rat r = f.e;
  LinearForm fb = f;
  fb.e = 0;
  if (fb.isZero())  // pure (r eps)^e monomial, exact
    return LaurentSeries::monomial(SumExpr::fromRat(RatFun(ratPow(r, e))), e, kExact);
  RatFun base(fb.toPoly());
  LaurentSeries s;
  s.lo = 0;
  s.trunc = need + 1;
  Rat bc(1);  // binom(e, k) * r^k
  for (long k = 0; k <= need; ++k) {
    if (k > 0) {
      bc *= ratOf(e - k + 1, k) * r;
      if (bc == 0) break;  // positive integer exponent exhausted
    }
    s.c[k] = SumExpr::fromRat(base.pow(e - k).scale(bc));
  }
  if (e >= 0 && e <= need) s.trunc = kExact;  // polynomial in eps: exact
  s.normalize();
  return s;
}

// 2^a recognition for power bases under an eps exponent (log 2 closure)
long twoExponentOf(const Int& p) {
  if (p <= 0) fail(ErrCode::Domain, "negative power base with eps exponent");
  Int t = p;
  long a = 0;
  while (t % 2 == 0) {
    t /= 2;
    ++a;
  }
  if (t != 1)
    fail(ErrCode::Domain, "power base " + p.get_str() + " with eps exponent needs log " +
                              p.get_str() + " outside the constant field");
  return a;
}

}  // namespace

LaurentSeries expandGammaShifted(const LinearForm& arg, long order) {
  if (order < 0) fail(ErrCode::Truncation, "expansion order below the pole order");
  if (!isInt(arg.c))
    fail(ErrCode::Domain, "Gamma argument with non-integer constant part: normalize first");
  LinearForm m = arg;
  m.e = 0;
  m.c -= 1;
  LinearForm base = m + Rat(1);
  std::vector<SumExpr> L((size_t)order + 1);
  if (arg.e != 0) addLogGamma(L, m, arg.e, 1);
  auto E = expSeries(L);
  SumExpr g = SumExpr::fromHyp(hypGamma(base).normalized());
  LaurentSeries s;
  s.lo = 0;
  s.trunc = order + 1;
  for (long k = 0; k <= order; ++k)
    if (!E[(size_t)k].isZero()) s.c[k] = g * E[(size_t)k];
  s.normalize();
  return s;
}

LaurentSeries expandSummand(const HypTerm& t, long lo, long hi) {
  if (hi < lo) fail(ErrCode::Truncation, "empty expansion window");
  HypTerm nt = t.normalized();
  if (nt.isZero()) return LaurentSeries::zero(hi + 1);
  if (nt.sign.e != 0)
    fail(ErrCode::Domain, "eps in a (-1)^... exponent gives a complex phase; unsupported");

  // leading eps order comes from pure-eps window factors and eps content of pre
  long lead = 0;
  for (auto& [f, e] : nt.lin)
    if (f.e != 0 && f.a.empty() && f.c == 0) lead += e;
  if (nt.pre.has(symEps())) lead += epsLead(nt.pre.num) - epsLead(nt.pre.den);
  if (lead > hi) return LaurentSeries::zero(hi + 1);
  long need = hi - lead;

  HypTerm base;  // the eps-free hypergeometric prefactor
  base.sign = nt.sign;
  base.piExp = nt.piExp;
  std::vector<LaurentSeries> facs;
  std::vector<SumExpr> L((size_t)need + 1);
  if (nt.gamEps != 0 && need >= 1)
    L[1] += SumExpr::fromConst(ConstVal::atom(cGamma()).scale(nt.gamEps));
  for (auto& g : nt.gammas) {
    if (g.arg.e == 0) {
      base.gammas.push_back(g);
      continue;
    }
    if (!isInt(g.arg.c))
      fail(ErrCode::Domain, "Gamma argument with non-integer constant part after normalization");
    LinearForm m = g.arg;
    m.e = 0;
    m.c -= 1;
    addLogGamma(L, m, g.arg.e, g.exp);
    base.gammas.push_back({m + Rat(1), g.exp});
  }
  for (auto& [p, lf] : nt.pows) {
    LinearForm b = lf;
    if (lf.e != 0) {
      b.e = 0;
      long a2 = twoExponentOf(p);
      if (need >= 1 && a2 != 0)
        L[1] += SumExpr::fromConst(ConstVal::atom(cLog2()).scale(lf.e * Rat(a2)));
    }
    if (!(b.a.empty() && b.c == 0)) {
      auto [it, fresh] = base.pows.insert({p, b});
      if (!fresh) it->second = it->second + b;
    }
  }
  for (auto& [f, e] : nt.lin) {
    if (f.e == 0)
      base.lin.push_back({f, e});
    else
      facs.push_back(binomLinSeries(f, e, need));
  }
  if (nt.pre.has(symEps()))
    facs.push_back(ratEpsSeries(nt.pre, need));
  else
    base.pre = nt.pre;

  LaurentSeries r = LaurentSeries::monomial(SumExpr::fromHyp(base.normalized()), 0, kExact);
  bool anyLog = false;
  for (auto& l : L) anyLog = anyLog || !l.isZero();
  if (anyLog) {
    auto E = expSeries(L);
    LaurentSeries es;
    es.lo = 0;
    es.trunc = need + 1;
    for (size_t k = 0; k < E.size(); ++k)
      if (!E[k].isZero()) es.c[(long)k] = E[k];
    es.normalize();
    facs.push_back(es);
  }
  for (auto& f : facs) r = r * f;
  return r.truncate(hi + 1);
}

const LaurentSeries& checkGammaCancellation(const LaurentSeries& s) {
  for (auto& [k, v] : s.c)
    if (!gammaFree(v))
      fail(ErrCode::GammaResidue,
           "EulerGamma residue in the coefficient of eps^" + std::to_string(k) + ": " + v.str());
  return s;
}

LaurentSeries expandExpr(const SumExpr& e, long lo, long hi) {
  LaurentSeries r = LaurentSeries::zero(hi + 1);
  for (auto& t : e.terms) {
    LaurentSeries s = expandSummand(t.hyp, lo, hi);
    if (!t.sums.empty() || !t.consts.empty()) {
      for (auto& [g, x] : t.sums)
        if (!g.epsFree()) fail(ErrCode::Unsupported, "eps inside a nested sum: " + g.str());
      SumTerm f;
      f.hyp = HypTerm::one();
      f.sums = t.sums;
      f.consts = t.consts;
      SumExpr fe;
      fe.terms.push_back(f);
      s = s.map([&](const SumExpr& v) { return v * fe; });
    }
    r = r + s;
  }
  return r;
}

}  // namespace epsum
