#include "epsum/poly.hpp"

#include <algorithm>
#include <sstream>

namespace epsum {

int monoCmp(const Monomial& a, const Monomial& b) {
  int da = a.totalDeg(), db = b.totalDeg();
  if (da != db) return da < db ? -1 : 1;
  size_t i = 0, j = 0;
  while (i < a.v.size() && j < b.v.size()) {
    Sym sa = a.v[i].first, sb = b.v[j].first;
    if (sa == sb) {
      if (a.v[i].second != b.v[j].second)
        return a.v[i].second < b.v[j].second ? -1 : 1;
      ++i, ++j;
    } else if (symBefore(sa, sb)) {
      return 1;  // a has a more significant variable with positive exponent
    } else {
      return -1;
    }
  }
  if (i < a.v.size()) return 1;
  if (j < b.v.size()) return -1;
  return 0;
}

Monomial monoMul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.v.reserve(a.v.size() + b.v.size());
  size_t i = 0, j = 0;
  while (i < a.v.size() || j < b.v.size()) {
    if (j == b.v.size() || (i < a.v.size() && symBefore(a.v[i].first, b.v[j].first))) {
      r.v.push_back(a.v[i++]);
    } else if (i == a.v.size() || symBefore(b.v[j].first, a.v[i].first)) {
      r.v.push_back(b.v[j++]);
    } else {
      r.v.push_back({a.v[i].first, a.v[i].second + b.v[j].second});
      ++i, ++j;
    }
  }
  return r;
}

std::optional<Monomial> monoDiv(const Monomial& a, const Monomial& b) {
  Monomial r;
  size_t i = 0;
  for (auto& [s, e] : b.v) {
    while (i < a.v.size() && symBefore(a.v[i].first, s)) r.v.push_back(a.v[i++]);
    if (i == a.v.size() || a.v[i].first != s || a.v[i].second < e) return std::nullopt;
    if (a.v[i].second > e) r.v.push_back({s, a.v[i].second - e});
    ++i;
  }
  while (i < a.v.size()) r.v.push_back(a.v[i++]);
  return r;
}

Poly Poly::var(Sym s, int e) {
  Poly p;
  if (e < 0) fail(ErrCode::Internal, "negative exponent in Poly::var");
  if (e == 0) return Poly(1);
  Monomial m;
  m.v.push_back({s, e});
  p.ts.push_back({m, Rat(1)});
  return p;
}

Rat Poly::constVal() const {
  if (ts.empty()) return Rat(0);
  if (!isConst()) fail(ErrCode::Internal, "constVal on non-constant " + str());
  return ts[0].second;
}

int Poly::deg(Sym s) const {
  int d = 0;
  for (auto& [m, c] : ts) d = std::max(d, m.deg(s));
  return d;
}

std::set<Sym> Poly::vars() const {
  std::set<Sym> r;
  for (auto& [m, c] : ts)
    for (auto& [s, e] : m.v) r.insert(s);
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.ts) c = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.ts.reserve(ts.size() + o.ts.size());
  size_t i = 0, j = 0;
  while (i < ts.size() || j < o.ts.size()) {
    int cmp;
    if (i == ts.size())
      cmp = -1;
    else if (j == o.ts.size())
      cmp = 1;
    else
      cmp = monoCmp(ts[i].first, o.ts[j].first);
    if (cmp > 0) {
      r.ts.push_back(ts[i++]);
    } else if (cmp < 0) {
      r.ts.push_back(o.ts[j++]);
    } else {
      Rat c = ts[i].second + o.ts[j].second;
      if (c != 0) r.ts.push_back({ts[i].first, c});
      ++i, ++j;
    }
  }
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (isZero() || o.isZero()) return Poly();
  struct Gt {
    bool operator()(const Monomial& a, const Monomial& b) const { return monoCmp(a, b) > 0; }
  };
  std::map<Monomial, Rat, Gt> acc;
  for (auto& [ma, ca] : ts)
    for (auto& [mb, cb] : o.ts) acc[monoMul(ma, mb)] += ca * cb;
  Poly r;
  r.ts.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.ts.push_back({m, c});
  return r;
}

Poly Poly::scale(const Rat& c) const {
  if (c == 0) return Poly();
  Poly r = *this;
  for (auto& [m, k] : r.ts) k *= c;
  return r;
}

Poly Poly::pow(long e) const {
  if (e < 0) fail(ErrCode::Internal, "negative poly power");
  Poly r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b = (e >>= 1) ? b * b : b;
  }
  return r;
}

Poly Poly::coeffOf(Sym s, int k) const {
  Poly r;
  for (auto& [m, c] : ts) {
    if (m.deg(s) != k) continue;
    Monomial m2;
    for (auto& [t, e] : m.v)
      if (t != s) m2.v.push_back({t, e});
    Poly one;
    one.ts.push_back({m2, c});
    r += one;
  }
  return r;
}

std::vector<Poly> Poly::coeffsIn(Sym s) const {
  int d = deg(s);
  if (isZero()) return {};
  std::vector<Poly> cs((size_t)d + 1);
  for (auto& [m, c] : ts) {
    int k = m.deg(s);
    Monomial m2;
    for (auto& [t, e] : m.v)
      if (t != s) m2.v.push_back({t, e});
    Poly one;
    one.ts.push_back({m2, c});
    cs[(size_t)k] += one;
  }
  return cs;
}

Poly Poly::fromCoeffs(const std::vector<Poly>& cs, Sym s) {
  Poly r;
  for (size_t k = 0; k < cs.size(); ++k) r += cs[k] * Poly::var(s, (int)k);
  return r;
}

Poly Poly::subst(Sym s, const Poly& val) const {
  if (!has(s)) return *this;
  // Horner over the dense coefficient list
  auto cs = coeffsIn(s);
  Poly r;
  for (size_t k = cs.size(); k-- > 0;) r = r * val + cs[k];
  return r;
}

Poly Poly::subst(const std::map<Sym, Poly>& m) const {
  Poly r = *this;
  // simultaneous substitution: rebuild term by term
  if (m.empty()) return r;
  Poly acc;
  for (auto& [mono, c] : ts) {
    Poly t(c);
    for (auto& [s, e] : mono.v) {
      auto it = m.find(s);
      t *= (it != m.end() ? it->second.pow(e) : Poly::var(s, e));
    }
    acc += t;
  }
  return acc;
}

Rat Poly::eval(const Assign& a) const {
  Rat r(0);
  for (auto& [m, c] : ts) {
    Rat t = c;
    for (auto& [s, e] : m.v) {
      auto it = a.find(s);
      if (it == a.end()) fail(ErrCode::Internal, "eval: unassigned symbol " + symName(s));
      t *= ratPow(it->second, e);
    }
    r += t;
  }
  return r;
}

Poly Poly::evalPartial(const Assign& a) const {
  Poly acc;
  for (auto& [mono, c] : ts) {
    Poly t(c);
    for (auto& [s, e] : mono.v) {
      auto it = a.find(s);
      if (it != a.end())
        t = t.scale(ratPow(it->second, e));
      else
        t *= Poly::var(s, e);
    }
    acc += t;
  }
  return acc;
}

Rat Poly::content() const {
  if (isZero()) return Rat(0);
  Rat g(0);
  for (auto& [m, c] : ts) g = ratGcd(g, c);
  if (lc() < 0) g = -g;
  return g;
}

Poly Poly::primitive() const {
  if (isZero()) return *this;
  return scale(Rat(1) / content());
}

std::string Poly::str() const {
  if (ts.empty()) return "0";
  std::ostringstream o;
  bool first = true;
  for (auto& [m, c] : ts) {
    Rat ac = abs(c);
    if (first) {
      if (c < 0) o << "-";
    } else {
      o << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool needCoef = (ac != 1) || m.isOne();
    if (needCoef) o << ac.get_str();
    bool star = needCoef;
    for (auto& [s, e] : m.v) {
      if (star) o << "*";
      o << symName(s);
      if (e != 1) o << "^" << e;
      star = true;
    }
  }
  return o.str();
}

size_t Poly::hash() const {
  size_t h = 14695981039346656037ull;
  for (auto& [m, c] : ts) {
    for (auto& [s, e] : m.v) h = hashCombine(h, hashCombine((size_t)s.id, (size_t)e));
    h = hashCombine(h, ratHash(c));
  }
  return h;
}

std::optional<Poly> tryDiv(const Poly& a, const Poly& b) {
  if (b.isZero()) fail(ErrCode::Pole, "polynomial division by zero");
  Poly q, r = a;
  while (!r.isZero()) {
    auto md = monoDiv(r.lm(), b.lm());
    if (!md) return std::nullopt;
    Poly t;
    t.ts.push_back({*md, r.lc() / b.lc()});
    q += t;
    r -= t * b;
  }
  return q;
}

Poly divExact(const Poly& a, const Poly& b) {
  auto q = tryDiv(a, b);
  if (!q) fail(ErrCode::Internal, "inexact division: (" + a.str() + ") / (" + b.str() + ")");
  return *q;
}

Poly prem(const Poly& a, const Poly& b, Sym x) {
  int db = b.deg(x);
  if (b.isZero()) fail(ErrCode::Pole, "prem by zero");
  if (db == 0) return Poly();
  auto bc = b.coeffsIn(x);
  Poly lb = bc[(size_t)db];
  Poly r = a;
  int dr = r.deg(x);
  int steps = dr - db + 1;
  while (!r.isZero() && (dr = r.deg(x)) >= db) {
    Poly lr = r.coeffsIn(x)[(size_t)dr];
    r = lb * r - lr * Poly::var(x, dr - db) * b;
    --steps;
  }
  // normalize to the full lc_b^(da-db+1) * a convention
  while (steps-- > 0) r = lb * r;
  return r;
}

namespace {

// gcd of the (recursive) contents of coefficients of p in x
Poly polyContentIn(const Poly& p, Sym x) {
  Poly g;
  for (auto& c : p.coeffsIn(x)) {
    if (c.isZero()) continue;
    g = g.isZero() ? c : gcdPoly(g, c);
    if (g.isConst()) break;
  }
  return g.isZero() ? Poly() : g;
}

// pseudo-remainder scaled only as far as the reduction needs; the primitive
// PRS strips content right away, so prem's full lc^(da-db+1) convention would
// inflate coefficients for nothing
Poly gcdRed(const Poly& a, const Poly& b, Sym x) {
  int db = b.deg(x);
  Poly lb = b.coeffsIn(x)[(size_t)db];
  Poly r = a;
  int dr;
  while (!r.isZero() && (dr = r.deg(x)) >= db) {
    Poly lr = r.coeffsIn(x)[(size_t)dr];
    r = lb * r - lr * Poly::var(x, dr - db) * b;
  }
  return r;
}

// dense univariate image of p in x with the other variables sent to pt;
// false when the leading coefficient vanished (inconclusive point)
bool uniImage(const Poly& p, Sym x, const std::map<Sym, long>& pt, std::vector<Rat>& out) {
  int d = p.deg(x);
  out.assign((size_t)d + 1, Rat(0));
  for (auto& [m, c] : p.ts) {
    Rat v = c;
    int dx = 0;
    for (auto& [s, e] : m.v) {
      if (s == x) {
        dx = e;
        continue;
      }
      v *= ratPow(Rat(pt.at(s)), e);
    }
    out[(size_t)dx] += v;
  }
  return out.back() != 0;
}

int uniGcdDeg(std::vector<Rat> a, std::vector<Rat> b) {
  auto trim = [](std::vector<Rat>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      Rat f = a.back() / b.back();
      size_t off = a.size() - b.size();
      for (size_t i = 0; i + 1 < b.size(); ++i) a[off + i] -= f * b[i];
      a.pop_back();
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? -1 : (int)a.size() - 1;
}

// sound coprimality probe: when both leading coefficients survive the
// evaluation and the image gcd has degree 0 in x, the true gcd is free of x
// (it then divides both contents in x). Inconclusive probes return false.
bool gcdFreeOfX(const Poly& a, const Poly& b, Sym x) {
  std::map<Sym, long> pt;
  for (Sym s : a.vars())
    if (!(s == x)) pt.emplace(s, 0);
  for (Sym s : b.vars())
    if (!(s == x)) pt.emplace(s, 0);
  uint64_t seed = 0x243f6a8885a308d3ull;
  std::vector<Rat> ia, ib;
  for (int attempt = 0; attempt < 3; ++attempt) {
    for (auto& [s, v] : pt) {
      seed = seed * 6364136223846793005ull + 1442695040888963407ull;
      v = (long)((seed >> 40) % 201) - 100;
    }
    if (!uniImage(a, x, pt, ia) || !uniImage(b, x, pt, ib)) continue;
    if (uniGcdDeg(ia, ib) == 0) return true;
  }
  return false;
}

}  // namespace

Poly gcdPoly(const Poly& a, const Poly& b) {
  if (a.isZero()) return b.isZero() ? Poly() : b.primitive();
  if (b.isZero()) return a.primitive();
  if (a.isConst() || b.isConst()) return Poly(1);
  auto va = a.vars(), vb = b.vars();
  std::vector<Sym> common;
  for (Sym s : va)
    if (vb.count(s)) common.push_back(s);
  if (common.empty()) return Poly(1);
  // structural fast paths: equal up to sign, or one divides the other
  // (denominators here are typically nested products of linear forms)
  if (a.ts.size() == b.ts.size() && (a == b || a == -b)) return a.primitive();
  if (a.ts.size() >= b.ts.size()) {
    if (tryDiv(a, b)) return b.primitive();
  } else {
    if (tryDiv(b, a)) return a.primitive();
  }
  // main variable: smallest combined degree keeps the PRS short
  Sym x = common[0];
  int best = a.deg(x) + b.deg(x);
  for (Sym s : common) {
    int d = a.deg(s) + b.deg(s);
    if (d < best) best = d, x = s;
  }
  // certified x-free gcd: drop to the contents, eliminating x entirely
  if (gcdFreeOfX(a, b, x)) {
    Poly ca = polyContentIn(a, x);
    if (ca.isConst()) return Poly(1);
    Poly cb = polyContentIn(b, x);
    if (cb.isConst()) return Poly(1);
    return gcdPoly(ca, cb);
  }
  Poly ca = polyContentIn(a, x), cb = polyContentIn(b, x);
  Poly f = divExact(a, ca), g = divExact(b, cb);
  Poly cont = gcdPoly(ca, cb);
  if (f.deg(x) < g.deg(x)) std::swap(f, g);
  while (true) {
    Poly r = gcdRed(f, g, x);
    if (r.isZero()) break;
    if (r.deg(x) == 0) {
      g = Poly(1);
      break;
    }
    r = divExact(r, polyContentIn(r, x)).primitive();
    f = g;
    g = r;
  }
  Poly h = (cont * divExact(g, polyContentIn(g, x))).primitive();
  // exactness check: both inputs must reduce
  if (!tryDiv(a, h) || !tryDiv(b, h)) fail(ErrCode::Internal, "gcd postcondition failed");
  return h;
}

Poly lcmPoly(const Poly& a, const Poly& b) {
  if (a.isZero() || b.isZero()) return Poly();
  return divExact(a * b, gcdPoly(a, b)).primitive();
}

Poly resultantP(const Poly& a, const Poly& b, Sym x) {
  if (a.isZero() || b.isZero()) return Poly();
  Poly P = a, Q = b;
  int dP = P.deg(x), dQ = Q.deg(x);
  int sign = 1;
  if (dP < dQ) {
    std::swap(P, Q);
    std::swap(dP, dQ);
    if (dP % 2 && dQ % 2) sign = -sign;
  }
  std::vector<std::pair<Poly, int>> num, den;
  while (dQ > 0) {
    Poly R = prem(P, Q, x);
    if (R.isZero()) return Poly();
    int dR = R.deg(x);
    int e = dP - dQ + 1;
    if (dP % 2 && dQ % 2) sign = -sign;
    Poly lq = Q.coeffsIn(x)[(size_t)dQ];
    int f = dP - dR - e * dQ;
    if (f >= 0)
      num.push_back({lq, f});
    else
      den.push_back({lq, -f});
    P = Q;
    Q = R;
    dP = dQ;
    dQ = dR;
  }
  // Q now has x-degree 0
  Poly total = Q.pow(dP);
  for (auto& [p, e] : num) total *= p.pow(e);
  Poly d(1);
  for (auto& [p, e] : den) d *= p.pow(e);
  Poly res = divExact(total, d);
  return sign < 0 ? -res : res;
}

Poly shiftPoly(const Poly& p, Sym x, long delta) {
  if (delta == 0 || !p.has(x)) return p;
  return p.subst(x, Poly::var(x) + Poly(Rat(delta)));
}

std::map<Int, int> factorInt(Int n) {
  std::map<Int, int> f;
  n = abs(n);
  if (n == 0) fail(ErrCode::Internal, "factorInt(0)");
  for (Int p : {Int(2), Int(3), Int(5)}) {
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  }
  Int p(7);
  int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  int wi = 0;
  while (p * p <= n && p < 100000) {
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
    p += wheel[wi];
    wi = (wi + 1) % 8;
  }
  if (n == 1) return f;
  // Pollard rho on the remaining cofactor
  std::vector<Int> stack{n};
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0x5eedul);
  while (!stack.empty()) {
    Int m = stack.back();
    stack.pop_back();
    if (m == 1) continue;
    if (mpz_probab_prime_p(m.get_mpz_t(), 40)) {
      ++f[m];
      continue;
    }
    Int d = m;
    while (d == m) {
      Int c = rng.get_z_range(m - 1) + 1;
      Int x = rng.get_z_range(m), y = x;
      d = 1;
      while (d == 1) {
        x = (x * x + c) % m;
        y = (y * y + c) % m;
        y = (y * y + c) % m;
        Int diff = x - y;
        if (diff == 0) {
          d = m;
          break;
        }
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
      }
    }
    stack.push_back(d);
    stack.push_back(m / d);
  }
  return f;
}

std::vector<Int> divisorsOf(const Int& n, size_t cap) {
  auto f = factorInt(n);
  std::vector<Int> ds{Int(1)};
  for (auto& [p, e] : f) {
    size_t sz = ds.size();
    Int pe(1);
    for (int k = 1; k <= e; ++k) {
      pe *= p;
      for (size_t i = 0; i < sz; ++i) {
        ds.push_back(ds[i] * pe);
        if (ds.size() > cap) fail(ErrCode::Internal, "divisor count exceeds cap");
      }
    }
  }
  return ds;
}

namespace {

// clears denominators, strips powers of x; returns {integer poly coeffs low..high, x-valuation}
std::pair<std::vector<Int>, int> intCoeffsUni(const Poly& p, Sym x) {
  for (Sym s : p.vars())
    if (s != x) fail(ErrCode::Internal, "roots: poly not univariate in " + symName(x));
  auto cs = p.coeffsIn(x);
  Int den(1);
  for (auto& c : cs)
    if (!c.isZero()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), denOf(c.constVal()).get_mpz_t());
  int val = 0;
  while ((size_t)val < cs.size() && cs[(size_t)val].isZero()) ++val;
  std::vector<Int> ic;
  for (size_t k = (size_t)val; k < cs.size(); ++k) {
    Rat c = cs[k].constVal() * Rat(den);
    ic.push_back(numOf(c));
  }
  return {ic, val};
}

}  // namespace

std::vector<Rat> rationalRootsUni(const Poly& p, Sym x) {
  std::vector<Rat> roots;
  if (p.isZero()) fail(ErrCode::Internal, "roots of zero polynomial");
  if (!p.has(x)) return roots;
  auto [ic, val] = intCoeffsUni(p, x);
  if (val > 0) roots.push_back(Rat(0));
  if (ic.size() == 1) return roots;
  Int a0 = ic.front(), ad = ic.back();
  auto evalAt = [&](const Rat& r) {
    Rat acc(0);
    for (size_t k = ic.size(); k-- > 0;) acc = acc * r + Rat(ic[k]);
    return acc == 0;
  };
  for (const Int& pnum : divisorsOf(a0))
    for (const Int& qden : divisorsOf(ad)) {
      Rat cand(pnum, qden);
      cand.canonicalize();
      if (evalAt(cand) && std::find(roots.begin(), roots.end(), cand) == roots.end())
        roots.push_back(cand);
      cand = -cand;
      if (evalAt(cand) && std::find(roots.begin(), roots.end(), cand) == roots.end())
        roots.push_back(cand);
    }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<Int> integerRootsUni(const Poly& p, Sym x) {
  std::vector<Int> r;
  for (auto& q : rationalRootsUni(p, x))
    if (isInt(q)) r.push_back(numOf(q));
  return r;
}

}  // namespace epsum
