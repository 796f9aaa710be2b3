#include "epsum/ratfun.hpp"

#include <sstream>

namespace epsum {

LinearForm LinearForm::fromPoly(const Poly& p) {
  LinearForm f;
  Sym eps = symEps();
  for (auto& [m, coef] : p.ts) {
    if (m.isOne()) {
      f.c = coef;
    } else if (m.v.size() == 1 && m.v[0].second == 1) {
      Sym s = m.v[0].first;
      if (s == eps)
        f.e = coef;
      else
        f.a[s] = coef;
    } else {
      fail(ErrCode::Domain, "expected a linear form, got " + p.str());
    }
  }
  return f;
}

std::string LinearForm::str() const { return toPoly().str(); }

void RatFun::normalize() {
  if (den.isZero()) fail(ErrCode::Pole, "zero denominator: " + num.str() + " / 0");
  if (num.isZero()) {
    den = Poly(1);
    return;
  }
  Poly g = gcdPoly(num, den);
  if (!g.is(1)) {
    num = divExact(num, g);
    den = divExact(den, g);
  }
  Rat lc = den.lc();
  if (lc != 1) {
    num = num.scale(Rat(1) / lc);
    den = den.scale(Rat(1) / lc);
  }
}

std::set<Sym> RatFun::vars() const {
  auto v = num.vars();
  for (Sym s : den.vars()) v.insert(s);
  return v;
}

namespace {
void makeMonic(RatFun& r) {
  Rat lc = r.den.lc();
  if (lc != 1) {
    r.num = r.num.scale(Rat(1) / lc);
    r.den = r.den.scale(Rat(1) / lc);
  }
}
} // namespace

RatFun RatFun::operator+(const RatFun& o) const {
  if (isZero()) return o;
  if (o.isZero()) return *this;
  RatFun r;
  Poly g = gcdPoly(den, o.den);
  if (g.is(1)) {
    // num _|_ den, o.num _|_ o.den, den _|_ o.den => result already reduced
    r.num = num * o.den + o.num * den;
    r.den = den * o.den;
  } else {
    Poly da = divExact(den, g), db = divExact(o.den, g);
    r.num = num * db + o.num * da;
    // r.num _|_ da and r.num _|_ db, so cancellation can only hide in g
    Poly c = gcdPoly(r.num, g);
    if (c.is(1)) {
      r.den = da * o.den;
    } else {
      r.num = divExact(r.num, c);
      r.den = da * divExact(o.den, c);
    }
  }
  if (r.num.isZero()) {
    r.den = Poly(1);
    return r;
  }
  makeMonic(r);
  return r;
}

RatFun RatFun::operator*(const RatFun& o) const {
  if (isZero() || o.isZero()) return RatFun();
  // cross-cancel; the four cofactors are pairwise coprime across the bar,
  // so the product is already reduced
  Poly g1 = gcdPoly(num, o.den), g2 = gcdPoly(o.num, den);
  RatFun r;
  r.num = divExact(num, g1) * divExact(o.num, g2);
  r.den = divExact(den, g2) * divExact(o.den, g1);
  makeMonic(r);
  return r;
}

RatFun RatFun::inv() const {
  if (isZero()) fail(ErrCode::Pole, "inverse of zero rational function");
  RatFun r;
  r.num = den;
  r.den = num;
  Rat lc = r.den.lc();
  if (lc != 1) {
    r.num = r.num.scale(Rat(1) / lc);
    r.den = r.den.scale(Rat(1) / lc);
  }
  return r;
}

RatFun RatFun::operator/(const RatFun& o) const { return *this * o.inv(); }

RatFun RatFun::pow(long e) const {
  if (e == 0) return RatFun(1);
  RatFun b = e < 0 ? inv() : *this;
  long n = e < 0 ? -e : e;
  RatFun r;
  r.num = b.num.pow(n);
  r.den = b.den.pow(n);
  // num/den coprime => powers coprime; only re-monic
  Rat lc = r.den.lc();
  if (lc != 1) {
    r.num = r.num.scale(Rat(1) / lc);
    r.den = r.den.scale(Rat(1) / lc);
  }
  return r;
}

RatFun RatFun::substPoly(Sym s, const Poly& val) const {
  if (!has(s)) return *this;
  RatFun r;
  r.num = num.subst(s, val);
  r.den = den.subst(s, val);
  if (r.den.isZero())
    fail(ErrCode::Pole, "substitution " + symName(s) + " -> " + val.str() +
                            " annihilates denominator (" + den.str() + ")");
  r.normalize();
  return r;
}

RatFun RatFun::subst(Sym s, const RatFun& val) const {
  if (!has(s)) return *this;
  if (val.isPoly()) return substPoly(s, val.num);
  // p(s)/q(s) with s -> u/v: clear v^deg
  auto pn = num.coeffsIn(s), pd = den.coeffsIn(s);
  long dn = (long)pn.size() - 1, dd = (long)pd.size() - 1, d = std::max(dn, dd);
  Poly accN, accD;
  Poly u = val.num, v = val.den;
  std::vector<Poly> vpow((size_t)d + 1), upow((size_t)d + 1);
  vpow[0] = Poly(1);
  upow[0] = Poly(1);
  for (long k = 1; k <= d; ++k) {
    vpow[(size_t)k] = vpow[(size_t)k - 1] * v;
    upow[(size_t)k] = upow[(size_t)k - 1] * u;
  }
  for (long k = 0; k <= dn; ++k)
    accN += pn[(size_t)k] * upow[(size_t)k] * vpow[(size_t)(d - k)];
  for (long k = 0; k <= dd; ++k)
    accD += pd[(size_t)k] * upow[(size_t)k] * vpow[(size_t)(d - k)];
  if (accD.isZero())
    fail(ErrCode::Pole, "substitution annihilates denominator (" + den.str() + ")");
  return RatFun(accN, accD);
}

Rat RatFun::eval(const Assign& a) const {
  Rat d = den.eval(a);
  if (d == 0) fail(ErrCode::Pole, "pole of 1/(" + den.str() + ") at evaluation point");
  return num.eval(a) / d;
}

RatFun RatFun::evalPartial(const Assign& a) const {
  Poly n = num.evalPartial(a), d = den.evalPartial(a);
  if (d.isZero()) fail(ErrCode::Pole, "pole: (" + den.str() + ") vanishes at evaluation point");
  return RatFun(n, d);
}

std::string RatFun::str() const {
  if (isPoly()) return num.str();
  std::ostringstream o;
  bool pn = num.isConst() || num.ts.size() == 1;
  o << (pn ? "" : "(") << num.str() << (pn ? "" : ")") << "/(" << den.str() << ")";
  return o.str();
}

}  // namespace epsum
