#pragma once
#include "epsum/linform.hpp"
#include "epsum/poly.hpp"

namespace epsum {

// num/den, gcd-reduced, den monic under the global term order
class RatFun {
public:
  Poly num, den;

  RatFun() : num(), den(Rat(1)) {}
  explicit RatFun(const Rat& c) : num(c), den(Rat(1)) {}
  explicit RatFun(long c) : num(Rat(c)), den(Rat(1)) {}
  explicit RatFun(const Poly& p) : num(p), den(Rat(1)) {}
  RatFun(const Poly& n, const Poly& d) : num(n), den(d) { normalize(); }

  static RatFun var(Sym s) { return RatFun(Poly::var(s)); }

  void normalize();

  bool isZero() const { return num.isZero(); }
  bool isConst() const { return num.isConst() && den.isConst(); }
  Rat constVal() const { return num.constVal() / den.constVal(); }
  bool is(long c) const { return isConst() && constVal() == c; }
  bool isPoly() const { return den.is(1); }
  std::set<Sym> vars() const;
  bool has(Sym s) const { return num.has(s) || den.has(s); }

  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const { return *this + (-o); }
  RatFun operator-() const {
    RatFun r = *this;
    r.num = -r.num;
    return r;
  }
  RatFun operator*(const RatFun& o) const;
  RatFun operator/(const RatFun& o) const;
  RatFun inv() const;
  RatFun pow(long e) const;
  RatFun scale(const Rat& c) const { return RatFun(num.scale(c), den); }
  bool operator==(const RatFun& o) const { return num == o.num && den == o.den; }
  bool operator!=(const RatFun& o) const { return !(*this == o); }
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

  RatFun subst(Sym s, const RatFun& val) const;
  RatFun subst(Sym s, const LinearForm& f) const { return substPoly(s, f.toPoly()); }
  RatFun substPoly(Sym s, const Poly& val) const;
  RatFun shift(Sym s, long d) const {
    if (!has(s)) return *this;
    RatFun r;
    r.num = shiftPoly(num, s, d);
    r.den = shiftPoly(den, s, d);
    r.normalize();
    return r;
  }
  Rat eval(const Assign& a) const;
  RatFun evalPartial(const Assign& a) const;

  std::string str() const;
  size_t hash() const { return hashCombine(num.hash(), den.hash()); }
};

inline RatFun operator*(const Rat& c, const RatFun& f) { return f.scale(c); }

}  // namespace epsum
