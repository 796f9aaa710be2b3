#pragma once
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "epsum/rat.hpp"
#include "epsum/symbol.hpp"

namespace epsum {

// exponent vector, variables sorted most-significant-first, exponents > 0
struct Monomial {
  std::vector<std::pair<Sym, int>> v;

  int totalDeg() const {
    int d = 0;
    for (auto& [s, e] : v) d += e;
    return d;
  }
  int deg(Sym s) const {
    for (auto& [t, e] : v)
      if (t == s) return e;
    return 0;
  }
  bool isOne() const { return v.empty(); }
  bool operator==(const Monomial& o) const { return v == o.v; }
};

// graded lex: higher total degree first, ties by first differing variable
int monoCmp(const Monomial& a, const Monomial& b);
Monomial monoMul(const Monomial& a, const Monomial& b);
// a/b, nullopt when not divisible
std::optional<Monomial> monoDiv(const Monomial& a, const Monomial& b);

using Assign = std::map<Sym, Rat>;

class Poly {
public:
  // terms sorted descending in the term order, coefficients nonzero
  std::vector<std::pair<Monomial, Rat>> ts;

  Poly() = default;
  explicit Poly(const Rat& c) {
    if (c != 0) ts.push_back({Monomial{}, c});
  }
  explicit Poly(long c) : Poly(Rat(c)) {}
  static Poly var(Sym s, int e = 1);

  bool isZero() const { return ts.empty(); }
  bool isConst() const { return ts.empty() || (ts.size() == 1 && ts[0].first.isOne()); }
  Rat constVal() const;  // requires isConst
  bool is(long c) const { return isConst() && constVal() == c; }

  const Monomial& lm() const { return ts.front().first; }
  const Rat& lc() const { return ts.front().second; }

  int deg(Sym s) const;
  int totalDeg() const { return ts.empty() ? -1 : ts.front().first.totalDeg(); }
  std::set<Sym> vars() const;
  bool has(Sym s) const { return deg(s) > 0; }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scale(const Rat& c) const;
  Poly pow(long e) const;
  bool operator==(const Poly& o) const { return ts == o.ts; }
  bool operator!=(const Poly& o) const { return !(ts == o.ts); }

  // coefficient of s^k (a polynomial in the remaining variables)
  Poly coeffOf(Sym s, int k) const;
  // dense-in-s coefficient list, index = power of s; empty for the zero poly
  std::vector<Poly> coeffsIn(Sym s) const;
  static Poly fromCoeffs(const std::vector<Poly>& cs, Sym s);

  Poly subst(Sym s, const Poly& val) const;
  Poly subst(const std::map<Sym, Poly>& m) const;
  Rat eval(const Assign& a) const;  // all variables must be assigned
  Poly evalPartial(const Assign& a) const;

  // content: rational c > 0 (sign carried so primitive part has positive lc)
  // with primitivePart having integer coprime coefficients
  Rat content() const;
  Poly primitive() const;

  std::string str() const;
  size_t hash() const;
};

inline Poly operator*(const Rat& c, const Poly& p) { return p.scale(c); }

Poly divExact(const Poly& a, const Poly& b);
std::optional<Poly> tryDiv(const Poly& a, const Poly& b);

// pseudo-remainder of a by b viewed univariately in x: lc_b^(da-db+1)*a = q*b + rem
Poly prem(const Poly& a, const Poly& b, Sym x);

Poly gcdPoly(const Poly& a, const Poly& b);
Poly lcmPoly(const Poly& a, const Poly& b);
Poly resultantP(const Poly& a, const Poly& b, Sym x);

// p(x) -> p(x + delta)
Poly shiftPoly(const Poly& p, Sym x, long delta);

// all integer / rational roots of a univariate-in-x polynomial with rational
// coefficients (other variables must not occur)
std::vector<Int> integerRootsUni(const Poly& p, Sym x);
std::vector<Rat> rationalRootsUni(const Poly& p, Sym x);

// complete factorization of |n| (trial division + Pollard rho); n != 0
std::map<Int, int> factorInt(Int n);
std::vector<Int> divisorsOf(const Int& n, size_t cap = 200000);

}  // namespace epsum
