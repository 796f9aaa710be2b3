#pragma once
#include <optional>

#include "epsum/constants.hpp"
#include "epsum/linform.hpp"
#include "epsum/ratfun.hpp"

namespace epsum {

struct GammaFactor {
  LinearForm arg;  // integer symbol coefficients
  int exp;         // nonzero
  bool operator==(const GammaFactor& o) const { return arg == o.arg && exp == o.exp; }
};

// Product  prefactor * prod lf^e * prod Gamma(arg)^e * prod p^lf * (-1)^sign
//          * pi^piExp * exp(gamEps * EulerGamma * eps)
// Power bases are primes; the sign form has 0/1 coefficients and constant.
// The lin factors are linear forms split off Gamma windows; they follow the
// same joint limit convention as the Gamma factors at degenerate points
// (all Gamma arguments perturbed by a common delta), so boundary values like
// C(n+1,k) at k = n+1 stay finite. Plain rational content lives in pre.
struct HypTerm {
  std::vector<std::pair<LinearForm, int>> lin;
  std::vector<GammaFactor> gammas;
  std::map<Int, LinearForm> pows;
  LinearForm sign;
  Rat piExp = Rat(0);
  Rat gamEps = Rat(0);
  RatFun pre = RatFun(1);

  static HypTerm one() { return HypTerm(); }
  static HypTerm rational(const RatFun& f) {
    HypTerm t;
    t.pre = f;
    return t;
  }

  bool isRational() const {
    return lin.empty() && gammas.empty() && pows.empty() && sign.isZero() && piExp == 0 &&
           gamEps == 0;
  }
  bool isZero() const { return pre.isZero(); }
  // the lin factors as a plain rational function
  RatFun linRat() const;
  // full rational content: pre * linRat()
  RatFun ratPart() const { return pre * linRat(); }
  bool epsFree() const;
  std::set<Sym> vars() const;
  bool has(Sym s) const;

  HypTerm operator*(const HypTerm& o) const;
  HypTerm inv() const;
  HypTerm scale(const RatFun& f) const {
    HypTerm t = *this;
    t.pre = t.pre * f;
    return t;
  }
  HypTerm pow(long e) const;

  // canonical Gamma windows, direction flips, duplication, merged factors
  HypTerm normalized() const;

  // same non-prefactor shape (the merge key for expression terms)
  bool sameShape(const HypTerm& o) const {
    return lin == o.lin && gammas == o.gammas && pows == o.pows && sign == o.sign &&
           piExp == o.piExp && gamEps == o.gamEps;
  }
  bool operator==(const HypTerm& o) const { return sameShape(o) && pre == o.pre; }

  HypTerm subst(Sym s, const LinearForm& f) const;
  HypTerm shift(Sym s, long d) const { return subst(s, LinearForm::sym(s) + Rat(d)); }

  // t(s+1)/t(s) as a rational function (term must be normalized)
  RatFun shiftQuotient(Sym s) const;

  // exact value; all symbols assigned, term must be eps-free
  ConstVal evalAt(const Assign& a) const;

  std::string str() const;
  size_t hash() const;
  std::string shapeKey() const;
};

// Gamma(arg) as a term; Binomial/Factorial/Pochhammer as Gamma quotients
HypTerm hypGamma(const LinearForm& arg, int exp = 1);
HypTerm hypBinomial(const LinearForm& top, const LinearForm& bot);
HypTerm hypFactorial(const LinearForm& arg);
HypTerm hypPochhammer(const LinearForm& arg, const LinearForm& count);
HypTerm hypSign(const LinearForm& arg);
HypTerm hypPow(const Rat& base, const LinearForm& expo);

}  // namespace epsum
