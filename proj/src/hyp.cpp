#include "epsum/hyp.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace epsum {

namespace {

// most significant symbol of the form (smallest rank), invalid when constant
Sym leadSym(const LinearForm& f) {
  Sym best;
  for (auto& [s, v] : f.a)
    if (!best.valid() || symBefore(s, best)) best = s;
  return best;
}

void checkGammaArg(const LinearForm& f) {
  if (!f.intCoeffs())
    fail(ErrCode::Domain, "Gamma argument needs integer symbol coefficients: " + f.str());
}

Rat mod1(const Rat& c) {
  Rat m = c - Rat(floorOf(c));
  return m;
}

// sort/merge the window-factor list; nonzero scalars fold into pre, factors
// that are identically zero are returned as a net delta order for the joint
// pole bookkeeping (they arise from boundary substitutions like k -> n)
long canonLin(std::vector<std::pair<LinearForm, int>>& lin, RatFun& pre) {
  long zeroOrd = 0;
  std::vector<std::pair<LinearForm, int>> ls;
  for (auto& [f, e] : lin) {
    if (e == 0) continue;
    if (f.isZero())
      zeroOrd += e;
    else if (f.isConst())
      pre = pre * RatFun(ratPow(f.c, e));
    else
      ls.push_back({f, e});
  }
  std::sort(ls.begin(), ls.end(),
            [](const std::pair<LinearForm, int>& a, const std::pair<LinearForm, int>& b) {
              return a.first < b.first;
            });
  std::vector<std::pair<LinearForm, int>> out;
  for (auto& [f, e] : ls) {
    if (!out.empty() && out.back().first == f)
      out.back().second += e;
    else
      out.push_back({f, e});
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const std::pair<LinearForm, int>& p) { return p.second == 0; }),
            out.end());
  lin = std::move(out);
  return zeroOrd;
}

LinearForm canonSign(const LinearForm& f) {
  if (f.e != 0) fail(ErrCode::Domain, "Sign argument must be eps-free: " + f.str());
  LinearForm r;
  for (auto& [s, v] : f.a) {
    if (!isInt(v)) fail(ErrCode::Domain, "Sign argument needs integer coefficients: " + f.str());
    Int m = numOf(v) % 2;
    if (m != 0) r.a[s] = Rat(1);
  }
  if (!isInt(f.c)) fail(ErrCode::Domain, "Sign argument must be integer-valued: " + f.str());
  Int cm = numOf(f.c) % 2;
  r.c = (cm != 0) ? Rat(1) : Rat(0);
  return r;
}

}  // namespace

HypTerm hypGamma(const LinearForm& arg, int exp) {
  HypTerm t;
  checkGammaArg(arg);
  if (exp != 0) t.gammas.push_back({arg, exp});
  return t;
}

HypTerm hypFactorial(const LinearForm& arg) { return hypGamma(arg + Rat(1)); }

HypTerm hypBinomial(const LinearForm& top, const LinearForm& bot) {
  // C(a,b) = Gamma(a+1) / (Gamma(b+1) Gamma(a-b+1))
  HypTerm t = hypGamma(top + Rat(1));
  t = t * hypGamma(bot + Rat(1), -1);
  t = t * hypGamma(top - bot + Rat(1), -1);
  return t;
}

HypTerm hypPochhammer(const LinearForm& arg, const LinearForm& count) {
  HypTerm t = hypGamma(arg + count);
  return t * hypGamma(arg, -1);
}

HypTerm hypSign(const LinearForm& arg) {
  HypTerm t;
  t.sign = canonSign(arg);
  return t;
}

HypTerm hypPow(const Rat& base, const LinearForm& expo) {
  HypTerm t;
  if (base == 0) fail(ErrCode::Domain, "Pow with base 0");
  Rat b = base;
  if (b < 0) {
    t.sign = canonSign(expo);
    b = -b;
  }
  for (auto& [p, e] : factorInt(numOf(b))) {
    LinearForm cur = t.pows.count(p) ? t.pows[p] : LinearForm();
    cur = cur + expo.scale(Rat(e));
    if (cur.isZero())
      t.pows.erase(p);
    else
      t.pows[p] = cur;
  }
  for (auto& [p, e] : factorInt(denOf(b))) {
    LinearForm cur = t.pows.count(p) ? t.pows[p] : LinearForm();
    cur = cur - expo.scale(Rat(e));
    if (cur.isZero())
      t.pows.erase(p);
    else
      t.pows[p] = cur;
  }
  return t;
}

bool HypTerm::epsFree() const {
  if (gamEps != 0 || pre.has(symEps())) return false;
  for (auto& [f, e] : lin)
    if (f.e != 0) return false;
  for (auto& g : gammas)
    if (g.arg.e != 0) return false;
  for (auto& [p, f] : pows)
    if (f.e != 0) return false;
  return true;
}

std::set<Sym> HypTerm::vars() const {
  std::set<Sym> r = pre.vars();
  auto addLf = [&](const LinearForm& f) {
    for (auto& [s, v] : f.a) r.insert(s);
    if (f.e != 0) r.insert(symEps());
  };
  for (auto& [f, e] : lin) addLf(f);
  for (auto& g : gammas) addLf(g.arg);
  for (auto& [p, f] : pows) addLf(f);
  addLf(sign);
  return r;
}

bool HypTerm::has(Sym s) const {
  if (pre.has(s)) return true;
  if (s == symEps() && gamEps != 0) return true;
  for (auto& [f, e] : lin)
    if ((s == symEps() && f.e != 0) || f.coeff(s) != 0) return true;
  for (auto& g : gammas)
    if ((s == symEps() && g.arg.e != 0) || g.arg.coeff(s) != 0) return true;
  for (auto& [p, f] : pows)
    if ((s == symEps() && f.e != 0) || f.coeff(s) != 0) return true;
  if (sign.coeff(s) != 0) return true;
  return false;
}

RatFun HypTerm::linRat() const {
  RatFun r(1);
  for (auto& [f, e] : lin) r = r * RatFun(f.toPoly()).pow(e);
  return r;
}

HypTerm HypTerm::operator*(const HypTerm& o) const {
  HypTerm r = *this;
  r.lin.insert(r.lin.end(), o.lin.begin(), o.lin.end());
  long zo = canonLin(r.lin, r.pre);
  if (zo != 0) {
    // interacting zero factors only resolve through full normalization
    for (; zo > 0; --zo) r.lin.push_back({LinearForm(), 1});
    for (; zo < 0; ++zo) r.lin.push_back({LinearForm(), -1});
  }
  for (auto& g : o.gammas) {
    bool merged = false;
    for (auto& h : r.gammas)
      if (h.arg == g.arg) {
        h.exp += g.exp;
        merged = true;
        break;
      }
    if (!merged) r.gammas.push_back(g);
  }
  r.gammas.erase(std::remove_if(r.gammas.begin(), r.gammas.end(),
                                [](const GammaFactor& g) { return g.exp == 0; }),
                 r.gammas.end());
  std::sort(r.gammas.begin(), r.gammas.end(),
            [](const GammaFactor& a, const GammaFactor& b) { return a.arg < b.arg; });
  for (auto& [p, f] : o.pows) {
    LinearForm cur = r.pows.count(p) ? r.pows[p] : LinearForm();
    cur = cur + f;
    if (cur.isZero())
      r.pows.erase(p);
    else
      r.pows[p] = cur;
  }
  r.sign = canonSign(r.sign + o.sign);
  r.piExp += o.piExp;
  r.gamEps += o.gamEps;
  r.pre = r.pre * o.pre;
  return r;
}

HypTerm HypTerm::inv() const {
  HypTerm r = *this;
  for (auto& [f, e] : r.lin) e = -e;
  for (auto& g : r.gammas) g.exp = -g.exp;
  for (auto& [p, f] : r.pows) f = -f;
  r.piExp = -piExp;
  r.gamEps = -gamEps;
  r.pre = pre.inv();
  return r;
}

HypTerm HypTerm::pow(long e) const {
  if (e == 0) return HypTerm::one();
  HypTerm b = e < 0 ? inv() : *this;
  long n = e < 0 ? -e : e;
  HypTerm r = b;
  for (long i = 1; i < n; ++i) r = r * b;
  return r;
}

HypTerm HypTerm::normalized() const {
  HypTerm r;
  r.lin = lin;
  r.pows = pows;
  r.sign = canonSign(sign);
  r.piExp = piExp;
  r.gamEps = gamEps;
  r.pre = pre;

  std::deque<GammaFactor> work(gammas.begin(), gammas.end());
  std::vector<GammaFactor> done;
  std::vector<GammaFactor> constG;  // pure-constant arguments, handled jointly
  while (!work.empty()) {
    GammaFactor g = work.front();
    work.pop_front();
    if (g.exp == 0) continue;
    checkGammaArg(g.arg);
    if (g.arg.a.empty() && g.arg.e == 0) {
      constG.push_back(g);
      continue;
    }
    LinearForm V;
    V.a = g.arg.a;
    Rat c = g.arg.c, rEps = g.arg.e;
    Sym lead = leadSym(g.arg);
    if (lead.valid() && g.arg.coeff(lead) < 0) {
      // falling direction: Gamma(x - m) = (-1)^m Gamma(x) Gamma(1-x) / Gamma(m+1-x)
      LinearForm m = -V;
      LinearForm x = LinearForm(c) + LinearForm::epsTerm(rEps);
      r.sign = canonSign(r.sign + m.scale(Rat(g.exp)));
      work.push_back({x, g.exp});
      work.push_back({LinearForm(Rat(1)) - x, g.exp});
      work.push_back({m + Rat(1) - x, -g.exp});
      continue;
    }
    Rat frac = mod1(c);
    if (frac == Rat(1, 2)) {
      // Gamma(A) = 2^(2-2A) sqrt(pi) Gamma(2A-1) / Gamma(A-1/2)
      LinearForm A = g.arg;
      LinearForm twoA1 = A.scale(Rat(2)) + Rat(-1);
      LinearForm Ah = A + Rat(-1, 2);
      HypTerm p2 = hypPow(Rat(2), LinearForm(Rat(2)) - A.scale(Rat(2)));
      for (auto& [p, f] : p2.pows) {
        LinearForm cur = r.pows.count(p) ? r.pows[p] : LinearForm();
        cur = cur + f.scale(Rat(g.exp));
        if (cur.isZero())
          r.pows.erase(p);
        else
          r.pows[p] = cur;
      }
      r.piExp += Rat(g.exp, 2);
      work.push_back({twoA1, g.exp});
      work.push_back({Ah, -g.exp});
      continue;
    }
    if (frac != 0)
      fail(ErrCode::Domain, "unsupported Gamma argument (constant part " + c.get_str() +
                                "): Gamma(" + g.arg.str() + ")");
    // integer constant: shift into window [1,2), i.e. constant exactly 1
    long d = toLong(c - 1);
    if (d != 0) {
      // d>0: Gamma(L) = Gamma(L-d) * prod_{t=1..d} (L-t)
      // d<0: Gamma(L) = Gamma(L-d) / prod_{t=0..-d-1} (L+t)
      if (d > 0)
        for (long t = 1; t <= d; ++t) r.lin.push_back({g.arg + Rat(-t), g.exp});
      else
        for (long t = 0; t < -d; ++t) r.lin.push_back({g.arg + Rat(t), -g.exp});
      LinearForm shifted = g.arg + Rat(-d);
      done.push_back({shifted, g.exp});
    } else {
      done.push_back(g);
    }
  }
  long zeroLinOrd = canonLin(r.lin, r.pre);
  // constant arguments evaluate exactly; poles may cancel between numerator
  // and denominator factors (Res Gamma(-m) = (-1)^m/m!) and against window
  // factors that became identically zero, so track the net order jointly,
  // as at evaluation time
  {
    long poleOrder = -zeroLinOrd;
    Rat poleFac(1), acc(1);
    for (auto& g : constG) {
      Rat v = g.arg.c;
      if (isInt(v)) {
        long vi = toLong(v);
        if (vi <= 0) {
          unsigned long m = (unsigned long)(-vi);
          poleOrder += g.exp;
          Int mf;
          mpz_fac_ui(mf.get_mpz_t(), m);
          Rat res(1, mf);
          if (m % 2) res = -res;
          poleFac *= ratPow(res, g.exp);
        } else {
          Int f;
          mpz_fac_ui(f.get_mpz_t(), (unsigned long)(vi - 1));
          acc *= ratPow(Rat(f), g.exp);
        }
      } else if (mod1(v) == Rat(1, 2)) {
        long k = toLong(v - Rat(1, 2));
        Rat f(1);
        if (k >= 0)
          for (long t = 0; t < k; ++t) f *= Rat(1, 2) + Rat(t);
        else
          for (long t = 1; t <= -k; ++t) f /= Rat(1, 2) - Rat(t);
        acc *= ratPow(f, g.exp);
        r.piExp += Rat(g.exp, 2);
      } else {
        fail(ErrCode::Domain, "unsupported constant Gamma argument " + v.get_str());
      }
    }
    if (poleOrder > 0)
      fail(ErrCode::Pole, "Gamma pole of order " + std::to_string(poleOrder) + " in " + str());
    if (poleOrder < 0) return HypTerm::rational(RatFun());  // surviving 1/Gamma(-m) = 0
    r.pre = r.pre * RatFun(acc * poleFac);
  }
  // merge equal arguments
  std::sort(done.begin(), done.end(),
            [](const GammaFactor& a, const GammaFactor& b) { return a.arg < b.arg; });
  for (auto& g : done) {
    if (!r.gammas.empty() && r.gammas.back().arg == g.arg)
      r.gammas.back().exp += g.exp;
    else
      r.gammas.push_back(g);
  }
  r.gammas.erase(std::remove_if(r.gammas.begin(), r.gammas.end(),
                                [](const GammaFactor& g) { return g.exp == 0; }),
                 r.gammas.end());
  for (auto it = r.pows.begin(); it != r.pows.end();)
    it = it->second.isZero() ? r.pows.erase(it) : std::next(it);
  if (r.gammas.empty() && !r.lin.empty()) {
    // no Gamma factors left, so the delta convention is vacuous: fold the
    // window factors into the plain rational prefactor
    r.pre = r.pre * r.linRat();
    r.lin.clear();
  }
  return r;
}

HypTerm HypTerm::subst(Sym s, const LinearForm& f) const {
  HypTerm r = *this;
  for (auto& [lf, e] : r.lin) lf = lf.subst(s, f);
  for (auto& g : r.gammas) g.arg = g.arg.subst(s, f);
  std::map<Int, LinearForm> np;
  for (auto& [p, lf] : r.pows) {
    LinearForm nf = lf.subst(s, f);
    if (!nf.isZero()) np[p] = nf;
  }
  r.pows = np;
  r.sign = sign.subst(s, f);  // re-canonicalized by normalized()
  r.pre = pre.subst(s, f);
  return r.normalized();
}

RatFun HypTerm::shiftQuotient(Sym s) const {
  RatFun q(1);
  for (auto& g : gammas) {
    Rat a = g.arg.coeff(s);
    if (a == 0) continue;
    if (!isInt(a))
      fail(ErrCode::Domain, "non-integer shift in Gamma(" + g.arg.str() + ")");
    long k = toLong(a);
    Poly prod(Rat(1));
    if (k > 0)
      for (long t = 0; t < k; ++t) prod *= (g.arg + Rat(t)).toPoly();
    else
      for (long t = 1; t <= -k; ++t) prod *= (g.arg + Rat(-t)).toPoly();
    RatFun fac = RatFun(prod);
    if (k < 0) fac = fac.inv();
    q = q * fac.pow(g.exp);
  }
  Rat scal(1);
  for (auto& [p, f] : pows) {
    Rat a = f.coeff(s);
    if (a == 0) continue;
    if (!isInt(a)) fail(ErrCode::Domain, "non-integer shift exponent on base " + p.get_str());
    scal *= ratPow(Rat(p), toLong(a));
  }
  Rat sg = sign.coeff(s);
  if (sg != 0 && numOf(sg) % 2 != 0) scal = -scal;
  q = q.scale(scal);
  for (auto& [f, e] : lin) {
    if (f.coeff(s) == 0) continue;
    RatFun lf(f.toPoly());
    q = q * (lf.shift(s, 1) / lf).pow(e);
  }
  if (pre.has(s)) q = q * (pre.shift(s, 1) / pre);
  return q;
}

ConstVal HypTerm::evalAt(const Assign& a) const {
  if (gamEps != 0) {
    auto it = a.find(symEps());
    if (it == a.end() || it->second != 0)
      fail(ErrCode::Domain, "exp(gamma*eps) factor cannot be evaluated at nonzero eps");
  }
  Rat acc(1);
  Rat piE = piExp;
  // Degenerate factors (vanishing window factors, Gamma poles) are resolved as a
  // joint limit.  When every degenerate argument carries a symbol, the point is
  // perturbed along their common direction: a window factor f contributes
  // (cf*delta)^e with cf its gradient there, Gamma(-m + cg*delta) ~
  // (-1)^m/(m! cg delta), and the limit exists iff the gradients are collinear.
  // A degenerate *constant* Gamma argument signals an analytic continuation in a
  // hidden parameter (e.g. the top of a negative binomial); then every
  // degenerate argument is regulated by a common +delta with unit coefficient.
  struct Deg {
    const LinearForm* f;  // gradient carrier (constant part irrelevant)
    long ord;             // delta order: e for windows, -exp for Gamma poles
    Rat resid;            // (-1)^m/m! residue factors, already raised to exp
  };
  std::vector<Deg> deg;
  bool constPole = false;
  long exactZero = 0;  // identically-zero window factors are not regulated
  for (auto& [f, e] : lin) {
    Rat v = f.eval(a);
    if (v == 0) {
      if (f.e != 0)
        fail(ErrCode::Pole, "eps-dependent window factor vanishes at the point; expand first");
      if (f.a.empty()) {
        if (e < 0) fail(ErrCode::Pole, "division by exact zero factor in " + str());
        exactZero += e;
      } else {
        deg.push_back({&f, e, Rat(1)});
      }
    } else {
      acc *= ratPow(v, e);
    }
  }
  for (auto& g : gammas) {
    Rat v = g.arg.eval(a);
    if (isInt(v)) {
      long vi = toLong(v);
      if (vi <= 0) {
        if (g.arg.e != 0)
          fail(ErrCode::Pole, "eps-dependent Gamma pole at the point; expand first");
        unsigned long m = (unsigned long)(-vi);
        Int mf;
        mpz_fac_ui(mf.get_mpz_t(), m);
        Rat res(1, mf);
        if (m % 2) res = -res;
        if (g.arg.a.empty()) constPole = true;
        deg.push_back({&g.arg, -g.exp, ratPow(res, g.exp)});
        continue;
      }
      Int f;
      mpz_fac_ui(f.get_mpz_t(), (unsigned long)(toLong(v) - 1));
      acc *= ratPow(Rat(f), g.exp);
    } else if (mod1(v) == Rat(1, 2)) {
      // Gamma(1/2 + k) = rational * sqrt(pi)
      long k = toLong(v - Rat(1, 2));
      Rat f(1);
      if (k >= 0)
        for (long t = 0; t < k; ++t) f *= Rat(1, 2) + Rat(t);
      else
        for (long t = 1; t <= -k; ++t) f /= Rat(1, 2) - Rat(t);
      acc *= ratPow(f, g.exp);
      piE += Rat(g.exp, 2);
    } else {
      fail(ErrCode::Domain, "Gamma at non-(half)integer point " + v.get_str());
    }
  }
  if (exactZero > 0) return ConstVal();  // an exact zero factor kills the term
  if (!deg.empty()) {
    long netOrd = 0;
    for (auto& d : deg) netOrd += d.ord;
    if (netOrd > 0) return ConstVal();
    if (netOrd < 0)
      fail(ErrCode::Pole, "pole of order " + std::to_string(-netOrd) + " in " + str());
    if (constPole) {
      for (auto& d : deg) acc *= d.resid;
    } else {
      const LinearForm& f0 = *deg[0].f;
      Sym dir = f0.a.begin()->first;
      Rat c0 = f0.a.begin()->second;
      for (auto& d : deg) {
        // collinearity with f0: cross products of all symbol coefficients agree
        Rat ci = d.f->coeff(dir);
        if (ci == 0) fail(ErrCode::Pole, "ambiguous joint limit at degenerate point in " + str());
        for (auto& [s, v] : f0.a)
          if (v * ci != d.f->coeff(s) * c0)
            fail(ErrCode::Pole, "ambiguous joint limit at degenerate point in " + str());
        for (auto& [s, v] : d.f->a)
          if (f0.coeff(s) == 0)
            fail(ErrCode::Pole, "ambiguous joint limit at degenerate point in " + str());
        acc *= d.resid * ratPow(ci, d.ord);
      }
    }
  }
  for (auto& [p, f] : pows) {
    Rat e = f.eval(a);
    if (!isInt(e)) fail(ErrCode::Domain, "non-integer exponent at evaluation: " + f.str());
    acc *= ratPow(Rat(p), toLong(e));
  }
  Rat sv = sign.eval(a);
  if (!isInt(sv)) fail(ErrCode::Domain, "non-integer Sign argument at evaluation");
  if (numOf(sv) % 2 != 0) acc = -acc;
  acc *= pre.eval(a);
  ConstVal r(acc);
  if (piE != 0 && !r.isZero()) r = r * ConstVal::atom(cPi(), piE);
  return r;
}

std::string HypTerm::str() const {
  std::ostringstream o;
  o << shapeKey();
  o << " * {" << pre.str() << "}";
  return o.str();
}

std::string HypTerm::shapeKey() const {
  std::ostringstream o;
  bool any = false;
  for (auto& [f, e] : lin) {
    if (any) o << " * ";
    any = true;
    o << "(" << f.str() << ")";
    if (e != 1) o << "^" << e;
  }
  for (auto& g : gammas) {
    if (any) o << " * ";
    any = true;
    o << "Gamma(" << g.arg.str() << ")";
    if (g.exp != 1) o << "^" << g.exp;
  }
  for (auto& [p, f] : pows) {
    if (any) o << " * ";
    any = true;
    o << "Pow(" << p.get_str() << ", " << f.str() << ")";
  }
  if (!sign.isZero()) {
    if (any) o << " * ";
    any = true;
    o << "Sign(" << sign.str() << ")";
  }
  if (piExp != 0) {
    if (any) o << " * ";
    any = true;
    o << "Pi^(" << piExp.get_str() << ")";
  }
  if (gamEps != 0) {
    if (any) o << " * ";
    any = true;
    o << "ExpGammaEps(" << gamEps.get_str() << ")";
  }
  if (!any) o << "1";
  return o.str();
}

size_t HypTerm::hash() const {
  size_t h = 0xabcd;
  for (auto& [f, e] : lin) h = hashCombine(h, hashCombine(f.hash(), (size_t)(long)e));
  for (auto& g : gammas) h = hashCombine(h, hashCombine(g.arg.hash(), (size_t)(long)g.exp));
  for (auto& [p, f] : pows) h = hashCombine(h, hashCombine(ratHash(Rat(p)), f.hash()));
  h = hashCombine(h, sign.hash());
  h = hashCombine(h, ratHash(piExp));
  h = hashCombine(h, ratHash(gamEps));
  h = hashCombine(h, pre.hash());
  return h;
}

}  // namespace epsum
