#include "epsum/nested.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "epsum/linalg.hpp"

namespace epsum {

Sym layerSym() { return SymTab::inst().intern("#", SymKind::Layer); }

bool SumLayer::operator==(const SumLayer& o) const {
  if (x != o.x || !(rat == o.rat)) return false;
  if (hyp.has_value() != o.hyp.has_value()) return false;
  return !hyp || *hyp == *o.hyp;
}

std::string SumLayer::key() const {
  std::ostringstream s;
  s << x.get_str() << "|" << rat.str();
  if (hyp) s << "|" << hyp->str();
  return s.str();
}

int SumLayer::weight() const {
  Sym i = layerSym();
  int w = rat.den.deg(i) - rat.num.deg(i);
  return w >= 1 ? w : 1;
}

HypTerm SumLayer::at(const LinearForm& point) const {
  HypTerm t = hypPow(x, point);
  if (hyp) t = t * hyp->subst(layerSym(), point);
  t.pre = t.pre * rat.subst(layerSym(), point);
  return t;
}

SumLayer SumLayer::substFree(Sym s, const LinearForm& f) const {
  if (s == layerSym()) fail(ErrCode::Internal, "substFree on the bound layer symbol");
  SumLayer r = *this;
  r.rat = rat.subst(s, f);
  if (hyp) r.hyp = hyp->subst(s, f);
  return r;
}

bool SumLayer::epsFree() const {
  return !rat.has(symEps()) && (!hyp || hyp->epsFree());
}

int layerCmp(const SumLayer& a, const SumLayer& b) {
  int wa = a.weight(), wb = b.weight();
  if (wa != wb) return wa > wb ? -1 : 1;  // higher weight = smaller letter
  std::string ka = a.key(), kb = b.key();
  if (ka != kb) return ka < kb ? -1 : 1;
  return 0;
}

SumLayer mergeLayers(const SumLayer& a, const SumLayer& b) {
  SumLayer r;
  r.x = a.x * b.x;
  r.rat = a.rat * b.rat;
  if (a.hyp && b.hyp)
    r.hyp = *a.hyp * *b.hyp;
  else if (a.hyp)
    r.hyp = a.hyp;
  else if (b.hyp)
    r.hyp = b.hyp;
  return r;
}

bool isLyndon(const Word& w) {
  if (w.empty()) return false;
  if (w.size() == 1) return true;
  // strictly smaller than all proper rotations
  size_t n = w.size();
  for (size_t r = 1; r < n; ++r) {
    int cmp = 0;
    for (size_t i = 0; i < n; ++i) {
      cmp = layerCmp(w[i], w[(i + r) % n]);
      if (cmp != 0) break;
    }
    if (cmp >= 0) return false;
  }
  return true;
}

SumLayer harmonicLayer(int c) {
  if (c == 0) fail(ErrCode::Domain, "harmonic index 0");
  SumLayer l;
  l.x = c < 0 ? Rat(-1) : Rat(1);
  l.rat = RatFun(Poly(1), Poly::var(layerSym(), c < 0 ? -c : c));
  return l;
}

SumLayer cycLayer(long a, long b, int c, const Rat& x) {
  if (a <= 0 || b < 0 || a <= b || c == 0)
    fail(ErrCode::Domain, "cyclotomic letter needs a > b >= 0, c != 0");
  if (x == 0) fail(ErrCode::Domain, "cyclotomic letter needs x != 0");
  SumLayer l;
  l.x = x;
  Poly base = Poly(Rat(a)) * Poly::var(layerSym()) + Poly(Rat(b));
  if (c > 0)
    l.rat = RatFun(Poly(1), base.pow(c));
  else
    l.rat = RatFun(base.pow(-c));
  return l;
}

bool GSum::operator<(const GSum& o) const { return key() < o.key(); }

std::optional<std::vector<int>> GSum::harmonicWord() const {
  std::vector<int> w;
  Sym i = layerSym();
  for (auto& l : layers) {
    if (l.hyp) return std::nullopt;
    if (l.x != 1 && l.x != -1) return std::nullopt;
    if (!l.rat.num.is(1)) return std::nullopt;
    auto& d = l.rat.den;
    if (d.ts.size() != 1 || d.lc() != 1) return std::nullopt;
    int c = d.deg(i);
    if (c < 1 || d.lm().totalDeg() != c) return std::nullopt;
    w.push_back(l.x == -1 ? -c : c);
  }
  return w;
}

std::optional<GSum::CycView> GSum::cycView() const {
  // rat = r/(i + q)^c with monic den (normalization) encodes x^i/(a i + b)^c
  // when q = b/a and r = 1/a^c
  CycView v;
  Sym i = layerSym();
  for (auto& l : layers) {
    if (l.hyp) return std::nullopt;
    if (!l.rat.num.isConst() || l.rat.den.isConst()) return std::nullopt;
    Rat r = l.rat.num.constVal();
    const Poly& d = l.rat.den;
    int c = d.deg(i);
    if (c < 1 || d.totalDeg() != c) return std::nullopt;
    Rat q = d.coeffOf(i, c - 1).constVal() / Rat(c);
    if (!((Poly::var(i) + Poly(q)).pow(c) == d)) return std::nullopt;
    if (q < 0) return std::nullopt;
    // 1/r must be a^c for a positive integer a with q*a integral
    Rat s = Rat(1) / r;
    if (!isInt(s) || s <= 0) return std::nullopt;
    Int a, rem;
    mpz_rootrem(a.get_mpz_t(), rem.get_mpz_t(), numOf(s).get_mpz_t(), (unsigned long)c);
    if (rem != 0) return std::nullopt;
    Rat bq = q * Rat(a);
    if (!isInt(bq)) return std::nullopt;
    long av = toLong(a), bv = toLong(bq);
    if (av <= bv) return std::nullopt;
    v.abc.push_back({av, bv, c});
    v.xs.push_back(l.x);
  }
  return v;
}

GSum GSum::substFree(Sym s, const LinearForm& f) const {
  GSum r = *this;
  for (auto& l : r.layers) l = l.substFree(s, f);
  r.arg = arg.subst(s, f);
  return r;
}

bool GSum::epsFree() const {
  if (arg.e != 0) return false;
  for (auto& l : layers)
    if (!l.epsFree()) return false;
  return true;
}

std::set<Sym> GSum::freeVars() const {
  std::set<Sym> r;
  Sym i = layerSym();
  for (auto& l : layers) {
    for (Sym s : l.rat.vars())
      if (s != i) r.insert(s);
    if (l.hyp)
      for (Sym s : l.hyp->vars())
        if (s != i) r.insert(s);
  }
  for (auto& [s, c] : arg.a) r.insert(s);
  return r;
}

namespace {

ConstVal sumEvalRec(const std::vector<SumLayer>& layers, size_t level, long upper, Assign& a) {
  if (level == layers.size()) return ConstVal(Rat(1));
  ConstVal acc;
  const SumLayer& L = layers[level];
  Sym i = layerSym();
  for (long v = 1; v <= upper; ++v) {
    a[i] = Rat(v);
    ConstVal f = L.hyp ? L.hyp->evalAt(a) : ConstVal(Rat(1));
    Rat rv = L.rat.eval(a) * ratPow(L.x, v);
    a.erase(i);
    if (rv == 0) continue;
    ConstVal inner = sumEvalRec(layers, level + 1, v, a);
    acc += (f * inner).scale(rv);
  }
  return acc;
}

}  // namespace

ConstVal GSum::evalAt(const Assign& a) const {
  Rat m = arg.eval(a);
  if (!isInt(m)) fail(ErrCode::Domain, "sum bound " + arg.str() + " is not an integer");
  long M = toLong(m);
  if (M < 0)
    fail(ErrCode::Domain, "sum " + str() + " evaluated at negative argument " + m.get_str());
  Assign b = a;
  return sumEvalRec(layers, 0, M, b);
}

std::string GSum::str() const {
  std::ostringstream o;
  if (auto hw = harmonicWord()) {
    o << "S[";
    for (size_t i = 0; i < hw->size(); ++i) o << (i ? "," : "") << (*hw)[i];
    o << "; " << arg.str() << "]";
    return o.str();
  }
  if (auto cv = cycView()) {
    o << "S[";
    for (size_t i = 0; i < cv->abc.size(); ++i) {
      auto& t = cv->abc[i];
      o << (i ? "," : "") << "(" << t[0] << "," << t[1] << "," << t[2] << ")";
    }
    o << "; ";
    for (size_t i = 0; i < cv->xs.size(); ++i) o << (i ? "," : "") << cv->xs[i].get_str();
    o << "; " << arg.str() << "]";
    return o.str();
  }
  // general nested form (diagnostic; bound variables print as #1, #2, ...)
  std::string inner;
  for (size_t d = layers.size(); d-- > 0;) {
    std::string idx = "#" + std::to_string(d + 1);
    std::string up = d == 0 ? arg.str() : "#" + std::to_string(d);
    Sym i = layerSym();
    LinearForm pt = LinearForm::sym(SymTab::inst().layerVar((int)d + 1));
    std::ostringstream body;
    const SumLayer& L = layers[d];
    bool star = false;
    if (L.x != 1) {
      body << "Pow(" << L.x.get_str() << ", " << idx << ")";
      star = true;
    }
    if (!L.rat.is(1) || (L.x == 1 && !L.hyp && inner.empty())) {
      if (star) body << " * ";
      RatFun rs = L.rat.subst(i, pt);
      body << "(" << rs.str() << ")";
      star = true;
    }
    if (L.hyp) {
      if (star) body << " * ";
      body << L.hyp->subst(i, pt).str();
      star = true;
    }
    if (!inner.empty()) {
      if (star) body << " * ";
      body << inner;
    }
    std::ostringstream s;
    s << "Sum(" << idx << ", 1, " << up << ", " << body.str() << ")";
    inner = s.str();
  }
  return inner;
}

std::string GSum::key() const {
  std::ostringstream o;
  for (auto& l : layers) o << l.key() << "&";
  o << "@" << arg.str();
  return o.str();
}

size_t GSum::hash() const {
  size_t h = 77;
  for (auto& l : layers) {
    h = hashCombine(h, ratHash(l.x));
    h = hashCombine(h, l.rat.hash());
    if (l.hyp) h = hashCombine(h, l.hyp->hash());
  }
  return hashCombine(h, arg.hash());
}

GSum harmonicSum(const std::vector<int>& cs, const LinearForm& arg) {
  GSum s;
  for (int c : cs) s.layers.push_back(harmonicLayer(c));
  s.arg = arg;
  return s;
}

std::string SumTerm::shapeKey() const {
  std::ostringstream o;
  o << hyp.shapeKey() << " || ";
  for (auto& [s, e] : sums) o << s.key() << "^" << e << " ";
  o << "|| " << cmonoStr(consts);
  return o.str();
}

bool SumTerm::operator==(const SumTerm& o) const {
  return hyp == o.hyp && sums == o.sums && consts == o.consts;
}

SumExpr SumExpr::fromRat(const RatFun& f) {
  SumExpr e;
  if (!f.isZero()) {
    SumTerm t;
    t.hyp = HypTerm::rational(f);
    e.terms.push_back(t);
  }
  return e;
}

SumExpr SumExpr::fromHyp(const HypTerm& t) {
  SumExpr e;
  if (!t.isZero()) {
    SumTerm s;
    s.hyp = t;
    e.terms.push_back(s);
  }
  return e;
}

SumExpr SumExpr::fromSum(const GSum& s, const RatFun& coef) {
  if (s.layers.empty()) return fromRat(coef);  // empty word: the sum is 1
  SumExpr e;
  if (!coef.isZero()) {
    SumTerm t;
    t.hyp = HypTerm::rational(coef);
    t.sums[s] = 1;
    e.terms.push_back(t);
  }
  return e;
}

SumExpr SumExpr::fromConst(const ConstVal& v) {
  SumExpr e;
  for (auto& [mono, c] : v.t) {
    SumTerm t;
    t.hyp = HypTerm::rational(RatFun(c));
    // rational exponents stay in the const monomial
    for (auto& [k, ex] : mono) t.consts[k] = ex;
    e.terms.push_back(t);
  }
  e.normalizeTerms();
  return e;
}

void SumExpr::normalizeTerms() {
  std::sort(terms.begin(), terms.end(),
            [](const SumTerm& a, const SumTerm& b) { return a.shapeKey() < b.shapeKey(); });
  std::vector<SumTerm> out;
  for (auto& t : terms) {
    if (t.hyp.pre.isZero()) continue;
    if (!out.empty() && out.back().shapeKey() == t.shapeKey()) {
      out.back().hyp.pre += t.hyp.pre;
      if (out.back().hyp.pre.isZero()) out.pop_back();
    } else {
      out.push_back(t);
    }
  }
  terms = std::move(out);
}

SumExpr SumExpr::operator+(const SumExpr& o) const {
  SumExpr r = *this;
  r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
  r.normalizeTerms();
  return r;
}

SumExpr SumExpr::operator-() const {
  SumExpr r = *this;
  for (auto& t : r.terms) t.hyp.pre = -t.hyp.pre;
  return r;
}

SumExpr SumExpr::operator*(const SumExpr& o) const {
  SumExpr r;
  for (auto& a : terms)
    for (auto& b : o.terms) {
      SumTerm t;
      t.hyp = a.hyp * b.hyp;
      t.sums = a.sums;
      for (auto& [s, e] : b.sums) t.sums[s] += e;
      t.consts = a.consts;
      for (auto& [k, e] : b.consts) {
        Rat ne = (t.consts.count(k) ? t.consts[k] : Rat(0)) + e;
        if (ne == 0)
          t.consts.erase(k);
        else
          t.consts[k] = ne;
      }
      r.terms.push_back(t);
    }
  r.normalizeTerms();
  return r;
}

SumExpr SumExpr::scale(const RatFun& f) const {
  if (f.isZero()) return SumExpr();
  SumExpr r = *this;
  for (auto& t : r.terms) t.hyp.pre = t.hyp.pre * f;
  return r;
}

SumExpr SumExpr::mulHyp(const HypTerm& h) const { return *this * fromHyp(h); }
SumExpr SumExpr::mulConst(const ConstVal& v) const { return *this * fromConst(v); }

std::optional<RatFun> SumExpr::asRatFun() const {
  if (terms.empty()) return RatFun();
  if (terms.size() != 1) return std::nullopt;
  const SumTerm& t = terms[0];
  if (!t.sums.empty() || !t.consts.empty() || !t.hyp.isRational()) return std::nullopt;
  return t.hyp.pre;
}

std::optional<ConstVal> SumExpr::asConst() const {
  ConstVal v;
  for (auto& t : terms) {
    if (!t.sums.empty() || !t.hyp.isRational() || !t.hyp.pre.isConst()) return std::nullopt;
    CMono m = t.consts;
    ConstVal piece(t.hyp.pre.constVal());
    ConstVal mono(Rat(1));
    for (auto& [k, e] : m) mono *= ConstVal::atom(k, e);
    v += piece * mono;
  }
  return v;
}

SumExpr SumExpr::substFree(Sym s, const LinearForm& f) const {
  SumExpr r;
  for (auto& t : terms) {
    SumTerm nt;
    nt.hyp = t.hyp.subst(s, f);
    for (auto& [g, e] : t.sums) nt.sums[g.substFree(s, f)] += e;
    nt.consts = t.consts;
    r.terms.push_back(nt);
  }
  r.normalizeTerms();
  return r;
}

ConstVal SumExpr::evalAt(const Assign& a) const {
  ConstVal acc;
  for (auto& t : terms) {
    ConstVal v = t.hyp.evalAt(a);
    if (v.isZero()) continue;
    for (auto& [g, e] : t.sums) {
      ConstVal sv = g.evalAt(a);
      for (int i = 0; i < e; ++i) v *= sv;
      if (v.isZero()) break;
    }
    if (v.isZero()) continue;
    for (auto& [k, e] : t.consts) v *= ConstVal::atom(k, e);
    acc += v;
  }
  return acc;
}

Rat SumExpr::evalRatAt(const Assign& a) const {
  ConstVal v = evalAt(a);
  if (!v.isRat()) fail(ErrCode::Domain, "expected rational value, got " + v.str());
  return v.ratVal();
}

bool SumExpr::epsFree() const {
  Sym e = symEps();
  for (auto& t : terms) {
    if (!t.hyp.epsFree()) return false;
    for (auto& [g, ex] : t.sums)
      if (!g.epsFree()) return false;
  }
  (void)e;
  return true;
}

bool SumExpr::has(Sym s) const {
  for (auto& t : terms) {
    if (t.hyp.has(s)) return true;
    for (auto& [g, e] : t.sums) {
      if (g.arg.coeff(s) != 0) return true;
      if (g.freeVars().count(s)) return true;
    }
  }
  return false;
}

std::set<Sym> SumExpr::freeVars() const {
  std::set<Sym> r;
  for (auto& t : terms) {
    for (Sym s : t.hyp.vars()) r.insert(s);
    for (auto& [g, e] : t.sums)
      for (Sym s : g.freeVars()) r.insert(s);
  }
  r.erase(layerSym());
  return r;
}

std::vector<GSum> SumExpr::collectSums() const {
  std::vector<GSum> out;
  for (auto& t : terms)
    for (auto& [g, e] : t.sums)
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  return out;
}

std::string SumExpr::str() const {
  if (terms.empty()) return "0";
  std::ostringstream o;
  bool first = true;
  for (auto& t : terms) {
    if (!first) o << " + ";
    first = false;
    o << "(" << t.hyp.pre.str() << ")";
    std::string sk = t.hyp.shapeKey();
    if (sk != "1") o << " * " << sk;
    for (auto& [g, e] : t.sums) {
      o << " * " << g.str();
      if (e != 1) o << "^" << e;
    }
    if (!t.consts.empty()) o << " * " << cmonoStr(t.consts);
  }
  return o.str();
}

// ---------- argument canonicalization ----------

namespace {

SumExpr termToExpr(const SumTerm& t) {
  SumExpr e;
  e.terms.push_back(t);
  return e;
}

// one step: S(V + c) expressed through sums at argument one closer to V
SumExpr unfoldOnce(const GSum& s, long c) {
  GSum inner;
  inner.layers = Word(s.layers.begin() + 1, s.layers.end());
  if (c > 0) {
    // S(T) = S(T-1) + f1(T) * Inner(T),  T = V + c
    GSum shifted = s;
    shifted.arg = s.arg + Rat(-1);
    SumExpr r = SumExpr::fromSum(shifted);
    HypTerm f = s.layers[0].at(s.arg);
    SumExpr debris = SumExpr::fromHyp(f);
    if (!inner.layers.empty()) {
      inner.arg = s.arg;
      debris = debris * SumExpr::fromSum(inner);
    }
    return r + debris;
  }
  // c < 0: S(T) = S(T+1) - f1(T+1) * Inner(T+1)
  GSum shifted = s;
  shifted.arg = s.arg + Rat(1);
  SumExpr r = SumExpr::fromSum(shifted);
  HypTerm f = s.layers[0].at(s.arg + Rat(1));
  SumExpr debris = SumExpr::fromHyp(f);
  if (!inner.layers.empty()) {
    inner.arg = s.arg + Rat(1);
    debris = debris * SumExpr::fromSum(inner);
  }
  return r - debris;
}

}  // namespace

SumExpr canonicalizeArgs(const SumExpr& e) {
  SumExpr cur = e;
  while (true) {
    bool changed = false;
    SumExpr next;
    for (auto& t : cur.terms) {
      const GSum* target = nullptr;
      for (auto& [g, ex] : t.sums) {
        if (!isInt(g.arg.c))
          fail(ErrCode::Domain, "sum argument with non-integer offset: " + g.arg.str());
        if (g.arg.c != 0 || (g.arg.a.empty() && g.arg.e == 0)) {
          target = &g;
          break;
        }
      }
      if (!target) {
        next += termToExpr(t);
        continue;
      }
      changed = true;
      GSum s = *target;
      int ex = t.sums.at(s);
      SumTerm base = t;
      base.sums.erase(s);
      SumExpr rep;
      if (s.arg.isZero()) {
        rep = SumExpr();  // S(0) = 0
      } else {
        rep = unfoldOnce(s, toLong(s.arg.c));
      }
      SumExpr repPow = rep;
      for (int i = 1; i < ex; ++i) repPow *= rep;
      next += termToExpr(base) * repPow;
    }
    cur = next;
    if (!changed) break;
  }
  return cur;
}

// ---------- stuffle ----------

namespace {

std::string wordKey(const Word& w) {
  std::string s;
  for (auto& l : w) s += l.key() + "&";
  return s;
}

using WordComb = std::map<std::string, std::pair<Word, Rat>>;

void wcAdd(WordComb& a, const Word& w, const Rat& c) {
  std::string k = wordKey(w);
  auto it = a.find(k);
  if (it == a.end()) {
    if (c != 0) a[k] = {w, c};
  } else {
    it->second.second += c;
    if (it->second.second == 0) a.erase(it);
  }
}

WordComb wordStuffle(const Word& u, const Word& v);

std::map<std::string, WordComb>& stuffleMemo() {
  static std::map<std::string, WordComb> m;
  return m;
}
std::mutex stuffleMu;

WordComb wordStuffle(const Word& u, const Word& v) {
  if (u.empty()) {
    WordComb r;
    wcAdd(r, v, Rat(1));
    return r;
  }
  if (v.empty()) {
    WordComb r;
    wcAdd(r, u, Rat(1));
    return r;
  }
  std::string mk = wordKey(u) + "**" + wordKey(v);
  {
    std::lock_guard<std::mutex> g(stuffleMu);
    auto it = stuffleMemo().find(mk);
    if (it != stuffleMemo().end()) return it->second;
  }
  Word u1(u.begin() + 1, u.end());
  Word v1(v.begin() + 1, v.end());
  WordComb r;
  auto prefix = [&](const SumLayer& head, const WordComb& tail, const Rat& sgn) {
    for (auto& [k, wc] : tail) {
      Word w;
      w.push_back(head);
      w.insert(w.end(), wc.first.begin(), wc.first.end());
      wcAdd(r, w, wc.second * sgn);
    }
  };
  prefix(u[0], wordStuffle(u1, v), Rat(1));
  prefix(v[0], wordStuffle(u, v1), Rat(1));
  prefix(mergeLayers(u[0], v[0]), wordStuffle(u1, v1), Rat(-1));
  {
    std::lock_guard<std::mutex> g(stuffleMu);
    stuffleMemo()[mk] = r;
  }
  return r;
}

}  // namespace

SumExpr stuffleMul(const GSum& a, const GSum& b) {
  if (!(a.arg == b.arg))
    fail(ErrCode::Internal, "stuffle of sums with different arguments: " + a.str() + " vs " +
                                b.str());
  WordComb wc = wordStuffle(a.layers, b.layers);
  SumExpr r;
  for (auto& [k, p] : wc) {
    GSum s;
    s.layers = p.first;
    s.arg = a.arg;
    r += SumExpr::fromSum(s, RatFun(p.second));
  }
  return r;
}

namespace {

// expand every same-argument product of sums into single nested sums
SumExpr expandSameArg(const SumExpr& e) {
  SumExpr cur = e;
  while (true) {
    bool changed = false;
    SumExpr next;
    for (auto& t : cur.terms) {
      const GSum *g1 = nullptr, *g2 = nullptr;
      for (auto it = t.sums.begin(); it != t.sums.end() && !g1; ++it) {
        if (it->second >= 2) {
          g1 = g2 = &it->first;
          break;
        }
        for (auto jt = std::next(it); jt != t.sums.end(); ++jt)
          if (jt->first.arg == it->first.arg) {
            g1 = &it->first;
            g2 = &jt->first;
            break;
          }
      }
      if (!g1) {
        next += termToExpr(t);
        continue;
      }
      changed = true;
      GSum a = *g1, b = *g2;
      SumTerm base = t;
      if (a == b) {
        if ((base.sums[a] -= 2) == 0) base.sums.erase(a);
      } else {
        if (--base.sums[a] == 0) base.sums.erase(a);
        if (--base.sums[b] == 0) base.sums.erase(b);
      }
      next += termToExpr(base) * stuffleMul(a, b);
    }
    cur = next;
    if (!changed) break;
  }
  return cur;
}

}  // namespace

SumExpr quasiShuffle(const SumExpr& a, const SumExpr& b) { return expandSameArg(a * b); }

// ---------- Lyndon-basis reduction ----------

namespace {

// multiset of Lyndon words with exponents, canonically keyed
struct LMono {
  std::vector<std::pair<Word, int>> fs;
  std::string key() const {
    std::string s;
    for (auto& [w, e] : fs) s += wordKey(w) + "^" + std::to_string(e) + " ";
    return s;
  }
};

using Decomp = std::map<std::string, std::pair<LMono, Rat>>;

void dAdd(Decomp& d, const LMono& m, const Rat& c) {
  std::string k = m.key();
  auto it = d.find(k);
  if (it == d.end()) {
    if (c != 0) d[k] = {m, c};
  } else {
    it->second.second += c;
    if (it->second.second == 0) d.erase(it);
  }
}

LMono monoOfWords(std::vector<Word> ws) {
  std::sort(ws.begin(), ws.end(),
            [](const Word& a, const Word& b) { return wordKey(a) < wordKey(b); });
  LMono m;
  for (auto& w : ws) {
    if (!m.fs.empty() && wordKey(m.fs.back().first) == wordKey(w))
      m.fs.back().second++;
    else
      m.fs.push_back({w, 1});
  }
  return m;
}

// stuffle-expand a monomial fully into words
WordComb expandMono(const LMono& m) {
  WordComb acc;
  wcAdd(acc, Word{}, Rat(1));
  for (auto& [w, e] : m.fs)
    for (int i = 0; i < e; ++i) {
      WordComb next;
      for (auto& [k, p] : acc) {
        WordComb prod = wordStuffle(p.first, w);
        for (auto& [k2, q] : prod) wcAdd(next, q.first, q.second * p.second);
      }
      acc = next;
    }
  return acc;
}

// enumerate all multisets of Lyndon words partitioning the letter multiset;
// blocks are generated as partitions of positions (the block containing the
// first remaining letter is chosen at each step), duplicates merged by key
void enumeratePartitions(const std::vector<SumLayer>& letters, std::vector<Word>& cur,
                         std::map<std::string, LMono>& out) {
  if (letters.empty()) {
    LMono m = monoOfWords(cur);
    out.emplace(m.key(), m);
    return;
  }
  size_t n = letters.size();
  auto less = [](const SumLayer& a, const SumLayer& b) { return layerCmp(a, b) < 0; };
  for (unsigned long mask = 0; mask < (1ul << (n - 1)); ++mask) {
    std::vector<SumLayer> part{letters[0]};
    std::vector<SumLayer> rest;
    for (size_t i = 1; i < n; ++i) {
      if (mask & (1ul << (i - 1)))
        part.push_back(letters[i]);
      else
        rest.push_back(letters[i]);
    }
    std::sort(part.begin(), part.end(), less);
    do {
      Word w(part.begin(), part.end());
      if (!isLyndon(w)) continue;
      cur.push_back(w);
      enumeratePartitions(rest, cur, out);
      cur.pop_back();
    } while (std::next_permutation(part.begin(), part.end(), less));
  }
}

Decomp decomposeWord(const Word& w);

std::map<std::string, Decomp>& decompMemo() {
  static std::map<std::string, Decomp> m;
  return m;
}
std::mutex decompMu;

Decomp decomposeWord(const Word& w) {
  Decomp d;
  if (w.empty()) fail(ErrCode::Internal, "decomposeWord on empty word");
  if (isLyndon(w)) {
    dAdd(d, monoOfWords({w}), Rat(1));
    return d;
  }
  std::string mk = wordKey(w);
  {
    std::lock_guard<std::mutex> g(decompMu);
    auto it = decompMemo().find(mk);
    if (it != decompMemo().end()) return it->second;
  }
  size_t L = w.size();
  std::vector<LMono> cands;
  {
    std::vector<Word> cur;
    std::map<std::string, LMono> uniq;
    enumeratePartitions(w, cur, uniq);
    for (auto& [k, m] : uniq) cands.push_back(m);
  }
  // rows: length-L words appearing in the expansions (they all share w's
  // letter multiset); cols: candidate monomials
  std::map<std::string, size_t> rowIdx;
  std::vector<WordComb> tops(cands.size());
  std::vector<WordComb> fulls(cands.size());
  for (size_t c = 0; c < cands.size(); ++c) {
    fulls[c] = expandMono(cands[c]);
    for (auto& [k, p] : fulls[c]) {
      if (p.first.size() == L) {
        tops[c][k] = p;
        if (!rowIdx.count(k)) rowIdx[k] = rowIdx.size();
      }
    }
  }
  if (!rowIdx.count(mk)) fail(ErrCode::Internal, "Lyndon decomposition: target word not spanned");
  std::vector<std::vector<Rat>> A(rowIdx.size(), std::vector<Rat>(cands.size(), Rat(0)));
  std::vector<Rat> b(rowIdx.size(), Rat(0));
  for (size_t c = 0; c < cands.size(); ++c)
    for (auto& [k, p] : tops[c]) A[rowIdx[k]][c] = p.second;
  b[rowIdx[mk]] = Rat(1);
  auto sol = solveLinear<Rat>(A, b);
  if (!sol.consistent) fail(ErrCode::Internal, "Lyndon decomposition system inconsistent");
  for (size_t c = 0; c < cands.size(); ++c) {
    Rat alpha = sol.particular[c];
    if (alpha == 0) continue;
    dAdd(d, cands[c], alpha);
    // subtract the lower-length debris recursively
    for (auto& [k, p] : fulls[c]) {
      if (p.first.size() == L) continue;
      Decomp sub = decomposeWord(p.first);
      for (auto& [k2, q] : sub) dAdd(d, q.first, -alpha * p.second * q.second);
    }
  }
  {
    std::lock_guard<std::mutex> g(decompMu);
    decompMemo()[mk] = d;
  }
  return d;
}

}  // namespace

SumExpr reduceToBasis(const SumExpr& e) {
  // phase A: constant-free arguments, same-argument products -> single words
  SumExpr flat = expandSameArg(canonicalizeArgs(e));
  // phase B: rewrite every non-Lyndon word as a polynomial in Lyndon words
  SumExpr out;
  for (auto& t : flat.terms) {
    SumExpr piece = termToExpr(SumTerm{t.hyp, {}, t.consts});
    for (auto& [g, ex] : t.sums) {
      SumExpr rep;
      if (isLyndon(g.layers)) {
        rep = SumExpr::fromSum(g);
      } else {
        Decomp d = decomposeWord(g.layers);
        for (auto& [k, p] : d) {
          SumTerm mt;
          mt.hyp = HypTerm::rational(RatFun(p.second));
          for (auto& [w, pw] : p.first.fs) {
            GSum s;
            s.layers = w;
            s.arg = g.arg;
            mt.sums[s] = pw;
          }
          rep += termToExpr(mt);
        }
      }
      for (int i = 0; i < ex; ++i) piece = piece * rep;
    }
    out += piece;
  }
  return out;
}

bool gammaFree(const SumExpr& e) {
  for (auto& t : e.terms) {
    if (t.hyp.gamEps != 0) return false;
    for (auto& [k, ex] : t.consts)
      if (k.tag == CKey::EulerGamma) return false;
  }
  return true;
}

}  // namespace epsum
