#pragma once
#include <optional>

#include "epsum/hyp.hpp"

namespace epsum {

// the reserved bound variable: every sum layer is written in this symbol
Sym layerSym();

// one summation layer: contributes x^i * rat(i) * hyp(i) at index i, summed
// from 1 up to the enclosing layer's index (outermost: up to GSum::arg)
struct SumLayer {
  Rat x = Rat(1);
  RatFun rat = RatFun(1);
  std::optional<HypTerm> hyp;

  bool operator==(const SumLayer& o) const;
  std::string key() const;  // canonical encoding, also the letter-order key
  // sum-weight of the letter: deg_#(den) - deg_#(num), floored at 1
  int weight() const;
  // evaluate the factor at a symbolic point (consumes '#')
  HypTerm at(const LinearForm& point) const;
  SumLayer substFree(Sym s, const LinearForm& f) const;
  bool epsFree() const;
};

// letter order for Lyndon words: higher weight = smaller letter
int layerCmp(const SumLayer& a, const SumLayer& b);
SumLayer mergeLayers(const SumLayer& a, const SumLayer& b);

using Word = std::vector<SumLayer>;

bool isLyndon(const Word& w);

// harmonic letter 1/i^|c|, alternating when c < 0
SumLayer harmonicLayer(int c);
// cyclotomic letter x^i/(a i + b)^c
SumLayer cycLayer(long a, long b, int c, const Rat& x);

struct GSum {
  Word layers;
  LinearForm arg;

  int depth() const { return (int)layers.size(); }
  bool operator==(const GSum& o) const { return arg == o.arg && layers == o.layers; }
  bool operator<(const GSum& o) const;

  // S[c1,...,cd; arg] when all layers are harmonic
  std::optional<std::vector<int>> harmonicWord() const;
  // S[(a,b,c),...; x,...; arg] when all layers are cyclotomic
  struct CycView {
    std::vector<std::array<long, 3>> abc;
    std::vector<Rat> xs;
  };
  std::optional<CycView> cycView() const;

  GSum substFree(Sym s, const LinearForm& f) const;
  ConstVal evalAt(const Assign& a) const;
  bool epsFree() const;
  std::set<Sym> freeVars() const;

  std::string str() const;
  std::string key() const;
  size_t hash() const;
};

GSum harmonicSum(const std::vector<int>& cs, const LinearForm& arg);

struct SumTerm {
  HypTerm hyp;               // hyp.pre carries the rational coefficient
  std::map<GSum, int> sums;  // exponents >= 1
  CMono consts;

  std::string shapeKey() const;  // everything except hyp.pre
  bool operator==(const SumTerm& o) const;
};

class SumExpr {
public:
  std::vector<SumTerm> terms;  // sorted by shapeKey, nonzero coefficients

  SumExpr() = default;
  static SumExpr fromRat(const RatFun& f);
  static SumExpr fromHyp(const HypTerm& t);
  static SumExpr fromSum(const GSum& s, const RatFun& coef = RatFun(1));
  static SumExpr fromConst(const ConstVal& v);

  bool isZero() const { return terms.empty(); }
  // purely rational expression (single term, no sums/consts/hyp shape)
  std::optional<RatFun> asRatFun() const;
  std::optional<ConstVal> asConst() const;

  SumExpr operator+(const SumExpr& o) const;
  SumExpr operator-() const;
  SumExpr operator-(const SumExpr& o) const { return *this + (-o); }
  SumExpr operator*(const SumExpr& o) const;
  SumExpr scale(const RatFun& f) const;
  SumExpr scale(const Rat& c) const { return scale(RatFun(c)); }
  SumExpr mulHyp(const HypTerm& t) const;
  SumExpr mulConst(const ConstVal& v) const;
  SumExpr& operator+=(const SumExpr& o) { return *this = *this + o; }
  SumExpr& operator-=(const SumExpr& o) { return *this = *this - o; }
  SumExpr& operator*=(const SumExpr& o) { return *this = *this * o; }
  bool operator==(const SumExpr& o) const { return terms == o.terms; }

  SumExpr substFree(Sym s, const LinearForm& f) const;
  SumExpr shiftFree(Sym s, long d) const { return substFree(s, LinearForm::sym(s) + Rat(d)); }

  ConstVal evalAt(const Assign& a) const;
  Rat evalRatAt(const Assign& a) const;

  bool epsFree() const;
  bool has(Sym s) const;
  std::set<Sym> freeVars() const;
  std::vector<GSum> collectSums() const;

  std::string str() const;

  void normalizeTerms();  // sort + merge (called by the arithmetic ops)
};

// rewrite all sum arguments to constant-free form (S(V+c) -> sums at V plus
// boundary debris); arguments must differ from their class representative by
// integers
SumExpr canonicalizeArgs(const SumExpr& e);

// stuffle product of two sums over the same argument, as a linear combination
// of single sums at that argument
SumExpr stuffleMul(const GSum& a, const GSum& b);

// quasi-shuffle product of two (synchronized) expressions: same-argument sum
// products are expanded into single nested sums
SumExpr quasiShuffle(const SumExpr& a, const SumExpr& b);

// canonical form: arguments constant-free, same-argument products expanded,
// every word rewritten as a polynomial in Lyndon-word sums
SumExpr reduceToBasis(const SumExpr& e);

// true when gamma-related constants (EulerGamma) cancel everywhere
bool gammaFree(const SumExpr& e);

}  // namespace epsum
