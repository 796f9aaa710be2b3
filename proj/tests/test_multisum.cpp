#include <doctest.h>

#include "epsum/expand.hpp"
#include "epsum/multisum.hpp"

using namespace epsum;

namespace {
Rat ratAt(const MultiSum& m, const Assign& a) { return m.evalAt(a).ratVal(); }

Assign at(Sym s, long v) { return Assign{{s, Rat(v)}}; }
}  // namespace

TEST_CASE("toSumExpr basics") {
  Sym n = SymTab::inst().intern("n", SymKind::Outer);

  CHECK(toSumExpr(parseExpr("3/4")) == SumExpr::fromRat(RatFun(ratOf(3, 4))));
  CHECK(toSumExpr(parseExpr("n^2 - 1")) ==
        SumExpr::fromRat(RatFun(Poly::var(n, 2) - Poly(1))));
  CHECK(toSumExpr(parseExpr("S[2,1; n]")) ==
        SumExpr::fromSum(harmonicSum({2, 1}, LinearForm::sym(n))));
  CHECK(toSumExpr(parseExpr("Zeta[3]")) == SumExpr::fromConst(ConstVal::atom(cZeta(3))));

  // binomial as an explicit Gamma quotient agrees pointwise
  SumExpr b1 = toSumExpr(parseExpr("Binomial(n, 3)"));
  SumExpr b2 = toSumExpr(parseExpr("Gamma(n+1)/(Gamma(4)*Gamma(n-2))"));
  for (long v : {3, 5, 9})
    CHECK(b1.evalAt(at(n, v)) == b2.evalAt(at(n, v)));

  // powers: integer exponents multiply out, Pow-call form matches '^'
  SumExpr p1 = toSumExpr(parseExpr("Binomial(n, 2)^2"));
  CHECK(p1.evalAt(at(n, 5)).ratVal() == 100);
  CHECK(toSumExpr(parseExpr("Pow(2, n - 1)")).evalAt(at(n, 6)).ratVal() == 32);
  CHECK(toSumExpr(parseExpr("2^(-n)")).evalAt(at(n, 3)).ratVal() == ratOf(1, 8));
  CHECK(toSumExpr(parseExpr("(-3)^n")).evalAt(at(n, 3)).ratVal() == -27);

  // pi powers ride on the hyp factor
  SumExpr pp = toSumExpr(parseExpr("Pi^(1/2) * Pi"));
  REQUIRE(pp.terms.size() == 1);
  CHECK(pp.terms[0].hyp.piExp == ratOf(3, 2));

  CHECK_THROWS_AS(toSumExpr(parseExpr("2^Pi")), Error);
  CHECK_THROWS_AS(toSumExpr(parseExpr("Gamma(n^2)")), Error);
  CHECK_THROWS_AS(toSumExpr(parseExpr("1/S[1; n]")), Error);
  CHECK_THROWS_AS(toSumExpr(parseExpr("Infinity")), Error);
}

TEST_CASE("linear forms from syntax") {
  Sym n = SymTab::inst().intern("n", SymKind::Outer);
  LinearForm f = toLinearForm(parseExpr("(n - 2*eps + 3)/2"));
  CHECK(f.coeff(n) == ratOf(1, 2));
  CHECK(f.c == ratOf(3, 2));
  CHECK(f.e == -1);
  CHECK_THROWS_AS(toLinearForm(parseExpr("n^2")), Error);
  CHECK_THROWS_AS(toLinearForm(parseExpr("n*eps")), Error);
}

TEST_CASE("single sums evaluate exactly") {
  Sym n = SymTab::inst().intern("n", SymKind::Outer);

  auto ms = buildMultiSums(parseExpr("Sum(k1, 0, n, Binomial(n, k1))"));
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].depth() == 1);
  CHECK(ratAt(ms[0], at(n, 6)) == 64);

  // Vandermonde with a squared binomial
  auto v = buildMultiSums(parseExpr("Sum(k1, 0, n, Binomial(n, k1)^2)"));
  CHECK(ratAt(v[0], at(n, 5)) == 252);

  // empty range is zero
  auto z = buildMultiSums(parseExpr("Sum(k1, 2, n - 8, 1)"));
  CHECK(z[0].evalAt(at(n, 6)).isZero());

  // alternating row sums vanish
  auto alt = buildMultiSums(parseExpr("Sum(k1, 0, n, Sign(k1)*Binomial(n, k1))"));
  CHECK(alt[0].evalAt(at(n, 7)).isZero());
}

TEST_CASE("additive and multiplicative decomposition") {
  Sym n = SymTab::inst().intern("n", SymKind::Outer);
  Sym m = SymTab::inst().intern("m", SymKind::Outer);

  auto parts = buildMultiSums(parseExpr("Sum(k1, 0, n, k1) + Sum(k2, 1, n, k2^2) - n"));
  REQUIRE(parts.size() == 3);
  Assign a = at(n, 4);
  Rat total(0);
  for (auto& p : parts) total += p.evalAt(a).ratVal();
  CHECK(total == 10 + 30 - 4);

  // product of sums over distinct indices nests into one chain
  auto prod = buildMultiSums(parseExpr("Sum(k1, 0, n, k1) * Sum(k2, 0, m, 1)"));
  REQUIRE(prod.size() == 1);
  CHECK(prod[0].depth() == 2);
  Assign b{{n, Rat(4)}, {m, Rat(2)}};
  CHECK(ratAt(prod[0], b) == 10 * 3);

  // scalar factors join the summand
  auto sc = buildMultiSums(parseExpr("2 * n * Sum(k1, 1, n, k1)"));
  REQUIRE(sc.size() == 1);
  CHECK(ratAt(sc[0], at(n, 3)) == 2 * 3 * 6);

  CHECK_THROWS_AS(buildMultiSums(parseExpr("Sum(k1, 0, n, Sum(k1, 0, n, 1))")), Error);
}

TEST_CASE("dependent inner bounds") {
  Sym n = SymTab::inst().intern("n", SymKind::Outer);
  auto tri = buildMultiSums(parseExpr("Sum(k1, 0, n, Sum(k2, 0, k1, 1))"));
  REQUIRE(tri.size() == 1);
  CHECK(ratAt(tri[0], at(n, 6)) == 28);  // (n+1)(n+2)/2

  // stuffle identity through brute force: sum of S_1(k)/k
  auto st = buildMultiSums(parseExpr("Sum(k1, 1, n, S[1; k1]/k1)"));
  SumExpr rhs = (SumExpr::fromSum(harmonicSum({1, 1}, LinearForm::sym(n))));
  SumExpr direct = SumExpr::fromSum(harmonicSum({1}, LinearForm::sym(n))) *
                       SumExpr::fromSum(harmonicSum({1}, LinearForm::sym(n))) +
                   SumExpr::fromSum(harmonicSum({2}, LinearForm::sym(n)));
  for (long v : {1, 4, 7}) {
    ConstVal lhs = st[0].evalAt(at(n, v));
    CHECK(lhs + lhs == direct.evalAt(at(n, v)));  // 2*Sum S_1(k)/k = S_1^2 + S_2
  }
}

TEST_CASE("infinite bound rejected by brute force") {
  auto inf = buildMultiSums(parseExpr("Sum(k1, 1, Infinity, 2^(-k1))"));
  REQUIRE(inf.size() == 1);
  CHECK(!inf[0].ranges[0].hi);
  CHECK_THROWS_AS(inf[0].evalAt({}), Error);
}

TEST_CASE("summand expansion distributes over terms") {
  Sym n = SymTab::inst().intern("n", SymKind::Outer);
  // 1/(1+2 eps) + eps S_1(n)
  SumExpr e = toSumExpr(parseExpr("1/(1+2*eps) + eps*S[1; n]"));
  LaurentSeries s = expandExpr(e, 0, 1);
  CHECK(s.at(0) == SumExpr::fromRat(RatFun(1)));
  CHECK(s.at(1) == SumExpr::fromRat(RatFun(-2)) +
                       SumExpr::fromSum(harmonicSum({1}, LinearForm::sym(n))));

  // a sum factor multiplies every coefficient
  SumExpr g = toSumExpr(parseExpr("Gamma(1+eps) * S[2; n]"));
  LaurentSeries gs = expandExpr(g, 0, 1);
  SumExpr s2 = SumExpr::fromSum(harmonicSum({2}, LinearForm::sym(n)));
  CHECK(gs.at(0) == s2);
  SumExpr minusGamma = SumExpr::fromConst(ConstVal::atom(cGamma())).scale(RatFun(-1));
  CHECK(gs.at(1) == minusGamma * s2);
}

TEST_CASE("paper-shaped double sum has a vanishing third-order pole") {
  Sym n = SymTab::inst().intern("n", SymKind::Outer);
  const char* src =
      "Sum(j1,0,n-5, Sum(j2,0,n-j1-6,"
      " Pi * 2^(eps+3) * ExpGammaEps(-3/2) * Sign(j1) * (j2+1)"
      " * Gamma(2-eps) * Gamma(eps/2+2) * Gamma(-(3*eps)/2) * Gamma(-eps/2+j1+4)"
      " * Gamma(-j1+n-2) * Gamma(eps-j1-j2+n-5)"
      " / ((eps-10)*(eps-8)*(eps-2)*eps"
      "    * Gamma(5/2-eps) * Gamma((eps+5)/2) * Gamma(eps/2+n+1) * Gamma(-j1-j2+n-4))))";
  auto ms = buildMultiSums(parseExpr(src));
  REQUIRE(ms.size() == 1);
  REQUIRE(ms[0].depth() == 2);

  // the summand's Laurent expansion starts at eps^-2, so F_-3 = 0
  LaurentSeries s = expandExpr(ms[0].summand, -3, -2);
  CHECK(s.lo >= -2);

  // brute-force F_-2 at small n against the printed closed form
  MultiSum f2{ms[0].ranges, s.at(-2)};
  for (long v : {5, 6, 7}) {
    Rat got = ratAt(f2, at(n, v));
    // 16(-1)^n(3n^2+12n+11)/(135(n+1)(n+2)^2(n+3)^2)
    //  - 16(n^8+6n^7-6n^6-80n^5-81n^4+178n^3+274n^2-4n-96)
    //    /(45(n-2)(n-1)^2 n^2 (n+1)(n+2)^2(n+3)^2)
    //  + 16(n^2-n-8)/(45(n-1)n(n+2)(n+3)) * S_1(n)
    Rat nn(v);
    Rat sg = v % 2 ? Rat(-1) : Rat(1);
    Rat s1(0);
    for (long i = 1; i <= v; ++i) s1 += ratOf(1, i);
    Rat t1 = Rat(16) * sg * (3 * nn * nn + 12 * nn + 11) /
             (Rat(135) * (nn + 1) * (nn + 2) * (nn + 2) * (nn + 3) * (nn + 3));
    Rat poly = ((((((((nn + 6) * nn - 6) * nn - 80) * nn - 81) * nn + 178) * nn + 274) * nn - 4) *
                    nn -
                96);
    Rat t2 = Rat(-16) * poly /
             (Rat(45) * (nn - 2) * (nn - 1) * (nn - 1) * nn * nn * (nn + 1) * (nn + 2) *
              (nn + 2) * (nn + 3) * (nn + 3));
    Rat t3 = Rat(16) * (nn * nn - nn - 8) / (Rat(45) * (nn - 1) * nn * (nn + 2) * (nn + 3)) * s1;
    CHECK(got == t1 + t2 + t3);
  }
}
