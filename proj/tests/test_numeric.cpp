#include <doctest.h>

#include "epsum/expand.hpp"
#include "epsum/multisum.hpp"
#include "epsum/numeric.hpp"

using namespace epsum;

namespace {
Assign withEps(const Rat& e) { return Assign{{symEps(), e}}; }
}  // namespace

TEST_CASE("rational trees evaluate to full precision") {
  NumResult r = evalNumeric(parseExpr("3/7 + 2^(-5)"), {});
  CHECK(agreeDigits(r.approx, ratOf(3, 7) + ratOf(1, 32)) >= 40);
  CHECK(r.goodDigits >= 40);

  Sym n = SymTab::inst().intern("n", SymKind::Outer);
  NumResult s = evalNumeric(parseExpr("Sum(k1, 0, n, Binomial(n, k1)^2)"), {{n, Rat(5)}});
  CHECK(s.approx == 252);

  CHECK_THROWS_AS(evalNumeric(parseExpr("n + 1"), {}), Error);
  CHECK_THROWS_AS(evalNumeric(parseExpr("Gamma(-3)"), {}), Error);
  CHECK_THROWS_AS(evalNumeric(parseExpr("0^(-1)"), {}), Error);
}

TEST_CASE("harmonic sums agree with the exact engine") {
  Sym n = SymTab::inst().intern("n", SymKind::Outer);
  Rat exact = (SumExpr::fromSum(harmonicSum({2, 1}, LinearForm::sym(n))))
                  .evalAt({{n, Rat(10)}})
                  .ratVal() +
              ratOf(3, 7);
  NumResult got = evalNumeric(parseExpr("S[2,1; n] + 3/7"), {{n, Rat(10)}});
  CHECK(agreeDigits(got.approx, exact) >= 38);

  // alternating and cyclotomic layers
  Rat e2 = (SumExpr::fromSum(harmonicSum({-1, 2}, LinearForm::sym(n))))
               .evalAt({{n, Rat(9)}})
               .ratVal();
  NumResult g2 = evalNumeric(parseExpr("S[-1,2; n]"), {{n, Rat(9)}});
  CHECK(agreeDigits(g2.approx, e2) >= 38);

  GSum cy{{cycLayer(2, 1, 1, ratOf(1, 2))}, LinearForm::sym(n)};
  Rat e3 = SumExpr::fromSum(cy).evalAt({{n, Rat(8)}}).ratVal();
  NumResult g3 = evalNumeric(parseExpr("S[(2,1,1); 1/2; n]"), {{n, Rat(8)}});
  CHECK(agreeDigits(g3.approx, e3) >= 38);
}

TEST_CASE("gamma family at rational points") {
  // Gamma(1/2) = sqrt(pi)
  NumResult g = evalNumeric(parseExpr("Gamma(1/2)"), {});
  NumResult sp = constNumeric(ConstVal::atom(cPi(), ratOf(1, 2)));
  CHECK(agreeDigits(g.approx, sp.approx) >= 38);

  CHECK(evalNumeric(parseExpr("Factorial(6)"), {}).approx == 720);
  CHECK(evalNumeric(parseExpr("Pochhammer(1/2, 3)"), {}).approx == ratOf(15, 8));
  CHECK(agreeDigits(evalNumeric(parseExpr("Pochhammer(5, -2)"), {}).approx, ratOf(1, 12)) >=
        38);

  // Binomial with an eps-shifted top stays on the product formula
  Rat e = ratOf(1, 1000);
  Rat t = 2 * e - 1;
  Rat expect = t * (t - 1) * (t - 2) / 6;
  NumResult b = evalNumeric(parseExpr("Binomial(-1+2*eps, 3)"), withEps(e));
  CHECK(agreeDigits(b.approx, expect) >= 38);

  // duplication: Gamma(2x) = 2^(2x-1)/sqrt(pi) Gamma(x) Gamma(x+1/2) at x=1/4+eps
  NumResult lhs = evalNumeric(parseExpr("Gamma(1/2+2*eps)"), withEps(e));
  NumResult rhs = evalNumeric(
      parseExpr("2^(2*(1/4+eps)-1) * Pi^(-1/2) * Gamma(1/4+eps) * Gamma(3/4+eps)"),
      withEps(e));
  CHECK(agreeDigits(lhs.approx, rhs.approx) >= 38);
}

TEST_CASE("infinite sums truncate honestly") {
  NumResult r = evalNumeric(parseExpr("Sum(k1, 0, Infinity, (1/3)^k1)"), {});
  CHECK(agreeDigits(r.approx, ratOf(3, 2)) >= 38);

  NumOptions cap;
  cap.maxTerms = 20000;
  CHECK_THROWS_AS(evalNumeric(parseExpr("Sum(k1, 1, Infinity, 1/k1)"), {}, cap), Error);
}

TEST_CASE("laurent fit against the symbolic expansion of Gamma(eps)") {
  AstP e = parseExpr("Gamma(eps)");
  auto num = laurentNumeric(e, {}, -1, 2);
  REQUIRE(num.size() == 4);

  LaurentSeries sym = expandExpr(toSumExpr(e), -1, 2);
  for (long k = -1; k <= 2; ++k) {
    NumResult exact = constNumeric(sym.at(k).evalAt({}));
    CHECK(agreeDigits(num[k + 1].approx, exact.approx) >= 30);
    CHECK(num[k + 1].goodDigits >= 30);
  }
}

TEST_CASE("exp-gamma prefactor kills the linear term of Gamma(1+eps)") {
  auto num = laurentNumeric(parseExpr("Gamma(1+eps) * ExpGammaEps(1)"), {}, 0, 2);
  CHECK(agreeDigits(num[0].approx, Rat(1)) >= 30);
  // coefficient 1 is exactly zero: the fit sees noise around 0
  Rat scale = abs(num[0].approx);
  CHECK(abs(num[1].approx) < scale / ratPow(Rat(10), 25));
  // coefficient 2 is zeta_2 / 2
  NumResult z2 = constNumeric(ConstVal::atom(cZeta(2)));
  CHECK(agreeDigits(num[2].approx, z2.approx / 2) >= 30);
}

TEST_CASE("double sum coefficients: numeric fit vs exact engine") {
  Sym n = SymTab::inst().intern("n", SymKind::Outer);
  const char* src =
      "Sum(j1,0,n-5, Sum(j2,0,n-j1-6,"
      " Pi * 2^(eps+3) * ExpGammaEps(-3/2) * Sign(j1) * (j2+1)"
      " * Gamma(2-eps) * Gamma(eps/2+2) * Gamma(-(3*eps)/2) * Gamma(-eps/2+j1+4)"
      " * Gamma(-j1+n-2) * Gamma(eps-j1-j2+n-5)"
      " / ((eps-10)*(eps-8)*(eps-2)*eps"
      "    * Gamma(5/2-eps) * Gamma((eps+5)/2) * Gamma(eps/2+n+1) * Gamma(-j1-j2+n-4))))";
  AstP e = parseExpr(src);
  auto ms = buildMultiSums(e);
  LaurentSeries s = expandExpr(ms[0].summand, -2, -1);

  long nv = 6;
  auto num = laurentNumeric(e, {{n, Rat(nv)}}, -2, -1, NumOptions{30, 4000000});
  for (long k = -2; k <= -1; ++k) {
    MultiSum coef{ms[0].ranges, s.at(k)};
    NumResult exact = constNumeric(coef.evalAt({{n, Rat(nv)}}));
    CHECK(agreeDigits(num[k + 2].approx, exact.approx) >= 20);
  }
}

TEST_CASE("catastrophic cancellation heals by precision escalation") {
  // r0 is the float image of sqrt(2) at ~60 digits; sqrt(2) - r0 ~ 1e-108
  // only emerges once the working precision grows far past the request
  Rat r0 = evalNumeric(parseExpr("2^(1/2)"), {}, NumOptions{60, 1000}).approx;
  AstP e = Ast::nary(Ast::Add, {parseExpr("2^(1/2)"), Ast::num(-r0)});
  NumResult r = evalNumeric(e, {}, NumOptions{40, 1000});
  CHECK(r.approx != 0);
  CHECK(abs(r.approx) < ratPow(Rat(2), -340));
  CHECK(r.goodDigits >= 40);
}
