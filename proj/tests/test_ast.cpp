#include <doctest.h>

#include "epsum/ast.hpp"

using namespace epsum;

namespace {
// parse -> print -> parse must be a fixed point
void roundTrip(const std::string& src) {
  AstP a = parseExpr(src);
  std::string p = printExpr(a);
  CAPTURE(src);
  CAPTURE(p);
  AstP b = parseExpr(p);
  CHECK(astEq(a, b));
  CHECK(printExpr(b) == p);
}

void jsonTrip(const std::string& src) {
  AstP a = parseExpr(src);
  CAPTURE(src);
  AstP b = fromJson(toJson(a));
  CHECK(astEq(a, b));
  AstP c = fromJson(toJson(a, true));
  CHECK(astEq(a, c));
}
}  // namespace

TEST_CASE("literals and atoms") {
  AstP n = parseExpr("42");
  CHECK(n->kind == Ast::Num);
  CHECK(n->value == 42);

  AstP q = parseExpr("3/4");
  CHECK(q->kind == Ast::Mul);  // '/' is a binary operator: 3 * 4^-1
  CHECK(printExpr(q) == "3*4^(-1)");

  AstP e = parseExpr("eps");
  CHECK(e->kind == Ast::Var);
  CHECK(symKind(e->var) == SymKind::Eps);

  CHECK(parseExpr("Pi")->kind == Ast::Pi);
  CHECK(parseExpr("EulerGamma")->kind == Ast::EulerGamma);
  CHECK(parseExpr("Infinity")->kind == Ast::Infinity);

  AstP z = parseExpr("Zeta[3]");
  CHECK(z->kind == Ast::Zeta);
  CHECK(z->k == 3);

  AstP m = parseExpr("-7");
  CHECK(m->kind == Ast::Num);
  CHECK(m->value == -7);
}

TEST_CASE("operators and precedence") {
  AstP a = parseExpr("1 + n*eps - 2");
  REQUIRE(a->kind == Ast::Add);
  CHECK(a->kids.size() == 3);
  CHECK(a->kids[1]->kind == Ast::Mul);

  // power binds tighter than '*', unary minus distributes over the factor
  AstP b = parseExpr("-n^2*eps");
  REQUIRE(b->kind == Ast::Mul);
  CHECK(b->kids[0]->kind == Ast::Num);
  CHECK(b->kids[0]->value == -1);
  CHECK(b->kids[1]->kind == Ast::Pow);

  // parenthesized and negative exponents
  AstP c = parseExpr("x^(-2)");
  REQUIRE(c->kind == Ast::Pow);
  CHECK(c->kids[1]->value == -2);
  AstP d = parseExpr("x^-2");
  CHECK(astEq(c, d));

  AstP f = parseExpr("2^(n - 4*j)");
  REQUIRE(f->kind == Ast::Pow);
  CHECK(f->kids[1]->kind == Ast::Add);

  // division becomes an inverse power so Mul stays flat
  AstP g = parseExpr("a/b/c");
  REQUIRE(g->kind == Ast::Mul);
  CHECK(g->kids.size() == 3);
  CHECK(g->kids[1]->kind == Ast::Pow);
  CHECK(g->kids[2]->kind == Ast::Pow);
}

TEST_CASE("gamma-family calls") {
  AstP g = parseExpr("Gamma(n + 1 - eps)");
  REQUIRE(g->kind == Ast::Gamma);
  CHECK(g->kids[0]->kind == Ast::Add);

  AstP b = parseExpr("Binomial(n, j)");
  REQUIRE(b->kind == Ast::Binomial);
  CHECK(b->kids.size() == 2);

  CHECK(parseExpr("Factorial(n)")->kind == Ast::Factorial);
  CHECK(parseExpr("Pochhammer(n + 1, j)")->kind == Ast::Pochhammer);
  CHECK(parseExpr("Sign(j)")->kind == Ast::Sign);

  // Pow(c, lf) call form is the same node as '^'
  CHECK(astEq(parseExpr("Pow(2, n - 2*j)"), parseExpr("2^(n - 2*j)")));

  AstP x = parseExpr("ExpGammaEps(-2)");
  REQUIRE(x->kind == Ast::ExpGammaEps);
  CHECK(x->value == -2);
  AstP h = parseExpr("ExpGammaEps(3/2)");
  CHECK(h->value == ratOf(3, 2));
}

TEST_CASE("S-bracket forms") {
  AstP s = parseExpr("S[2,-1; n]");
  REQUIRE(s->kind == Ast::HarmS);
  CHECK(s->word == std::vector<int>{2, -1});
  CHECK(s->kids[0]->kind == Ast::Var);

  AstP c = parseExpr("S[(2,1,1),(1,0,1); 1/3,-1; 2*n]");
  REQUIRE(c->kind == Ast::CycS);
  REQUIRE(c->abc.size() == 2);
  CHECK(c->abc[0] == std::array<long, 3>{2, 1, 1});
  CHECK(c->abc[1] == std::array<long, 3>{1, 0, 1});
  REQUIRE(c->xs.size() == 2);
  CHECK(c->xs[0] == ratOf(1, 3));
  CHECK(c->xs[1] == -1);
  CHECK(c->kids[0]->kind == Ast::Mul);

  // a lone S identifier is just a symbol
  AstP v = parseExpr("S + 1");
  REQUIRE(v->kind == Ast::Add);
  CHECK(v->kids[0]->kind == Ast::Var);
}

TEST_CASE("Sum binds an index") {
  AstP s = parseExpr("Sum(j9, 0, n - 1, Binomial(n, j9))");
  REQUIRE(s->kind == Ast::Sum);
  CHECK(symKind(s->var) == SymKind::Index);
  CHECK(symName(s->var) == "j9");
  CHECK(s->kids.size() == 3);
  CHECK(s->kids[1]->kind == Ast::Add);

  AstP t = parseExpr("Sum(j9, 1, Infinity, 2^(-j9))");
  CHECK(t->kids[1]->kind == Ast::Infinity);
}

TEST_CASE("text round-trips") {
  for (const char* src : {
           "1 + n*eps - 2",
           "-n^2*eps",
           "x^(-2)",
           "(a + b)*(a - b)",
           "Gamma(n + 1 - eps)/Gamma(n + 1 + 2*eps)",
           "Binomial(n, j)*Sign(j)*Pochhammer(1/2, j)",
           "2^(n - 4*j)*Factorial(j)",
           "S[2,-1; n]",
           "S[(2,1,1),(1,0,1); 1/3,-1; 2*n]",
           "Sum(j9, 0, n - 1, Binomial(n, j9)*S[1; j9])",
           "Sum(j9, 1, Infinity, 2^(-j9))",
           "ExpGammaEps(-2)*Gamma(1 + eps)",
           "Pi^2/6 + Zeta[3]*eps",
           "a - (b - c)",
           "-(a + b)",
           "1/2 - eps/(1 + 2*eps)",
       })
    roundTrip(src);
}

TEST_CASE("json round-trips") {
  for (const char* src : {
           "1 + n*eps - 2",
           "Gamma(n + 1 - eps)/Gamma(n + 1 + 2*eps)",
           "S[2,-1; n] + S[(2,1,1); 1/3; n]",
           "Sum(j9, 0, n - 1, Binomial(n, j9)*S[1; j9])",
           "ExpGammaEps(-2)*2^(2*eps)*Pi^(1/2)",
           "Zeta[3] + EulerGamma - Infinity",
       })
    jsonTrip(src);

  // symbol kinds survive the trip
  AstP s = fromJson(toJson(parseExpr("Sum(j9, 0, n, j9*eps)")));
  CHECK(symKind(s->var) == SymKind::Index);
}

TEST_CASE("big summand parses") {
  const char* src =
      "Sum(j1,0,n-5, Sum(j2,0,n-j1-6, Binomial(n-j1-4,j2+2)*Gamma(j2+2-eps)*Gamma(1+eps)"
      "/(Gamma(j2+4)*Gamma(2-eps))*(2-eps)/((j2+2-eps)*(j2+3-eps))*(-(3*eps)/(2*(1+2*eps))"
      " + Binomial(-1+2*eps,j1+1)*(-1+2*Binomial(n-4,j1+1)))))";
  AstP a = parseExpr(src);
  REQUIRE(a->kind == Ast::Sum);
  CHECK(symName(a->var) == "j1");
  REQUIRE(a->kids[2]->kind == Ast::Sum);
  CHECK(symName(a->kids[2]->var) == "j2");
  roundTrip(src);
  jsonTrip(src);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parseExpr("1 +"), Error);
  CHECK_THROWS_AS(parseExpr("Gamma(n"), Error);
  CHECK_THROWS_AS(parseExpr("1 @ 2"), Error);
  CHECK_THROWS_AS(parseExpr("Zeta[1]"), Error);
  CHECK_THROWS_AS(parseExpr("S[0; n]"), Error);
  CHECK_THROWS_AS(parseExpr("S[(1,0,1); 1/2,1/3; n]"), Error);  // weight count
  CHECK_THROWS_AS(parseExpr("Sum(Gamma, 0, 1, 1)"), Error);
  CHECK_THROWS_AS(parseExpr("x y"), Error);    // no implicit multiplication
  CHECK_THROWS_AS(parseExpr("x^2^3"), Error);  // chained powers need parens
  CHECK_THROWS_AS(parseExpr("S[1; n"), Error);
  CHECK_THROWS_AS(parseExpr("ExpGammaEps(1/0)"), Error);
  CHECK_THROWS_AS(fromJson("{\"node\":\"Nope\"}"), Error);
  CHECK_THROWS_AS(fromJson("not json"), Error);
  CHECK_THROWS_AS(fromJson("{\"node\":\"Num\"}"), Error);

  // an index name that already exists as an outer symbol is rejected
  SymTab::inst().intern("nOuter", SymKind::Outer);
  CHECK_THROWS_AS(parseExpr("Sum(nOuter, 0, 5, 1)"), Error);
}

TEST_CASE("printer parenthesization") {
  CHECK(printExpr(parseExpr("(a+b)*c")) == "(a + b)*c");
  CHECK(printExpr(parseExpr("a*(b+c)^2")) == "a*(b + c)^2");
  CHECK(printExpr(parseExpr("-(a*b)")) == "-a*b");
  CHECK(printExpr(parseExpr("-(a + b)")) == "-(a + b)");
  CHECK(printExpr(parseExpr("-n^2*eps")) == "-n^2*eps");
  CHECK(printExpr(parseExpr("a-b-c")) == "a - b - c");
  CHECK(printExpr(parseExpr("a/(b*c)")) == "a*(b*c)^(-1)");
  CHECK(printExpr(parseExpr("2^(2*eps)")) == "2^(2*eps)");
  CHECK(printExpr(parseExpr("x - (y - z)")) == "x - (y - z)");
  CHECK(printExpr(parseExpr("(-1)*(-3)")) == "(-1)*(-3)");  // doubly signed stays verbatim
}
