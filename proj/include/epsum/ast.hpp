#pragma once
#include <array>
#include <memory>
#include <vector>

#include "epsum/rat.hpp"
#include "epsum/symbol.hpp"

namespace epsum {

struct Ast;
using AstP = std::shared_ptr<const Ast>;

// Syntax tree mirroring the textual grammar, one node kind per production.
// Purely syntactic: no normalization beyond what the parser must decide.
struct Ast {
  enum Kind {
    Num,          // rational literal                       value
    Var,          // symbol reference (including eps)       var
    Pi,           // Pi
    EulerGamma,   // EulerGamma
    Zeta,         // Zeta[k]                                k
    Infinity,     // Infinity (upper bounds)
    Add,          // kids[0] + kids[1] + ...
    Mul,          // kids[0] * kids[1] * ...
    Pow,          // kids[0] ^ kids[1]
    Gamma,        // Gamma(kids[0])
    Factorial,    // Factorial(kids[0])
    Sign,         // Sign(kids[0]) = (-1)^kids[0]
    Binomial,     // Binomial(kids[0], kids[1])
    Pochhammer,   // Pochhammer(kids[0], kids[1])
    ExpGammaEps,  // ExpGammaEps(r) = exp(r * EulerGamma * eps)   value
    HarmS,        // S[c1,...,cd; kids[0]]                  word
    CycS,         // S[(a,b,c),...; x,...; kids[0]]         abc, xs
    Sum           // Sum(var, kids[0], kids[1], kids[2])
  } kind;

  Rat value = Rat(0);
  int k = 0;
  Sym var{};
  std::vector<int> word;
  std::vector<std::array<long, 3>> abc;
  std::vector<Rat> xs;
  std::vector<AstP> kids;

  static AstP num(const Rat& v);
  static AstP sym(Sym s);
  static AstP constant(Kind k, int weight = 0);
  static AstP nary(Kind k, std::vector<AstP> kids);
  static AstP call(Kind k, std::vector<AstP> kids);
  static AstP pow(AstP b, AstP e);
  static AstP expGammaEps(const Rat& r);
  static AstP harm(std::vector<int> w, AstP arg);
  static AstP cyc(std::vector<std::array<long, 3>> abc, std::vector<Rat> xs, AstP arg);
  static AstP sum(Sym idx, AstP lo, AstP hi, AstP body);
};

bool astEq(const AstP& a, const AstP& b);

// textual grammar
AstP parseExpr(const std::string& text);
std::string printExpr(const AstP& e);

// JSON AST mirror (one object per node); both directions round-trip
std::string toJson(const AstP& e, bool pretty = false);
AstP fromJson(const std::string& text);

}  // namespace epsum
