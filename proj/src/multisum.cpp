#include "epsum/multisum.hpp"

#include <cstdlib>
#include <functional>

namespace epsum {

std::string IndexRange::str() const {
  return symName(idx) + ", " + lo.str() + ", " + (hi ? hi->str() : std::string("Infinity"));
}

std::string MultiSum::str() const {
  std::string s;
  for (auto& r : ranges) s += "Sum(" + r.str() + ", ";
  s += summand.str();
  for (size_t i = 0; i < ranges.size(); ++i) s += ")";
  return s;
}

ConstVal MultiSum::evalAt(const Assign& a) const {
  Assign as = a;
  ConstVal total;
  // depth-first over the index ranges
  std::function<void(size_t)> go = [&](size_t level) {
    if (level == ranges.size()) {
      total += summand.evalAt(as);
      return;
    }
    const IndexRange& r = ranges[level];
    if (!r.hi) fail(ErrCode::Domain, "cannot evaluate an infinite sum directly: " + str());
    Rat lo = r.lo.eval(as), hi = r.hi->eval(as);
    if (!isInt(lo) || !isInt(hi))
      fail(ErrCode::Domain, "non-integer summation bound in " + str());
    for (long v = toLong(lo); v <= toLong(hi); ++v) {
      as[r.idx] = Rat(v);
      go(level + 1);
    }
    as.erase(r.idx);
  };
  go(0);
  return total;
}

std::optional<Rat> constRat(const AstP& e) {
  switch (e->kind) {
    case Ast::Num: return e->value;
    case Ast::Add: {
      Rat r(0);
      for (auto& k : e->kids) {
        auto v = constRat(k);
        if (!v) return std::nullopt;
        r += *v;
      }
      return r;
    }
    case Ast::Mul: {
      Rat r(1);
      for (auto& k : e->kids) {
        auto v = constRat(k);
        if (!v) return std::nullopt;
        r *= *v;
      }
      return r;
    }
    case Ast::Pow: {
      auto b = constRat(e->kids[0]);
      auto x = constRat(e->kids[1]);
      if (!b || !x || !isInt(*x)) return std::nullopt;
      long k = toLong(*x);
      if (k < 0 && *b == 0) return std::nullopt;
      return ratPow(*b, k);
    }
    default: return std::nullopt;
  }
}

LinearForm toLinearForm(const AstP& e) {
  switch (e->kind) {
    case Ast::Num: return LinearForm(e->value);
    case Ast::Var:
      return symKind(e->var) == SymKind::Eps ? LinearForm::epsTerm(Rat(1))
                                             : LinearForm::sym(e->var);
    case Ast::Add: {
      LinearForm r;
      for (auto& k : e->kids) r = r + toLinearForm(k);
      return r;
    }
    case Ast::Mul: {
      // at most one non-constant factor keeps the form linear
      Rat scale(1);
      std::optional<LinearForm> lin;
      for (auto& k : e->kids) {
        if (auto v = constRat(k)) {
          scale *= *v;
          continue;
        }
        if (lin) fail(ErrCode::Domain, "not a linear form: " + printExpr(e));
        lin = toLinearForm(k);
      }
      return lin ? lin->scale(scale) : LinearForm(scale);
    }
    case Ast::Pow: {
      if (auto v = constRat(e)) return LinearForm(*v);
      fail(ErrCode::Domain, "not a linear form: " + printExpr(e));
    }
    default: fail(ErrCode::Domain, "not a linear form: " + printExpr(e));
  }
}

namespace {

// invert a one-term sum-free expression (rational content, Gammas, powers)
SumExpr invExpr(const SumExpr& e, const AstP& src) {
  if (e.terms.size() != 1 || !e.terms[0].sums.empty())
    fail(ErrCode::Unsupported, "cannot invert " + printExpr(src));
  const SumTerm& t = e.terms[0];
  SumExpr r = SumExpr::fromHyp(t.hyp.inv());
  if (!t.consts.empty()) {
    CMono m;
    for (auto& [k, x] : t.consts) m[k] = -x;
    ConstVal v;
    v.t[m] = Rat(1);
    r = r.mulConst(v);
  }
  return r;
}

SumExpr powExpr(const SumExpr& b, long k, const AstP& src) {
  if (k == 0) return SumExpr::fromRat(RatFun(1));
  SumExpr base = k < 0 ? invExpr(b, src) : b;
  SumExpr r = base;
  for (long i = 1; i < std::llabs(k); ++i) r *= base;
  return r;
}

}  // namespace

SumExpr toSumExpr(const AstP& e) {
  switch (e->kind) {
    case Ast::Num: return SumExpr::fromRat(RatFun(e->value));
    case Ast::Var: return SumExpr::fromRat(RatFun::var(e->var));
    case Ast::Pi: {
      HypTerm t;
      t.piExp = Rat(1);
      return SumExpr::fromHyp(t);
    }
    case Ast::EulerGamma: return SumExpr::fromConst(ConstVal::atom(cGamma()));
    case Ast::Zeta: return SumExpr::fromConst(ConstVal::atom(cZeta(e->k)));
    case Ast::Infinity: fail(ErrCode::Domain, "Infinity outside a summation bound");
    case Ast::Add: {
      SumExpr r;
      for (auto& k : e->kids) r += toSumExpr(k);
      return r;
    }
    case Ast::Mul: {
      SumExpr r = SumExpr::fromRat(RatFun(1));
      for (auto& k : e->kids) r *= toSumExpr(k);
      return r;
    }
    case Ast::Pow: {
      const AstP& base = e->kids[0];
      auto x = constRat(e->kids[1]);
      if (x && isInt(*x)) return powExpr(toSumExpr(base), toLong(*x), e);
      if (x) {
        // rational non-integer exponent: only pi^q is in the class
        if (base->kind == Ast::Pi) {
          HypTerm t;
          t.piExp = *x;
          return SumExpr::fromHyp(t);
        }
        fail(ErrCode::Unsupported, "non-integer exponent in " + printExpr(e));
      }
      // symbolic exponent: integer-linear, over a rational base
      auto b = constRat(base);
      if (!b) fail(ErrCode::Unsupported, "unsupported power " + printExpr(e));
      return SumExpr::fromHyp(hypPow(*b, toLinearForm(e->kids[1])));
    }
    case Ast::Gamma: return SumExpr::fromHyp(hypGamma(toLinearForm(e->kids[0])));
    case Ast::Factorial: return SumExpr::fromHyp(hypFactorial(toLinearForm(e->kids[0])));
    case Ast::Sign: return SumExpr::fromHyp(hypSign(toLinearForm(e->kids[0])));
    case Ast::Binomial:
      return SumExpr::fromHyp(hypBinomial(toLinearForm(e->kids[0]), toLinearForm(e->kids[1])));
    case Ast::Pochhammer:
      return SumExpr::fromHyp(hypPochhammer(toLinearForm(e->kids[0]), toLinearForm(e->kids[1])));
    case Ast::ExpGammaEps: {
      HypTerm t;
      t.gamEps = e->value;
      return SumExpr::fromHyp(t);
    }
    case Ast::HarmS: return SumExpr::fromSum(harmonicSum(e->word, toLinearForm(e->kids[0])));
    case Ast::CycS: {
      GSum s;
      for (size_t i = 0; i < e->abc.size(); ++i)
        s.layers.push_back(
            cycLayer(e->abc[i][0], e->abc[i][1], (int)e->abc[i][2], e->xs[i]));
      s.arg = toLinearForm(e->kids[0]);
      return SumExpr::fromSum(s);
    }
    case Ast::Sum:
      fail(ErrCode::Unsupported, "definite sum in a non-summand position: " + printExpr(e));
  }
  fail(ErrCode::Internal, "unhandled node");
}

namespace {

bool hasSumNode(const AstP& e) {
  if (e->kind == Ast::Sum) return true;
  for (auto& k : e->kids)
    if (hasSumNode(k)) return true;
  return false;
}

}  // namespace

std::vector<MultiSum> buildMultiSums(const AstP& e) {
  switch (e->kind) {
    case Ast::Add: {
      std::vector<MultiSum> r;
      for (auto& k : e->kids) {
        auto part = buildMultiSums(k);
        r.insert(r.end(), part.begin(), part.end());
      }
      return r;
    }
    case Ast::Sum: {
      IndexRange rng;
      rng.idx = e->var;
      rng.lo = toLinearForm(e->kids[0]);
      if (e->kids[1]->kind != Ast::Infinity) rng.hi = toLinearForm(e->kids[1]);
      std::vector<MultiSum> r = buildMultiSums(e->kids[2]);
      for (auto& m : r) {
        for (auto& q : m.ranges)
          if (q.idx == rng.idx)
            fail(ErrCode::Domain, "index " + symName(rng.idx) + " bound twice");
        m.ranges.insert(m.ranges.begin(), rng);
      }
      return r;
    }
    case Ast::Mul: {
      SumExpr scalar = SumExpr::fromRat(RatFun(1));
      std::vector<MultiSum> acc{MultiSum{{}, scalar}};
      for (auto& k : e->kids) {
        if (!hasSumNode(k)) {
          SumExpr f = toSumExpr(k);
          for (auto& m : acc) m.summand *= f;
          continue;
        }
        std::vector<MultiSum> part = buildMultiSums(k), next;
        for (auto& m : acc)
          for (auto& p : part) {
            MultiSum q = m;
            for (auto& rp : p.ranges) {
              for (auto& rq : q.ranges)
                if (rq.idx == rp.idx)
                  fail(ErrCode::Domain, "index " + symName(rp.idx) + " bound twice");
              q.ranges.push_back(rp);
            }
            q.summand = m.summand * p.summand;
            next.push_back(std::move(q));
          }
        acc = std::move(next);
      }
      return acc;
    }
    default: return {MultiSum{{}, toSumExpr(e)}};
  }
}

}  // namespace epsum
