#pragma once
#include <optional>

#include "epsum/ast.hpp"
#include "epsum/nested.hpp"

namespace epsum {

// one summation quantifier; absent upper bound means infinity
struct IndexRange {
  Sym idx;
  LinearForm lo;
  std::optional<LinearForm> hi;

  bool operator==(const IndexRange& o) const { return idx == o.idx && lo == o.lo && hi == o.hi; }
  std::string str() const;
};

// nested chain of quantifiers over a summand in the Gamma-term/nested-sum
// class; bounds may reference outer indices only
struct MultiSum {
  std::vector<IndexRange> ranges;
  SumExpr summand;

  int depth() const { return (int)ranges.size(); }
  bool epsFree() const { return summand.epsFree(); }

  // brute-force exact value; every range must be finite under the assignment
  ConstVal evalAt(const Assign& a) const;

  std::string str() const;
};

// Sum-free conversions; Domain/Unsupported errors outside the class
SumExpr toSumExpr(const AstP& e);
LinearForm toLinearForm(const AstP& e);
// exact constant fold; nullopt when the node is not a rational constant
std::optional<Rat> constRat(const AstP& e);

// additive decomposition into multi-sums: Sum quantifiers are peeled into
// range chains, products of sums over distinct indices are nested, scalar
// factors join the summand
std::vector<MultiSum> buildMultiSums(const AstP& e);

}  // namespace epsum
