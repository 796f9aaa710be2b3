#pragma once
#include <string>
#include <vector>

#include "epsum/ast.hpp"
#include "epsum/constants.hpp"
#include "epsum/poly.hpp"

namespace epsum {

// High-precision floating-point oracle. Walks the syntax tree directly with
// MPFR -- no Gamma-term normalization, no nested-sum algebra -- so agreement
// with the symbolic engine is genuine cross-validation. All floating point
// lives behind this interface; the rest of the library stays exact.

struct NumOptions {
  long digits = 40;         // requested good decimal digits
  long maxTerms = 4000000;  // term cap for truncated infinite summation
};

// exact rational image of the computed float, plus an estimate of how many
// leading decimal digits are trustworthy (from re-running at higher
// precision). A numeric run can never certify an exact zero -- a zero result
// carries goodDigits 0 and only bounds the value by the working precision.
struct NumResult {
  Rat approx;
  long goodDigits = 0;
  std::string str(long digits = 20) const;
};

// number of agreeing leading significant digits (999 = identical)
long agreeDigits(const Rat& a, const Rat& b);

// evaluate at a full assignment (every free symbol, including eps, bound to a
// rational). Finite sums are added up directly; infinite sums are truncated
// once the tail stays below the working precision, and fail with Truncation
// if maxTerms is hit first.
NumResult evalNumeric(const AstP& e, const Assign& vals, const NumOptions& opt = {});

// Laurent coefficients lo..hi of e around eps = 0: sample at exact rational
// eps values, solve the (exact) Vandermonde system against the float samples,
// and report per-coefficient digits from an independent re-fit at shifted
// sample points. vals binds every free symbol except eps.
std::vector<NumResult> laurentNumeric(const AstP& e, const Assign& vals, long lo, long hi,
                                      const NumOptions& opt = {});

// numeric value of an exact constant combination (pi, EulerGamma, log 2,
// zeta_k; S-sums at infinity are rejected -- reduce them first)
NumResult constNumeric(const ConstVal& v, const NumOptions& opt = {});

}  // namespace epsum
