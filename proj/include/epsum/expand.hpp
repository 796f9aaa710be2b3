#pragma once
#include "epsum/series.hpp"

namespace epsum {

// Gamma(m + 1 + r*eps), arg = m + 1 + r*eps with integer constant part:
//   Gamma(m+1) exp( r eps (S_1(m) - EulerGamma)
//                   + sum_{k>=2} (r eps)^k/k (-1)^k (zeta_k - S_k(m)) )
// expanded through eps^order.  Constant m evaluates the S_k exactly.
LaurentSeries expandGammaShifted(const LinearForm& arg, long order);

// Laurent expansion of a full hypergeometric summand through eps^hi.  The
// leading order is detected (a requested lo below it is adjusted up; known
// coefficients below lo are kept rather than dropped).  Coefficients are
// eps-free: hypergeometric factors times polynomials in S-sums of the free
// symbols and the constants EulerGamma, zeta_k, log 2, pi^(1/2).
LaurentSeries expandSummand(const HypTerm& t, long lo, long hi);

// identity when every coefficient is free of EulerGamma (and of exp(gamma eps)
// remnants); GammaResidue error otherwise
const LaurentSeries& checkGammaCancellation(const LaurentSeries& s);

// termwise expansion of a sum of hyp*sums*consts terms; the sum factors must
// be eps-free and multiply through the coefficients unchanged
LaurentSeries expandExpr(const SumExpr& e, long lo, long hi);

}  // namespace epsum
