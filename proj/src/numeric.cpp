#include "epsum/numeric.hpp"

#include <cstdio>
#include <mpfr.h>

#include <algorithm>
#include <optional>

#include "epsum/symbol.hpp"

namespace epsum {
namespace {

constexpr mpfr_rnd_t RN = MPFR_RNDN;

mpfr_prec_t bitsFor(long digits) {
  return (mpfr_prec_t)(digits * 3.3219280948873626 + 16);
}

// minimal RAII wrapper; arithmetic goes through the raw mpfr_* calls
class MF {
 public:
  explicit MF(mpfr_prec_t p) {
    mpfr_init2(v_, p);
    mpfr_set_zero(v_, 1);
  }
  MF(const MF& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, RN);
  }
  MF(MF&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  MF& operator=(MF o) {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MF() { mpfr_clear(v_); }
  mpfr_ptr p() { return v_; }
  mpfr_srcptr p() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

 private:
  mpfr_t v_;
};

Rat toRat(const MF& x) {
  if (mpfr_zero_p(x.p())) return Rat(0);
  if (!mpfr_number_p(x.p())) fail(ErrCode::Pole, "non-finite numeric value");
  mpz_class z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x.p());
  if (e >= 0) {
    mpz_class sh;
    mpz_mul_2exp(sh.get_mpz_t(), z.get_mpz_t(), (mp_bitcnt_t)e);
    return Rat(sh);
  }
  mpz_class den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), (mp_bitcnt_t)(-e));
  mpq_class q(z, den);
  q.canonicalize();
  return q;
}

MF fromRat(const Rat& r, mpfr_prec_t p) {
  MF x(p);
  mpfr_set_q(x.p(), r.get_mpq_t(), RN);
  return x;
}

// tree walker; env owns a mutable copy of the caller's assignment so Sum
// indices can be bound in place
struct NumEval {
  Assign env;
  mpfr_prec_t prec;
  long maxTerms;

  MF eval(const AstP& e) {
    MF r = evalRaw(e);
    if (!mpfr_number_p(r.p())) fail(ErrCode::Pole, "non-finite value in numeric evaluation");
    return r;
  }

  // exact fast path: pure rational arithmetic under env (indices, eps, bounds)
  std::optional<Rat> ratEval(const AstP& e) {
    switch (e->kind) {
      case Ast::Num:
        return e->value;
      case Ast::Var: {
        auto it = env.find(e->var);
        if (it == env.end()) fail(ErrCode::Domain, "unassigned symbol in numeric evaluation");
        return it->second;
      }
      case Ast::Add: {
        Rat s(0);
        for (auto& k : e->kids) {
          auto v = ratEval(k);
          if (!v) return std::nullopt;
          s += *v;
        }
        return s;
      }
      case Ast::Mul: {
        Rat s(1);
        for (auto& k : e->kids) {
          auto v = ratEval(k);
          if (!v) return std::nullopt;
          s *= *v;
        }
        return s;
      }
      case Ast::Pow: {
        auto b = ratEval(e->kids[0]);
        auto x = ratEval(e->kids[1]);
        if (!b || !x || !isInt(*x)) return std::nullopt;
        long k = toLong(*x);
        if (*b == 0 && k < 0) fail(ErrCode::Pole, "zero raised to a negative power");
        return ratPow(*b, k);
      }
      case Ast::Sign: {
        auto v = ratEval(e->kids[0]);
        if (!v) return std::nullopt;
        if (!isInt(*v)) fail(ErrCode::Domain, "Sign of a non-integer");
        return toLong(*v) % 2 ? Rat(-1) : Rat(1);
      }
      default:
        return std::nullopt;
    }
  }

  long intArg(const AstP& e, const char* what) {
    auto v = ratEval(e);
    if (!v || !isInt(*v)) fail(ErrCode::Domain, std::string(what) + " must be an integer");
    return toLong(*v);
  }

  MF gammaOf(const AstP& arg) {
    if (auto r = ratEval(arg)) {
      if (isInt(*r) && *r <= 0)
        fail(ErrCode::Pole, "Gamma pole at " + ratStr(*r));
      MF x = fromRat(*r, prec);
      mpfr_gamma(x.p(), x.p(), RN);
      return x;
    }
    MF x = eval(arg);
    mpfr_gamma(x.p(), x.p(), RN);
    return x;
  }

  // C(t, b): product formula when b is a nonnegative integer (valid for any
  // t, matches the Gamma-ratio limit), Gamma ratio otherwise
  MF binom(const AstP& top, const AstP& bot) {
    auto b = ratEval(bot);
    if (b && isInt(*b)) {
      long n = toLong(*b);
      if (n < 0) fail(ErrCode::Domain, "Binomial with a negative integer lower argument");
      if (auto t = ratEval(top)) {
        Rat r(1);
        for (long i = 0; i < n; ++i) r *= (*t - i) / (i + 1);
        return fromRat(r, prec);
      }
      MF t = eval(top);
      MF r = fromRat(Rat(1), prec);
      MF f(prec);
      for (long i = 0; i < n; ++i) {
        mpfr_sub_si(f.p(), t.p(), i, RN);
        mpfr_mul(r.p(), r.p(), f.p(), RN);
        mpfr_div_si(r.p(), r.p(), i + 1, RN);
      }
      return r;
    }
    MF g1 = gammaOf(Ast::nary(Ast::Add, {top, Ast::num(Rat(1))}));
    MF g2 = gammaOf(Ast::nary(Ast::Add, {bot, Ast::num(Rat(1))}));
    MF g3 = gammaOf(Ast::nary(
        Ast::Add, {top, Ast::nary(Ast::Mul, {Ast::num(Rat(-1)), bot}), Ast::num(Rat(1))}));
    mpfr_div(g1.p(), g1.p(), g2.p(), RN);
    mpfr_div(g1.p(), g1.p(), g3.p(), RN);
    return g1;
  }

  MF poch(const AstP& base, const AstP& count) {
    auto c = ratEval(count);
    if (c && isInt(*c)) {
      long n = toLong(*c);
      if (auto a = ratEval(base)) {
        Rat r(1);
        if (n >= 0)
          for (long i = 0; i < n; ++i) r *= *a + i;
        else
          for (long i = 1; i <= -n; ++i) {
            Rat d = *a - i;
            if (d == 0) fail(ErrCode::Pole, "Pochhammer with a vanishing factor");
            r /= d;
          }
        return fromRat(r, prec);
      }
      MF a = eval(base);
      MF r = fromRat(Rat(1), prec);
      MF f(prec);
      if (n >= 0)
        for (long i = 0; i < n; ++i) {
          mpfr_add_si(f.p(), a.p(), i, RN);
          mpfr_mul(r.p(), r.p(), f.p(), RN);
        }
      else
        for (long i = 1; i <= -n; ++i) {
          mpfr_sub_si(f.p(), a.p(), i, RN);
          mpfr_div(r.p(), r.p(), f.p(), RN);
        }
      return r;
    }
    MF g1 = gammaOf(Ast::nary(Ast::Add, {base, count}));
    MF g2 = gammaOf(base);
    mpfr_div(g1.p(), g1.p(), g2.p(), RN);
    return g1;
  }

  // S_{c1,...,cd}(N) by one incremental sweep: vals[k] = S_{ck..cd}(i)
  MF harm(const std::vector<int>& w, long N) {
    size_t d = w.size();
    std::vector<MF> vals(d, MF(prec));
    MF t(prec), pw(prec);
    for (long i = 1; i <= N; ++i) {
      for (size_t k = d; k-- > 0;) {
        long a = w[k] < 0 ? -w[k] : w[k];
        mpfr_set_si(t.p(), w[k] < 0 && (i & 1) ? -1 : 1, RN);
        mpfr_set_si(pw.p(), i, RN);
        mpfr_pow_si(pw.p(), pw.p(), a, RN);
        mpfr_div(t.p(), t.p(), pw.p(), RN);
        if (k + 1 < d) mpfr_mul(t.p(), t.p(), vals[k + 1].p(), RN);
        mpfr_add(vals[k].p(), vals[k].p(), t.p(), RN);
      }
    }
    if (d == 0) return fromRat(Rat(1), prec);
    return N >= 1 ? vals[0] : MF(prec);
  }

  MF cyc(const std::vector<std::array<long, 3>>& abc, const std::vector<Rat>& xs, long N) {
    size_t d = abc.size();
    std::vector<MF> vals(d, MF(prec));
    std::vector<MF> pw;  // running x^i per layer
    for (size_t k = 0; k < d; ++k) pw.push_back(fromRat(Rat(1), prec));
    MF t(prec), den(prec);
    for (long i = 1; i <= N; ++i) {
      for (size_t k = d; k-- > 0;) {
        mpfr_mul_q(pw[k].p(), pw[k].p(), xs[k].get_mpq_t(), RN);
        long dv = abc[k][0] * i + abc[k][1];
        if (dv == 0) fail(ErrCode::Pole, "cyclotomic denominator vanished");
        mpfr_set_si(den.p(), dv, RN);
        mpfr_pow_si(den.p(), den.p(), abc[k][2], RN);
        mpfr_div(t.p(), pw[k].p(), den.p(), RN);
        if (k + 1 < d) mpfr_mul(t.p(), t.p(), vals[k + 1].p(), RN);
        mpfr_add(vals[k].p(), vals[k].p(), t.p(), RN);
      }
    }
    if (d == 0) return fromRat(Rat(1), prec);
    return N >= 1 ? vals[0] : MF(prec);
  }

  MF sum(const AstP& e) {
    long lo = intArg(e->kids[0], "sum lower bound");
    bool infinite = e->kids[1]->kind == Ast::Infinity;
    long hi = infinite ? 0 : intArg(e->kids[1], "sum upper bound");
    auto saved = env.find(e->var) != env.end() ? std::optional<Rat>(env[e->var])
                                               : std::nullopt;
    MF acc(prec), mx(prec);
    long quiet = 0;
    for (long i = lo; infinite || i <= hi; ++i) {
      env[e->var] = Rat(i);
      MF t = evalRaw(e->kids[2]);
      mpfr_add(acc.p(), acc.p(), t.p(), RN);
      if (infinite) {
        mpfr_abs(t.p(), t.p(), RN);
        if (mpfr_cmp(t.p(), mx.p()) > 0) mpfr_set(mx.p(), t.p(), RN);
        // converged once 12 consecutive terms sit below the working precision
        // relative to the largest term seen
        MF thr(mx);
        mpfr_div_2si(thr.p(), thr.p(), prec + 8, RN);
        bool small = mpfr_zero_p(t.p()) ||
                     (!mpfr_zero_p(mx.p()) && mpfr_cmp(t.p(), thr.p()) < 0);
        quiet = small ? quiet + 1 : 0;
        if (quiet >= 12) break;
        if (i - lo >= maxTerms)
          fail(ErrCode::Truncation, "infinite sum did not settle within the term cap");
      }
    }
    if (saved)
      env[e->var] = *saved;
    else
      env.erase(e->var);
    return acc;
  }

  MF evalRaw(const AstP& e) {
    switch (e->kind) {
      case Ast::Num:
        return fromRat(e->value, prec);
      case Ast::Var: {
        auto it = env.find(e->var);
        if (it == env.end()) fail(ErrCode::Domain, "unassigned symbol in numeric evaluation");
        return fromRat(it->second, prec);
      }
      case Ast::Pi: {
        MF x(prec);
        mpfr_const_pi(x.p(), RN);
        return x;
      }
      case Ast::EulerGamma: {
        MF x(prec);
        mpfr_const_euler(x.p(), RN);
        return x;
      }
      case Ast::Zeta: {
        MF x(prec);
        mpfr_zeta_ui(x.p(), (unsigned long)e->k, RN);
        return x;
      }
      case Ast::Infinity:
        fail(ErrCode::Domain, "Infinity outside a sum bound");
      case Ast::Add: {
        MF acc(prec);
        for (auto& k : e->kids) {
          MF t = evalRaw(k);
          mpfr_add(acc.p(), acc.p(), t.p(), RN);
        }
        return acc;
      }
      case Ast::Mul: {
        MF acc = fromRat(Rat(1), prec);
        for (auto& k : e->kids) {
          MF t = evalRaw(k);
          mpfr_mul(acc.p(), acc.p(), t.p(), RN);
        }
        return acc;
      }
      case Ast::Pow: {
        if (auto r = ratEval(e)) return fromRat(*r, prec);
        MF b = evalRaw(e->kids[0]);
        auto x = ratEval(e->kids[1]);
        if (x && isInt(*x)) {
          if (mpfr_zero_p(b.p()) && *x < 0)
            fail(ErrCode::Pole, "zero raised to a negative power");
          mpfr_pow_si(b.p(), b.p(), toLong(*x), RN);
          return b;
        }
        MF ex = x ? fromRat(*x, prec) : evalRaw(e->kids[1]);
        mpfr_pow(b.p(), b.p(), ex.p(), RN);
        if (!mpfr_number_p(b.p()))
          fail(ErrCode::Domain, "power with a negative base and non-integer exponent");
        return b;
      }
      case Ast::Gamma:
        return gammaOf(e->kids[0]);
      case Ast::Factorial:
        return gammaOf(Ast::nary(Ast::Add, {e->kids[0], Ast::num(Rat(1))}));
      case Ast::Sign: {
        auto v = ratEval(e);
        if (!v) fail(ErrCode::Domain, "Sign of a non-rational argument");
        return fromRat(*v, prec);
      }
      case Ast::Binomial:
        return binom(e->kids[0], e->kids[1]);
      case Ast::Pochhammer:
        return poch(e->kids[0], e->kids[1]);
      case Ast::ExpGammaEps: {
        auto it = env.find(symEps());
        if (it == env.end()) fail(ErrCode::Domain, "eps is unassigned");
        MF x(prec);
        mpfr_const_euler(x.p(), RN);
        mpfr_mul_q(x.p(), x.p(), e->value.get_mpq_t(), RN);
        mpfr_mul_q(x.p(), x.p(), it->second.get_mpq_t(), RN);
        mpfr_exp(x.p(), x.p(), RN);
        return x;
      }
      case Ast::HarmS: {
        long N = intArg(e->kids[0], "harmonic sum argument");
        if (N < 0) fail(ErrCode::Domain, "harmonic sum at a negative argument");
        return harm(e->word, N);
      }
      case Ast::CycS: {
        long N = intArg(e->kids[0], "cyclotomic sum argument");
        if (N < 0) fail(ErrCode::Domain, "cyclotomic sum at a negative argument");
        return cyc(e->abc, e->xs, N);
      }
      case Ast::Sum:
        return sum(e);
    }
    fail(ErrCode::Internal, "unhandled node in numeric evaluation");
  }
};

MF runOnce(const AstP& e, const Assign& vals, mpfr_prec_t prec, long maxTerms) {
  NumEval ev{vals, prec, maxTerms};
  return ev.eval(e);
}

}  // namespace

std::string NumResult::str(long digits) const {
  MF x = fromRat(approx, bitsFor(digits) + 32);
  std::vector<char> buf(digits + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", (int)digits, x.p());
  return std::string(buf.data());
}

long agreeDigits(const Rat& a, const Rat& b) {
  Rat d = a - b;
  if (d == 0) return 999;
  Rat m = std::max(abs(a), abs(b));
  mpq_class ratio = m / abs(d);
  MF x = fromRat(ratio, 64);
  mpfr_log10(x.p(), x.p(), RN);
  long g = mpfr_get_si(x.p(), MPFR_RNDD);
  return g < 0 ? 0 : g;
}

NumResult evalNumeric(const AstP& e, const Assign& vals, const NumOptions& opt) {
  // re-run at a multiplicatively larger precision: an additive gap can round
  // identically on both runs and certify a wrong value
  mpfr_prec_t p = bitsFor(opt.digits) + 64;
  NumResult best;
  long bestAgree = -1;
  for (int attempt = 0; attempt < 4; ++attempt) {
    Rat a = toRat(runOnce(e, vals, p, opt.maxTerms));
    Rat b = toRat(runOnce(e, vals, 2 * p + 96, opt.maxTerms));
    // two exact zeros certify nothing: a cancellation artifact rounds to zero
    // at every precision that is too low to see the survivor
    long agree = (a == 0 && b == 0) ? 0 : agreeDigits(a, b);
    if (agree > bestAgree) {
      best = NumResult{b, agree};
      bestAgree = agree;
    }
    if (agree >= opt.digits) return best;
    p = 2 * p + 96;
  }
  return best;
}

namespace {

// one fit: sample at eps_j = eps0 / 2^j and solve the exact Vandermonde
// system V c = y, V_{jk} = eps_j^(lo+k), by elimination with exact rational
// multipliers applied to the float samples
std::vector<Rat> laurentFitOnce(const AstP& e, const Assign& vals, long lo, long hi,
                                long guard, const Rat& eps0, mpfr_prec_t prec,
                                long maxTerms) {
  long m = hi - lo + 1 + guard;
  std::vector<Rat> nodes(m);
  nodes[0] = eps0;
  for (long j = 1; j < m; ++j) nodes[j] = nodes[j - 1] / 2;

  std::vector<std::vector<Rat>> A((size_t)m, std::vector<Rat>((size_t)m));
  std::vector<MF> y;
  y.reserve((size_t)m);
  Sym eps = symEps();
  for (long j = 0; j < m; ++j) {
    for (long k = 0; k < m; ++k) A[j][k] = ratPow(nodes[j], lo + k);
    Assign a = vals;
    a[eps] = nodes[j];
    y.push_back(runOnce(e, a, prec, maxTerms));
  }

  // forward elimination, exact pivots
  for (long c = 0; c < m; ++c) {
    long piv = -1;
    for (long r = c; r < m; ++r)
      if (A[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) fail(ErrCode::Internal, "singular sample matrix in Laurent fit");
    std::swap(A[c], A[piv]);
    if (piv != c) std::swap(y[c], y[piv]);
    for (long r = c + 1; r < m; ++r) {
      if (A[r][c] == 0) continue;
      Rat f = A[r][c] / A[c][c];
      for (long k = c; k < m; ++k) A[r][k] -= f * A[c][k];
      MF t(y[c]);
      mpfr_mul_q(t.p(), t.p(), f.get_mpq_t(), RN);
      mpfr_sub(y[r].p(), y[r].p(), t.p(), RN);
    }
  }
  // back substitution
  std::vector<MF> c((size_t)m, MF(prec));
  for (long r = m - 1; r >= 0; --r) {
    MF acc(y[r]);
    for (long k = r + 1; k < m; ++k) {
      MF t(c[k]);
      mpfr_mul_q(t.p(), t.p(), A[r][k].get_mpq_t(), RN);
      mpfr_sub(acc.p(), acc.p(), t.p(), RN);
    }
    mpfr_div_q(acc.p(), acc.p(), A[r][r].get_mpq_t(), RN);
    c[r] = acc;
  }
  std::vector<Rat> out;
  out.reserve((size_t)(hi - lo + 1));
  for (long k = 0; k <= hi - lo; ++k) out.push_back(toRat(c[k]));
  return out;
}

}  // namespace

std::vector<NumResult> laurentNumeric(const AstP& e, const Assign& vals, long lo, long hi,
                                      const NumOptions& opt) {
  if (hi < lo) fail(ErrCode::Domain, "empty Laurent order range");
  long guard = 6;
  long span = hi - lo + 1 + guard;
  // sampling precision: requested digits, plus the dynamic range the
  // coefficients span across the sample window, plus elimination headroom
  long sampleDigits = opt.digits + (long)(7.3 * span) + span * span / 4 + 24;
  std::vector<NumResult> best;
  long worst = -1;
  for (int attempt = 0; attempt < 2; ++attempt) {
    mpfr_prec_t prec = bitsFor(sampleDigits);
    auto c1 = laurentFitOnce(e, vals, lo, hi, guard, ratOf(1, 1 << 20), prec, opt.maxTerms);
    auto c2 = laurentFitOnce(e, vals, lo, hi, guard, ratOf(1, 3 << 20), prec, opt.maxTerms);
    std::vector<NumResult> out;
    long w = 999;
    for (size_t k = 0; k < c1.size(); ++k) {
      long agree = agreeDigits(c1[k], c2[k]);
      out.push_back(NumResult{c2[k], agree});
      w = std::min(w, agree);
    }
    if (w > worst) {
      best = out;
      worst = w;
    }
    if (w >= opt.digits) return best;
    guard += 3;
    sampleDigits += 40;
  }
  return best;
}

NumResult constNumeric(const ConstVal& v, const NumOptions& opt) {
  mpfr_prec_t prec = bitsFor(opt.digits) + 64;
  MF acc(prec);
  for (auto& [mono, coef] : v.t) {
    MF term = fromRat(coef, prec);
    for (auto& [key, ex] : mono) {
      MF base(prec);
      switch (key.tag) {
        case CKey::Pi:
          mpfr_const_pi(base.p(), RN);
          break;
        case CKey::EulerGamma:
          mpfr_const_euler(base.p(), RN);
          break;
        case CKey::Log2:
          mpfr_const_log2(base.p(), RN);
          break;
        case CKey::Zeta:
          mpfr_zeta_ui(base.p(), (unsigned long)key.k, RN);
          break;
        case CKey::SInf:
          fail(ErrCode::Unsupported, "numeric value of an unreduced S-sum at infinity");
      }
      if (isInt(ex)) {
        mpfr_pow_si(base.p(), base.p(), toLong(ex), RN);
      } else {
        MF x = fromRat(ex, prec);
        mpfr_pow(base.p(), base.p(), x.p(), RN);
      }
      mpfr_mul(term.p(), term.p(), base.p(), RN);
    }
    mpfr_add(acc.p(), acc.p(), term.p(), RN);
  }
  // constants are computed to full working precision; report all requested
  // digits as good (the only error is final rounding)
  return NumResult{toRat(acc), opt.digits};
}

}  // namespace epsum
