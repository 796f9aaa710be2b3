#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "epsum/error.hpp"

namespace epsum {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat ratOf(long p, long q = 1) {
  Rat r(p, q);
  r.canonicalize();
  return r;
}

inline bool isInt(const Rat& r) { return r.get_den() == 1; }

inline Int numOf(const Rat& r) { return r.get_num(); }
inline Int denOf(const Rat& r) { return r.get_den(); }

inline long toLong(const Int& z) {
  if (!z.fits_slong_p()) fail(ErrCode::Internal, "integer too large: " + z.get_str());
  return z.get_si();
}

inline long toLong(const Rat& r) {
  if (!isInt(r)) fail(ErrCode::Internal, "expected integer, got " + r.get_str());
  return toLong(numOf(r));
}

// floor(p/q) for arbitrary sign
inline Int floorOf(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Rat ratPow(const Rat& b, long e) {
  if (e == 0) return Rat(1);
  Rat base = b, acc(1);
  unsigned long n = e < 0 ? -(unsigned long)e : (unsigned long)e;
  if (e < 0) {
    if (b == 0) fail(ErrCode::Pole, "0 raised to negative power");
    base = Rat(1) / b;
  }
  mpz_pow_ui(acc.get_num_mpz_t(), base.get_num_mpz_t(), n);
  mpz_pow_ui(acc.get_den_mpz_t(), base.get_den_mpz_t(), n);
  acc.canonicalize();
  return acc;
}

// gcd(a,b) >= 0 on rationals: gcd of numerators / lcm of denominators
inline Rat ratGcd(const Rat& a, const Rat& b) {
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  Int gn, dl;
  mpz_gcd(gn.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
  mpz_lcm(dl.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  Rat r(gn, dl);
  r.canonicalize();
  return r;
}

inline std::string ratStr(const Rat& r) { return r.get_str(); }

inline Rat parseRat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) fail(ErrCode::Parse, "bad rational: " + s);
  r.canonicalize();
  return r;
}

inline size_t hashCombine(size_t a, size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
}

inline size_t ratHash(const Rat& r) {
  size_t h = 1469598103934665603ull;
  auto mix = [&](const mpz_class& z) {
    size_t v = mpz_fdiv_ui(z.get_mpz_t(), 1000000007ul);
    if (sgn(z) < 0) v = ~v;
    h = hashCombine(h, v);
  };
  mix(r.get_num());
  mix(r.get_den());
  return h;
}

}  // namespace epsum
