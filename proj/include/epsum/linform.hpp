#pragma once
#include <map>

#include "epsum/poly.hpp"

namespace epsum {

// sum(a_s * s) + c + e*eps   — the only argument shape Gamma/Pow/Sign accept.
// Symbol coefficients a_s are kept rational but must be integers wherever a
// shift/window argument demands it (checked at the use site).
struct LinearForm {
  std::map<Sym, Rat> a;  // eps never appears here
  Rat c = Rat(0);
  Rat e = Rat(0);

  LinearForm() = default;
  explicit LinearForm(const Rat& cc) : c(cc) {}
  static LinearForm sym(Sym s, const Rat& coef = Rat(1)) {
    LinearForm f;
    if (coef != 0) f.a[s] = coef;
    return f;
  }
  static LinearForm epsTerm(const Rat& r) {
    LinearForm f;
    f.e = r;
    return f;
  }

  bool isConst() const { return a.empty() && e == 0; }
  bool epsFree() const { return e == 0; }
  bool isZero() const { return a.empty() && c == 0 && e == 0; }
  Rat coeff(Sym s) const {
    auto it = a.find(s);
    return it == a.end() ? Rat(0) : it->second;
  }
  bool intCoeffs() const {
    for (auto& [s, v] : a)
      if (!isInt(v)) return false;
    return true;
  }

  LinearForm operator+(const LinearForm& o) const {
    LinearForm r = *this;
    for (auto& [s, v] : o.a) {
      Rat nv = r.coeff(s) + v;
      if (nv == 0)
        r.a.erase(s);
      else
        r.a[s] = nv;
    }
    r.c += o.c;
    r.e += o.e;
    return r;
  }
  LinearForm operator-() const {
    LinearForm r;
    for (auto& [s, v] : a) r.a[s] = -v;
    r.c = -c;
    r.e = -e;
    return r;
  }
  LinearForm operator-(const LinearForm& o) const { return *this + (-o); }
  LinearForm operator+(const Rat& k) const {
    LinearForm r = *this;
    r.c += k;
    return r;
  }
  LinearForm scale(const Rat& k) const {
    LinearForm r;
    if (k == 0) return r;
    for (auto& [s, v] : a) r.a[s] = v * k;
    r.c = c * k;
    r.e = e * k;
    return r;
  }
  bool operator==(const LinearForm& o) const { return a == o.a && c == o.c && e == o.e; }
  bool operator<(const LinearForm& o) const {
    if (a != o.a) return a < o.a;
    if (c != o.c) return c < o.c;
    return e < o.e;
  }

  // substitute s -> f (f linear); no-op when s absent
  LinearForm subst(Sym s, const LinearForm& f) const {
    auto it = a.find(s);
    if (it == a.end()) return *this;
    LinearForm r = *this;
    Rat k = it->second;
    r.a.erase(s);
    return r + f.scale(k);
  }
  LinearForm shift(Sym s, long d) const { return subst(s, LinearForm::sym(s) + Rat(d)); }

  Poly toPoly() const {
    Poly p(c);
    for (auto& [s, v] : a) p += Poly(v) * Poly::var(s);
    if (e != 0) p += Poly(e) * Poly::var(symEps());
    return p;
  }
  static LinearForm fromPoly(const Poly& p);  // Domain error if not linear

  Rat eval(const Assign& as) const {
    Rat r = c;
    for (auto& [s, v] : a) {
      auto it = as.find(s);
      if (it == as.end()) fail(ErrCode::Internal, "LinearForm eval: unassigned " + symName(s));
      r += v * it->second;
    }
    if (e != 0) {
      auto it = as.find(symEps());
      if (it == as.end()) fail(ErrCode::Internal, "LinearForm eval: eps unassigned");
      r += e * it->second;
    }
    return r;
  }

  std::string str() const;
  size_t hash() const {
    size_t h = ratHash(c);
    h = hashCombine(h, ratHash(e));
    for (auto& [s, v] : a) h = hashCombine(h, hashCombine((size_t)s.id, ratHash(v)));
    return h;
  }
};

}  // namespace epsum
