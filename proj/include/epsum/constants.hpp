#pragma once
#include <map>
#include <vector>

#include "epsum/rat.hpp"

namespace epsum {

// atomic symbolic constants: pi, EulerGamma, log 2, zeta_k, and S-sums at
// infinity that lie outside the relation table (kept as opaque tags)
struct CKey {
  enum Tag : uint8_t { Pi, EulerGamma, Log2, Zeta, SInf } tag;
  int k = 0;                 // Zeta weight
  std::vector<int> word;     // SInf signature c1,...,cd (negative = alternating)

  bool operator==(const CKey& o) const { return tag == o.tag && k == o.k && word == o.word; }
  bool operator<(const CKey& o) const {
    if (tag != o.tag) return tag < o.tag;
    if (k != o.k) return k < o.k;
    return word < o.word;
  }
  std::string str() const;
  size_t hash() const {
    size_t h = hashCombine((size_t)tag, (size_t)k);
    for (int c : word) h = hashCombine(h, (size_t)(long)c);
    return h;
  }
};

inline CKey cPi() { return CKey{CKey::Pi}; }
inline CKey cGamma() { return CKey{CKey::EulerGamma}; }
inline CKey cLog2() { return CKey{CKey::Log2}; }
inline CKey cZeta(int k) { return CKey{CKey::Zeta, k}; }
inline CKey cSInf(std::vector<int> w) { return CKey{CKey::SInf, 0, std::move(w)}; }

// product of constant powers, exponents rational (pi^(1/2) from duplication)
using CMono = std::map<CKey, Rat>;

std::string cmonoStr(const CMono& m);
size_t cmonoHash(const CMono& m);

// finite Q-linear combination of constant monomials; the value type of exact
// evaluation (evalAt) and of relation-table entries
class ConstVal {
public:
  std::map<CMono, Rat> t;

  ConstVal() = default;
  explicit ConstVal(const Rat& r) {
    if (r != 0) t[{}] = r;
  }
  static ConstVal atom(const CKey& k, const Rat& exp = Rat(1)) {
    ConstVal v;
    CMono m;
    m[k] = exp;
    v.t[m] = Rat(1);
    return v;
  }

  bool isZero() const { return t.empty(); }
  bool isRat() const { return t.empty() || (t.size() == 1 && t.begin()->first.empty()); }
  Rat ratVal() const {
    if (t.empty()) return Rat(0);
    if (!isRat()) fail(ErrCode::Domain, "constant value is not rational: " + str());
    return t.begin()->second;
  }

  ConstVal operator+(const ConstVal& o) const {
    ConstVal r = *this;
    for (auto& [m, c] : o.t) {
      Rat nc = (r.t.count(m) ? r.t[m] : Rat(0)) + c;
      if (nc == 0)
        r.t.erase(m);
      else
        r.t[m] = nc;
    }
    return r;
  }
  ConstVal operator-(const ConstVal& o) const { return *this + o.scale(Rat(-1)); }
  ConstVal scale(const Rat& c) const {
    ConstVal r;
    if (c == 0) return r;
    for (auto& [m, v] : t) r.t[m] = v * c;
    return r;
  }
  ConstVal operator*(const ConstVal& o) const {
    ConstVal r;
    for (auto& [m1, c1] : t)
      for (auto& [m2, c2] : o.t) {
        CMono m = m1;
        for (auto& [k, e] : m2) {
          Rat ne = (m.count(k) ? m[k] : Rat(0)) + e;
          if (ne == 0)
            m.erase(k);
          else
            m[k] = ne;
        }
        Rat nc = (r.t.count(m) ? r.t[m] : Rat(0)) + c1 * c2;
        if (nc == 0)
          r.t.erase(m);
        else
          r.t[m] = nc;
      }
    return r;
  }
  ConstVal& operator+=(const ConstVal& o) { return *this = *this + o; }
  ConstVal& operator*=(const ConstVal& o) { return *this = *this * o; }
  bool operator==(const ConstVal& o) const { return t == o.t; }

  std::string str() const;
};

}  // namespace epsum
