#include "epsum/constants.hpp"

#include <sstream>

namespace epsum {

std::string CKey::str() const {
  switch (tag) {
    case Pi:
      return "Pi";
    case EulerGamma:
      return "EulerGamma";
    case Log2:
      return "Log2";
    case Zeta:
      return "Zeta[" + std::to_string(k) + "]";
    case SInf: {
      std::ostringstream o;
      o << "S[";
      for (size_t i = 0; i < word.size(); ++i) o << (i ? "," : "") << word[i];
      o << "; Infinity]";
      return o.str();
    }
  }
  return "?";
}

std::string cmonoStr(const CMono& m) {
  if (m.empty()) return "1";
  std::ostringstream o;
  bool first = true;
  for (auto& [k, e] : m) {
    if (!first) o << "*";
    first = false;
    o << k.str();
    if (e != 1) o << "^(" << e.get_str() << ")";
  }
  return o.str();
}

size_t cmonoHash(const CMono& m) {
  size_t h = 0x9dd5;
  for (auto& [k, e] : m) h = hashCombine(h, hashCombine(k.hash(), ratHash(e)));
  return h;
}

std::string ConstVal::str() const {
  if (t.empty()) return "0";
  std::ostringstream o;
  bool first = true;
  for (auto& [m, c] : t) {
    Rat ac = abs(c);
    if (first)
      o << (c < 0 ? "-" : "");
    else
      o << (c < 0 ? " - " : " + ");
    first = false;
    if (m.empty()) {
      o << ac.get_str();
    } else {
      if (ac != 1) o << ac.get_str() << "*";
      o << cmonoStr(m);
    }
  }
  return o.str();
}

}  // namespace epsum
