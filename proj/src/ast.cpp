#include "epsum/ast.hpp"

#include <cctype>
#include <json.hpp>
#include <sstream>

namespace epsum {

AstP Ast::num(const Rat& v) {
  auto n = std::make_shared<Ast>();
  n->kind = Num;
  n->value = v;
  return n;
}
AstP Ast::sym(Sym s) {
  auto n = std::make_shared<Ast>();
  n->kind = Var;
  n->var = s;
  return n;
}
AstP Ast::constant(Kind k, int weight) {
  auto n = std::make_shared<Ast>();
  n->kind = k;
  n->k = weight;
  return n;
}
AstP Ast::nary(Kind k, std::vector<AstP> kids) {
  auto n = std::make_shared<Ast>();
  n->kind = k;
  n->kids = std::move(kids);
  return n;
}
AstP Ast::call(Kind k, std::vector<AstP> kids) { return nary(k, std::move(kids)); }
AstP Ast::pow(AstP b, AstP e) { return nary(Pow, {std::move(b), std::move(e)}); }
AstP Ast::expGammaEps(const Rat& r) {
  auto n = std::make_shared<Ast>();
  n->kind = ExpGammaEps;
  n->value = r;
  return n;
}
AstP Ast::harm(std::vector<int> w, AstP arg) {
  auto n = std::make_shared<Ast>();
  n->kind = HarmS;
  n->word = std::move(w);
  n->kids = {std::move(arg)};
  return n;
}
AstP Ast::cyc(std::vector<std::array<long, 3>> abc, std::vector<Rat> xs, AstP arg) {
  auto n = std::make_shared<Ast>();
  n->kind = CycS;
  n->abc = std::move(abc);
  n->xs = std::move(xs);
  n->kids = {std::move(arg)};
  return n;
}
AstP Ast::sum(Sym idx, AstP lo, AstP hi, AstP body) {
  auto n = std::make_shared<Ast>();
  n->kind = Sum;
  n->var = idx;
  n->kids = {std::move(lo), std::move(hi), std::move(body)};
  return n;
}

bool astEq(const AstP& a, const AstP& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  if (a->value != b->value || a->k != b->k || a->var != b->var) return false;
  if (a->word != b->word || a->abc != b->abc || a->xs != b->xs) return false;
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!astEq(a->kids[i], b->kids[i])) return false;
  return true;
}

// ---------------------------------------------------------------- lexer

namespace {

struct Tok {
  enum Type { Int, Ident, Punct, End } type;
  std::string s;
  size_t pos;
};

struct Lexer {
  const std::string& src;
  size_t i = 0;
  Tok cur;

  explicit Lexer(const std::string& s) : src(s) { advance(); }

  [[noreturn]] void err(const std::string& msg, size_t at) {
    fail(ErrCode::Parse, msg + " at position " + std::to_string(at) + " in: " + src);
  }

  void advance() {
    while (i < src.size() && isspace((unsigned char)src[i])) ++i;
    if (i >= src.size()) {
      cur = {Tok::End, "", i};
      return;
    }
    size_t start = i;
    char c = src[i];
    if (isdigit((unsigned char)c)) {
      while (i < src.size() && isdigit((unsigned char)src[i])) ++i;
      cur = {Tok::Int, src.substr(start, i - start), start};
      return;
    }
    if (isalpha((unsigned char)c)) {
      while (i < src.size() && (isalnum((unsigned char)src[i]) || src[i] == '_')) ++i;
      cur = {Tok::Ident, src.substr(start, i - start), start};
      return;
    }
    if (std::string("+-*/^()[],;").find(c) == std::string::npos)
      err(std::string("unexpected character '") + c + "'", start);
    ++i;
    cur = {Tok::Punct, std::string(1, c), start};
  }

  bool isP(const char* p) const { return cur.type == Tok::Punct && cur.s == p; }
  bool isI(const char* w) const { return cur.type == Tok::Ident && cur.s == w; }
  void expectP(const char* p) {
    if (!isP(p)) err(std::string("expected '") + p + "'", cur.pos);
    advance();
  }
};

bool isKeyword(const std::string& id) {
  static const char* kw[] = {"Gamma",      "Binomial", "Factorial",   "Pochhammer", "Sign",
                             "Pow",        "Sum",      "ExpGammaEps", "eps",        "Pi",
                             "EulerGamma", "Zeta",     "Infinity"};
  for (auto* w : kw)
    if (id == w) return true;
  return false;
}

// ---------------------------------------------------------------- parser

struct Parser {
  Lexer lx;
  explicit Parser(const std::string& s) : lx(s) {}

  AstP parse() {
    AstP e = expr();
    if (lx.cur.type != Tok::End) lx.err("trailing input", lx.cur.pos);
    return e;
  }

  AstP expr() {
    std::vector<AstP> terms;
    bool neg = false;
    if (lx.isP("-")) {
      neg = true;
      lx.advance();
    } else if (lx.isP("+")) {
      lx.advance();
    }
    terms.push_back(signTerm(term(), neg));
    while (lx.isP("+") || lx.isP("-")) {
      bool m = lx.isP("-");
      lx.advance();
      terms.push_back(signTerm(term(), m));
    }
    return terms.size() == 1 ? terms[0] : Ast::nary(Ast::Add, std::move(terms));
  }

  // negation folds into a numeric literal or a flat product
  static AstP signTerm(AstP t, bool neg) {
    if (!neg) return t;
    if (t->kind == Ast::Num) return Ast::num(-t->value);
    if (t->kind == Ast::Mul && !t->kids.empty()) {
      auto m = std::make_shared<Ast>(*t);
      if (m->kids[0]->kind == Ast::Num) {
        auto h = std::make_shared<Ast>(*m->kids[0]);
        h->value = -h->value;
        m->kids[0] = std::move(h);
      } else {
        m->kids.insert(m->kids.begin(), Ast::num(Rat(-1)));
      }
      return m;
    }
    return Ast::nary(Ast::Mul, {Ast::num(Rat(-1)), t});
  }

  AstP term() {
    std::vector<AstP> fs{factor()};
    while (lx.isP("*") || lx.isP("/")) {
      bool div = lx.isP("/");
      lx.advance();
      AstP f = factor();
      fs.push_back(div ? Ast::pow(f, Ast::num(Rat(-1))) : f);
    }
    return fs.size() == 1 ? fs[0] : Ast::nary(Ast::Mul, std::move(fs));
  }

  AstP factor() {
    if (lx.isP("-")) {
      lx.advance();
      return signTerm(factor(), true);
    }
    AstP base = primary();
    if (lx.isP("^")) {
      lx.advance();
      return Ast::pow(base, exponent());
    }
    return base;
  }

  // integer, bare symbol, or a parenthesized expression such as (p/q) or (2*eps - 1)
  AstP exponent() {
    bool neg = false;
    if (lx.isP("-")) {
      neg = true;
      lx.advance();
    }
    AstP e;
    if (lx.cur.type == Tok::Int) {
      e = Ast::num(parseRat(lx.cur.s));
      lx.advance();
    } else if (lx.isP("(")) {
      lx.advance();
      e = expr();
      lx.expectP(")");
    } else if (lx.cur.type == Tok::Ident && !isKeyword(lx.cur.s)) {
      std::string id = lx.cur.s;
      lx.advance();
      Sym s = SymTab::inst().known(id) ? SymTab::inst().lookup(id)
                                       : SymTab::inst().intern(id, SymKind::Outer);
      e = Ast::sym(s);
    } else if (lx.cur.type == Tok::Ident && lx.cur.s == "eps") {
      lx.advance();
      e = Ast::sym(symEps());
    } else {
      lx.err("expected an integer, symbol, or parenthesized exponent", lx.cur.pos);
    }
    return signTerm(e, neg);
  }

  Rat ratLiteral() {
    bool neg = false;
    if (lx.isP("-")) {
      neg = true;
      lx.advance();
    }
    if (lx.cur.type != Tok::Int) lx.err("expected a rational literal", lx.cur.pos);
    Rat v = parseRat(lx.cur.s);
    lx.advance();
    if (lx.isP("/")) {
      lx.advance();
      if (lx.cur.type != Tok::Int) lx.err("expected a denominator", lx.cur.pos);
      Rat d = parseRat(lx.cur.s);
      if (d == 0) lx.err("zero denominator", lx.cur.pos);
      v = v / d;
      lx.advance();
    }
    return neg ? Rat(-v) : v;
  }

  long intLiteral() {
    Rat v = ratLiteral();
    if (!isInt(v)) lx.err("expected an integer", lx.cur.pos);
    return toLong(v);
  }

  AstP primary() {
    if (lx.cur.type == Tok::Int) {
      Rat v = parseRat(lx.cur.s);
      lx.advance();
      return Ast::num(v);
    }
    if (lx.isP("(")) {
      lx.advance();
      AstP e = expr();
      lx.expectP(")");
      return e;
    }
    if (lx.cur.type != Tok::Ident) lx.err("expected an expression", lx.cur.pos);
    std::string id = lx.cur.s;
    lx.advance();

    if (id == "S" && lx.isP("[")) return sBracket();
    if (id == "Pi") return Ast::constant(Ast::Pi);
    if (id == "EulerGamma") return Ast::constant(Ast::EulerGamma);
    if (id == "Infinity") return Ast::constant(Ast::Infinity);
    if (id == "eps") return Ast::sym(symEps());
    if (id == "Zeta") {
      lx.expectP("[");
      long k = intLiteral();
      if (k < 2) lx.err("Zeta[k] needs k >= 2", lx.cur.pos);
      lx.expectP("]");
      return Ast::constant(Ast::Zeta, (int)k);
    }
    if (id == "Gamma") return unaryCall(Ast::Gamma);
    if (id == "Factorial") return unaryCall(Ast::Factorial);
    if (id == "Sign") return unaryCall(Ast::Sign);
    if (id == "Binomial") return binaryCall(Ast::Binomial);
    if (id == "Pochhammer") return binaryCall(Ast::Pochhammer);
    if (id == "Pow") {
      // Pow(c, lf): integer base with a linear-form exponent
      lx.expectP("(");
      AstP base = expr();
      lx.expectP(",");
      AstP ex = expr();
      lx.expectP(")");
      return Ast::pow(base, ex);
    }
    if (id == "ExpGammaEps") {
      lx.expectP("(");
      Rat r = ratLiteral();
      lx.expectP(")");
      return Ast::expGammaEps(r);
    }
    if (id == "Sum") return sumCall();

    // plain symbol: reuse a known one, otherwise a fresh outer parameter
    Sym s = SymTab::inst().known(id) ? SymTab::inst().lookup(id)
                                     : SymTab::inst().intern(id, SymKind::Outer);
    return Ast::sym(s);
  }

  AstP unaryCall(Ast::Kind k) {
    lx.expectP("(");
    AstP a = expr();
    lx.expectP(")");
    return Ast::call(k, {a});
  }

  AstP binaryCall(Ast::Kind k) {
    lx.expectP("(");
    AstP a = expr();
    lx.expectP(",");
    AstP b = expr();
    lx.expectP(")");
    return Ast::call(k, {a, b});
  }

  AstP sumCall() {
    lx.expectP("(");
    if (lx.cur.type != Tok::Ident || isKeyword(lx.cur.s) || lx.cur.s == "S")
      lx.err("expected a summation index", lx.cur.pos);
    std::string id = lx.cur.s;
    lx.advance();
    Sym idx;
    if (SymTab::inst().known(id)) {
      idx = SymTab::inst().lookup(id);
      if (symKind(idx) != SymKind::Index)
        lx.err("summation index '" + id + "' clashes with a non-index symbol", lx.cur.pos);
    } else {
      idx = SymTab::inst().intern(id, SymKind::Index);
    }
    lx.expectP(",");
    AstP lo = expr();
    lx.expectP(",");
    AstP hi = expr();
    lx.expectP(",");
    AstP body = expr();
    lx.expectP(")");
    return Ast::sum(idx, lo, hi, body);
  }

  // S[c1,...,cd; arg]  or  S[(a,b,c),...; x,...; arg]
  AstP sBracket() {
    lx.expectP("[");
    if (lx.isP("(")) {
      std::vector<std::array<long, 3>> abc;
      while (true) {
        lx.expectP("(");
        long a = intLiteral();
        lx.expectP(",");
        long b = intLiteral();
        lx.expectP(",");
        long c = intLiteral();
        lx.expectP(")");
        abc.push_back({a, b, c});
        if (lx.isP(",")) {
          lx.advance();
          continue;
        }
        break;
      }
      lx.expectP(";");
      std::vector<Rat> xs;
      while (true) {
        xs.push_back(ratLiteral());
        if (lx.isP(",")) {
          lx.advance();
          continue;
        }
        break;
      }
      lx.expectP(";");
      AstP arg = expr();
      lx.expectP("]");
      if (xs.size() != abc.size()) lx.err("cyclotomic S needs one weight per layer", lx.cur.pos);
      return Ast::cyc(std::move(abc), std::move(xs), arg);
    }
    std::vector<int> w;
    while (true) {
      long c = intLiteral();
      if (c == 0) lx.err("harmonic index 0 is not allowed", lx.cur.pos);
      w.push_back((int)c);
      if (lx.isP(",")) {
        lx.advance();
        continue;
      }
      break;
    }
    lx.expectP(";");
    AstP arg = expr();
    lx.expectP("]");
    return Ast::harm(std::move(w), arg);
  }
};

// ---------------------------------------------------------------- printer

bool leadNeg(const Ast& e) {
  if (e.kind == Ast::Num) return e.value < 0;
  return e.kind == Ast::Mul && !e.kids.empty() && e.kids[0]->kind == Ast::Num &&
         e.kids[0]->value < 0;
}

// precedence levels: 0 add / signed, 1 mul, 2 pow operand, 3 atom
int precOf(const Ast& e) {
  switch (e.kind) {
    case Ast::Add: return 0;
    case Ast::Mul: return leadNeg(e) ? 0 : 1;
    case Ast::Pow: return 2;
    case Ast::Num: return e.value < 0 ? 0 : (denOf(e.value) != 1 ? 1 : 3);
    default: return 3;
  }
}

void printNode(std::ostringstream& o, const Ast& e);

void printChild(std::ostringstream& o, const Ast& e, int minPrec) {
  if (precOf(e) < minPrec) {
    o << "(";
    printNode(o, e);
    o << ")";
  } else {
    printNode(o, e);
  }
}

// split a leading negative scalar so terms print as a - b, -a*b
bool negSplit(const Ast& e, Ast& out) {
  if (e.kind == Ast::Num && e.value < 0) {
    out = e;
    out.value = -out.value;
    return true;
  }
  if (e.kind == Ast::Mul && !e.kids.empty() && e.kids[0]->kind == Ast::Num &&
      e.kids[0]->value < 0) {
    out = e;
    if (e.kids[0]->value == -1 && e.kids.size() > 1) {
      out.kids.erase(out.kids.begin());
      if (out.kids.size() == 1) out = *out.kids[0];
    } else {
      auto h = std::make_shared<Ast>(*e.kids[0]);
      h->value = -h->value;
      out.kids[0] = h;
    }
    // a doubly-signed product reprints verbatim instead
    if (leadNeg(out)) return false;
    return true;
  }
  return false;
}

void printNode(std::ostringstream& o, const Ast& e) {
  switch (e.kind) {
    case Ast::Num: o << e.value.get_str(); return;
    case Ast::Var: o << symName(e.var); return;
    case Ast::Pi: o << "Pi"; return;
    case Ast::EulerGamma: o << "EulerGamma"; return;
    case Ast::Infinity: o << "Infinity"; return;
    case Ast::Zeta: o << "Zeta[" << e.k << "]"; return;
    case Ast::Add: {
      for (size_t i = 0; i < e.kids.size(); ++i) {
        Ast pos;
        bool neg = negSplit(*e.kids[i], pos);
        if (i) o << (neg ? " - " : " + ");
        else if (neg) o << "-";
        printChild(o, neg ? pos : *e.kids[i], 1);
      }
      return;
    }
    case Ast::Mul: {
      Ast pos;
      if (negSplit(e, pos)) {
        o << "-";
        if (pos.kind == Ast::Mul) {
          for (size_t i = 0; i < pos.kids.size(); ++i) {
            if (i) o << "*";
            printChild(o, *pos.kids[i], 2);
          }
        } else {
          printChild(o, pos, 2);
        }
        return;
      }
      for (size_t i = 0; i < e.kids.size(); ++i) {
        if (i) o << "*";
        printChild(o, *e.kids[i], 2);
      }
      return;
    }
    case Ast::Pow: {
      printChild(o, *e.kids[0], 3);
      o << "^";
      const Ast& ex = *e.kids[1];
      if (ex.kind == Ast::Num && isInt(ex.value) && ex.value >= 0) {
        o << ex.value.get_str();
      } else {
        o << "(";
        printNode(o, ex);
        o << ")";
      }
      return;
    }
    case Ast::Gamma:
    case Ast::Factorial:
    case Ast::Sign: {
      o << (e.kind == Ast::Gamma ? "Gamma" : e.kind == Ast::Factorial ? "Factorial" : "Sign");
      o << "(";
      printNode(o, *e.kids[0]);
      o << ")";
      return;
    }
    case Ast::Binomial:
    case Ast::Pochhammer: {
      o << (e.kind == Ast::Binomial ? "Binomial" : "Pochhammer") << "(";
      printNode(o, *e.kids[0]);
      o << ", ";
      printNode(o, *e.kids[1]);
      o << ")";
      return;
    }
    case Ast::ExpGammaEps: o << "ExpGammaEps(" << e.value.get_str() << ")"; return;
    case Ast::HarmS: {
      o << "S[";
      for (size_t i = 0; i < e.word.size(); ++i) o << (i ? "," : "") << e.word[i];
      o << "; ";
      printNode(o, *e.kids[0]);
      o << "]";
      return;
    }
    case Ast::CycS: {
      o << "S[";
      for (size_t i = 0; i < e.abc.size(); ++i)
        o << (i ? "," : "") << "(" << e.abc[i][0] << "," << e.abc[i][1] << "," << e.abc[i][2]
          << ")";
      o << "; ";
      for (size_t i = 0; i < e.xs.size(); ++i) o << (i ? "," : "") << e.xs[i].get_str();
      o << "; ";
      printNode(o, *e.kids[0]);
      o << "]";
      return;
    }
    case Ast::Sum: {
      o << "Sum(" << symName(e.var) << ", ";
      printNode(o, *e.kids[0]);
      o << ", ";
      printNode(o, *e.kids[1]);
      o << ", ";
      printNode(o, *e.kids[2]);
      o << ")";
      return;
    }
  }
}

// ---------------------------------------------------------------- JSON

using nlohmann::json;

const char* kindName(SymKind k) {
  switch (k) {
    case SymKind::Outer: return "outer";
    case SymKind::Recursion: return "recursion";
    case SymKind::Index: return "index";
    case SymKind::Layer: return "layer";
    case SymKind::Eps: return "eps";
  }
  return "outer";
}

SymKind kindOf(const std::string& s) {
  if (s == "outer") return SymKind::Outer;
  if (s == "recursion") return SymKind::Recursion;
  if (s == "index") return SymKind::Index;
  if (s == "layer") return SymKind::Layer;
  if (s == "eps") return SymKind::Eps;
  fail(ErrCode::Parse, "unknown symbol kind '" + s + "'");
}

json jsonOf(const Ast& e) {
  json j;
  switch (e.kind) {
    case Ast::Num: j = {{"node", "Num"}, {"value", e.value.get_str()}}; break;
    case Ast::Var:
      j = {{"node", "Symbol"}, {"name", symName(e.var)}, {"kind", kindName(symKind(e.var))}};
      break;
    case Ast::Pi: j = {{"node", "Pi"}}; break;
    case Ast::EulerGamma: j = {{"node", "EulerGamma"}}; break;
    case Ast::Infinity: j = {{"node", "Infinity"}}; break;
    case Ast::Zeta: j = {{"node", "Zeta"}, {"k", e.k}}; break;
    case Ast::Add:
    case Ast::Mul: {
      j["node"] = e.kind == Ast::Add ? "Add" : "Mul";
      for (auto& c : e.kids) j["args"].push_back(jsonOf(*c));
      break;
    }
    case Ast::Pow: j = {{"node", "Pow"}, {"base", jsonOf(*e.kids[0])}, {"exp", jsonOf(*e.kids[1])}}; break;
    case Ast::Gamma: j = {{"node", "Gamma"}, {"arg", jsonOf(*e.kids[0])}}; break;
    case Ast::Factorial: j = {{"node", "Factorial"}, {"arg", jsonOf(*e.kids[0])}}; break;
    case Ast::Sign: j = {{"node", "Sign"}, {"arg", jsonOf(*e.kids[0])}}; break;
    case Ast::Binomial:
      j = {{"node", "Binomial"}, {"top", jsonOf(*e.kids[0])}, {"bot", jsonOf(*e.kids[1])}};
      break;
    case Ast::Pochhammer:
      j = {{"node", "Pochhammer"}, {"base", jsonOf(*e.kids[0])}, {"count", jsonOf(*e.kids[1])}};
      break;
    case Ast::ExpGammaEps: j = {{"node", "ExpGammaEps"}, {"r", e.value.get_str()}}; break;
    case Ast::HarmS: {
      j["node"] = "HarmonicSum";
      j["word"] = e.word;
      j["arg"] = jsonOf(*e.kids[0]);
      break;
    }
    case Ast::CycS: {
      j["node"] = "CyclotomicSum";
      for (auto& t : e.abc) j["layers"].push_back({t[0], t[1], t[2]});
      for (auto& x : e.xs) j["weights"].push_back(x.get_str());
      j["arg"] = jsonOf(*e.kids[0]);
      break;
    }
    case Ast::Sum:
      j = {{"node", "Sum"},
           {"index", symName(e.var)},
           {"lower", jsonOf(*e.kids[0])},
           {"upper", jsonOf(*e.kids[1])},
           {"body", jsonOf(*e.kids[2])}};
      break;
  }
  return j;
}

AstP astOf(const json& j) {
  if (!j.is_object() || !j.contains("node") || !j["node"].is_string())
    fail(ErrCode::Parse, "JSON AST node must be an object with a 'node' tag");
  std::string n = j["node"].get<std::string>();
  auto need = [&](const char* f) -> const json& {
    if (!j.contains(f))
      fail(ErrCode::Parse, "JSON node '" + n + "' is missing field '" + f + "'");
    return j[f];
  };
  if (n == "Num") return Ast::num(parseRat(need("value").get<std::string>()));
  if (n == "Symbol") {
    std::string name = need("name").get<std::string>();
    SymKind k = kindOf(need("kind").get<std::string>());
    if (k == SymKind::Eps) return Ast::sym(symEps());
    return Ast::sym(SymTab::inst().intern(name, k));
  }
  if (n == "Pi") return Ast::constant(Ast::Pi);
  if (n == "EulerGamma") return Ast::constant(Ast::EulerGamma);
  if (n == "Infinity") return Ast::constant(Ast::Infinity);
  if (n == "Zeta") {
    int k = need("k").get<int>();
    if (k < 2) fail(ErrCode::Parse, "Zeta[k] needs k >= 2");
    return Ast::constant(Ast::Zeta, k);
  }
  if (n == "Add" || n == "Mul") {
    std::vector<AstP> kids;
    for (auto& c : need("args")) kids.push_back(astOf(c));
    if (kids.size() < 2) fail(ErrCode::Parse, n + " needs at least two operands");
    return Ast::nary(n == "Add" ? Ast::Add : Ast::Mul, std::move(kids));
  }
  if (n == "Pow") return Ast::pow(astOf(need("base")), astOf(need("exp")));
  if (n == "Gamma") return Ast::call(Ast::Gamma, {astOf(need("arg"))});
  if (n == "Factorial") return Ast::call(Ast::Factorial, {astOf(need("arg"))});
  if (n == "Sign") return Ast::call(Ast::Sign, {astOf(need("arg"))});
  if (n == "Binomial") return Ast::call(Ast::Binomial, {astOf(need("top")), astOf(need("bot"))});
  if (n == "Pochhammer")
    return Ast::call(Ast::Pochhammer, {astOf(need("base")), astOf(need("count"))});
  if (n == "ExpGammaEps") return Ast::expGammaEps(parseRat(need("r").get<std::string>()));
  if (n == "HarmonicSum") {
    std::vector<int> w = need("word").get<std::vector<int>>();
    for (int c : w)
      if (c == 0) fail(ErrCode::Parse, "harmonic index 0 is not allowed");
    return Ast::harm(std::move(w), astOf(need("arg")));
  }
  if (n == "CyclotomicSum") {
    std::vector<std::array<long, 3>> abc;
    for (auto& t : need("layers")) {
      if (!t.is_array() || t.size() != 3) fail(ErrCode::Parse, "cyclotomic layer needs [a,b,c]");
      abc.push_back({t[0].get<long>(), t[1].get<long>(), t[2].get<long>()});
    }
    std::vector<Rat> xs;
    for (auto& x : need("weights")) xs.push_back(parseRat(x.get<std::string>()));
    return Ast::cyc(std::move(abc), std::move(xs), astOf(need("arg")));
  }
  if (n == "Sum") {
    std::string name = need("index").get<std::string>();
    Sym idx = SymTab::inst().intern(name, SymKind::Index);
    return Ast::sum(idx, astOf(need("lower")), astOf(need("upper")), astOf(need("body")));
  }
  fail(ErrCode::Parse, "unknown JSON AST node '" + n + "'");
}

}  // namespace

AstP parseExpr(const std::string& text) { return Parser(text).parse(); }

std::string printExpr(const AstP& e) {
  std::ostringstream o;
  printNode(o, *e);
  return o.str();
}

std::string toJson(const AstP& e, bool pretty) {
  json j = jsonOf(*e);
  return pretty ? j.dump(2) : j.dump();
}

AstP fromJson(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrCode::Parse, "malformed JSON");
  return astOf(j);
}

}  // namespace epsum
