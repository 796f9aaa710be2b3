#pragma once
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "epsum/error.hpp"

namespace epsum {

// Term-order significance runs Outer > Recursion > Index > Layer > Eps;
// within a kind, earlier interning = more significant (summation indices are
// interned outermost-first, so inner indices compare last).
enum class SymKind : uint8_t { Outer = 0, Recursion, Index, Layer, Eps };

struct Sym {
  int32_t id = -1;
  bool operator==(const Sym& o) const { return id == o.id; }
  bool operator!=(const Sym& o) const { return id != o.id; }
  bool operator<(const Sym& o) const { return id < o.id; }
  bool valid() const { return id >= 0; }
};

class SymTab {
public:
  static SymTab& inst() {
    static SymTab t;
    return t;
  }

  Sym intern(const std::string& name, SymKind kind) {
    std::lock_guard<std::mutex> g(mu_);
    auto it = byName_.find(name);
    if (it != byName_.end()) {
      Entry& e = rows_[it->second];
      if (e.kind != kind)
        fail(ErrCode::Domain, "symbol '" + name + "' already declared with a different role");
      return Sym{it->second};
    }
    int32_t id = (int32_t)rows_.size();
    int32_t seq = kindCount_[(int)kind]++;
    rows_.push_back(Entry{name, kind, ((int32_t)kind << 20) | seq});
    byName_[name] = id;
    return Sym{id};
  }

  bool known(const std::string& name) const {
    std::lock_guard<std::mutex> g(mu_);
    return byName_.count(name) != 0;
  }

  Sym lookup(const std::string& name) const {
    std::lock_guard<std::mutex> g(mu_);
    auto it = byName_.find(name);
    if (it == byName_.end()) fail(ErrCode::Domain, "unknown symbol '" + name + "'");
    return Sym{it->second};
  }

  const std::string& name(Sym s) const { return rows_.at(s.id).name; }
  SymKind kind(Sym s) const { return rows_.at(s.id).kind; }
  // lower rank = more significant in the term order
  int32_t rank(Sym s) const { return rows_.at(s.id).rank; }

  Sym eps() { return intern("eps", SymKind::Eps); }
  // canonical bound variable for nested-sum layer `depth` (1-based)
  Sym layerVar(int depth) { return intern("#" + std::to_string(depth), SymKind::Layer); }

private:
  struct Entry {
    std::string name;
    SymKind kind;
    int32_t rank;
  };
  mutable std::mutex mu_;
  std::vector<Entry> rows_;
  std::map<std::string, int32_t> byName_;
  int32_t kindCount_[5] = {0, 0, 0, 0, 0};
};

inline const std::string& symName(Sym s) { return SymTab::inst().name(s); }
inline SymKind symKind(Sym s) { return SymTab::inst().kind(s); }
inline int32_t symRank(Sym s) { return SymTab::inst().rank(s); }
inline Sym symEps() { return SymTab::inst().eps(); }

// significance order: a before b if a is more significant
inline bool symBefore(Sym a, Sym b) {
  int32_t ra = symRank(a), rb = symRank(b);
  return ra != rb ? ra < rb : a.id < b.id;
}

}  // namespace epsum
