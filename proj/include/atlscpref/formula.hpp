#pragma once

// Unified formula AST for the LTL / CTL* / QCTL* / ATLSC* pipeline.
// Nodes are interned: structural equality is pointer equality, and every
// node carries a stable id usable as a map key.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace atlscpref {

enum class Op : uint8_t {
  Bot,         // false
  Atom,        // propositional atom
  PathAtom,    // path variable ~v
  Implies,     // lhs -> rhs
  ExistsPath,  // E B
  ExistsProp,  // exists p . A
  Next,        // X B
  Until,       // B U B
  StratMod,    // <<G>> B
  Relax,       // ]G[ A
  Pref,        // B <v[i] B
  SimQuant,    // Es[i] ~v . A
  OneQuant,    // E1[i] ~v . A
};

enum class PrefVariant : uint8_t { FF, EA, AE, EE, GEA, GAE };

enum class Level : uint8_t { State, Path };

struct Node;
using Formula = Node const*;

struct Node {
  Op op;
  PrefVariant variant = PrefVariant::FF;
  int agent = 0;               // Pref, SimQuant, OneQuant
  std::string name;            // Atom, PathAtom, ExistsProp, SimQuant, OneQuant
  std::vector<int> coalition;  // StratMod, Relax (sorted, deduped)
  Formula lhs = nullptr;
  Formula rhs = nullptr;
  bool state_level = false;
  int id = -1;
  size_t hash = 0;
};

class BuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct NodeKey {
  Op op;
  PrefVariant variant;
  int agent;
  std::string_view name;
  std::vector<int> const* coalition;
  Formula lhs;
  Formula rhs;
};

inline size_t key_hash(NodeKey const& k) {
  size_t h = static_cast<size_t>(k.op) * 0x9e3779b97f4a7c15ull;
  h ^= static_cast<size_t>(k.variant) + 0x517cc1b727220a95ull + (h << 6) + (h >> 2);
  h ^= std::hash<int>()(k.agent) + (h << 6) + (h >> 2);
  h ^= std::hash<std::string_view>()(k.name) + (h << 6) + (h >> 2);
  if (k.coalition)
    for (int a : *k.coalition) h ^= std::hash<int>()(a * 131 + 7) + (h << 6) + (h >> 2);
  h ^= std::hash<void const*>()(k.lhs) + (h << 6) + (h >> 2);
  h ^= std::hash<void const*>()(k.rhs) + (h << 6) + (h >> 2);
  return h;
}

inline bool key_equal(NodeKey const& a, Node const& b) {
  if (a.op != b.op || a.variant != b.variant || a.agent != b.agent || a.lhs != b.lhs ||
      a.rhs != b.rhs || a.name != b.name)
    return false;
  if (a.coalition == nullptr) return b.coalition.empty();
  return *a.coalition == b.coalition;
}

class Interner {
 public:
  static Interner& instance() {
    static Interner table;
    return table;
  }

  Formula intern(Op op, PrefVariant variant, int agent, std::string name,
                 std::vector<int> coalition, Formula lhs, Formula rhs, bool state_level) {
    NodeKey key{op, variant, agent, name, &coalition, lhs, rhs};
    size_t h = key_hash(key);
    std::lock_guard<std::mutex> lock(mu_);
    auto range = pool_.equal_range(h);
    for (auto it = range.first; it != range.second; ++it)
      if (key_equal(key, *it->second)) return it->second;
    nodes_.emplace_back();
    Node& n = nodes_.back();
    n.op = op;
    n.variant = variant;
    n.agent = agent;
    n.name = std::move(name);
    n.coalition = std::move(coalition);
    n.lhs = lhs;
    n.rhs = rhs;
    n.state_level = state_level;
    n.id = next_id_++;
    n.hash = h;
    pool_.emplace(h, &n);
    return &n;
  }

 private:
  std::mutex mu_;
  std::deque<Node> nodes_;
  std::unordered_multimap<size_t, Node*> pool_;
  int next_id_ = 0;
};

}  // namespace detail

inline Level classify(Formula f) { return f->state_level ? Level::State : Level::Path; }

// ---------------------------------------------------------------------------
// Core constructors. Sugar lowers to the core connectives right here, so every
// Formula in the system is already in core form.

namespace mk {

inline Formula make(Op op, PrefVariant v, int agent, std::string name,
                    std::vector<int> coalition, Formula lhs, Formula rhs, bool state) {
  return detail::Interner::instance().intern(op, v, agent, std::move(name),
                                             std::move(coalition), lhs, rhs, state);
}

inline Formula bot() { return make(Op::Bot, PrefVariant::FF, 0, {}, {}, nullptr, nullptr, true); }

inline Formula atom(std::string name) {
  return make(Op::Atom, PrefVariant::FF, 0, std::move(name), {}, nullptr, nullptr, true);
}

inline Formula path_atom(std::string name) {
  return make(Op::PathAtom, PrefVariant::FF, 0, std::move(name), {}, nullptr, nullptr, false);
}

inline Formula implies(Formula a, Formula b) {
  bool state = a->state_level && b->state_level;
  return make(Op::Implies, PrefVariant::FF, 0, {}, {}, a, b, state);
}

inline Formula exists_path(Formula b) {
  return make(Op::ExistsPath, PrefVariant::FF, 0, {}, {}, b, nullptr, true);
}

inline Formula exists_prop(std::string name, Formula a) {
  if (!a->state_level)
    throw BuildError("exists " + name + ": propositional quantifier needs a state formula");
  return make(Op::ExistsProp, PrefVariant::FF, 0, std::move(name), {}, a, nullptr, true);
}

inline Formula next(Formula b) {
  return make(Op::Next, PrefVariant::FF, 0, {}, {}, b, nullptr, false);
}

inline Formula until(Formula a, Formula b) {
  return make(Op::Until, PrefVariant::FF, 0, {}, {}, a, b, false);
}

inline std::vector<int> norm_coalition(std::vector<int> g) {
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

inline Formula strat_mod(std::vector<int> coalition, Formula b) {
  return make(Op::StratMod, PrefVariant::FF, 0, {}, norm_coalition(std::move(coalition)), b,
              nullptr, true);
}

inline Formula relax(std::vector<int> coalition, Formula a) {
  if (!a->state_level) throw BuildError("]G[ needs a state formula operand");
  return make(Op::Relax, PrefVariant::FF, 0, {}, norm_coalition(std::move(coalition)), a, nullptr,
              true);
}

inline Formula pref(PrefVariant v, int agent, Formula a, Formula b) {
  return make(Op::Pref, v, agent, {}, {}, a, b, true);
}

inline Formula sim_quant(int agent, std::string var, Formula a) {
  if (!a->state_level) throw BuildError("Es[" + std::to_string(agent) + "] needs a state formula");
  return make(Op::SimQuant, PrefVariant::FF, agent, std::move(var), {}, a, nullptr, true);
}

inline Formula one_quant(int agent, std::string var, Formula a) {
  if (!a->state_level) throw BuildError("E1[" + std::to_string(agent) + "] needs a state formula");
  return make(Op::OneQuant, PrefVariant::FF, agent, std::move(var), {}, a, nullptr, true);
}

// Derived connectives, lowered on construction.

inline Formula top() { return implies(bot(), bot()); }
inline Formula not_(Formula a) { return implies(a, bot()); }
inline Formula or_(Formula a, Formula b) { return implies(not_(a), b); }
inline Formula and_(Formula a, Formula b) { return not_(implies(a, not_(b))); }
inline Formula iff(Formula a, Formula b) { return and_(implies(a, b), implies(b, a)); }

inline Formula or_n(std::vector<Formula> const& fs) {
  if (fs.empty()) return bot();
  Formula r = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;) r = or_(fs[i], r);
  return r;
}

inline Formula and_n(std::vector<Formula> const& fs) {
  if (fs.empty()) return top();
  Formula r = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;) r = and_(fs[i], r);
  return r;
}

inline Formula finally_(Formula b) { return until(top(), b); }
inline Formula globally(Formula b) { return not_(finally_(not_(b))); }
inline Formula weak_until(Formula a, Formula b) { return or_(until(a, b), globally(a)); }
inline Formula forall_path(Formula b) { return not_(exists_path(not_(b))); }
inline Formula forall_prop(std::string name, Formula a) {
  return not_(exists_prop(std::move(name), not_(a)));
}
inline Formula strat_dual(std::vector<int> g, Formula b) {
  return not_(strat_mod(std::move(g), not_(b)));
}
inline Formula forall_sim(int agent, std::string var, Formula a) {
  return not_(sim_quant(agent, std::move(var), not_(a)));
}

}  // namespace mk

// The parser emits core nodes directly, so desugaring is the identity on
// anything the toolkit produces. Kept as the named pipeline operation.
inline Formula desugar(Formula f) { return f; }

// ---------------------------------------------------------------------------
// Pattern views over the core encodings, shared by the printer and normalizer.

inline bool is_top(Formula f) {
  return f->op == Op::Implies && f->lhs->op == Op::Bot && f->rhs->op == Op::Bot;
}
inline bool is_not(Formula f) { return f->op == Op::Implies && f->rhs->op == Op::Bot && !is_top(f); }

// a & b  ==  ((a -> (b -> false)) -> false)
inline bool match_and(Formula f, Formula& a, Formula& b) {
  if (f->op != Op::Implies || f->rhs->op != Op::Bot) return false;
  Formula x = f->lhs;
  if (x->op != Op::Implies || x->rhs->op != Op::Implies || x->rhs->rhs->op != Op::Bot) return false;
  a = x->lhs;
  b = x->rhs->lhs;
  return true;
}

// a | b  ==  ((a -> false) -> b). Implications ending in false always read as
// negations (or conjunctions), never as disjunctions, so that each node has a
// single canonical decomposition.
inline bool match_or(Formula f, Formula& a, Formula& b) {
  if (f->op != Op::Implies || f->lhs->op != Op::Implies || f->lhs->rhs->op != Op::Bot) return false;
  if (is_top(f->lhs)) return false;  // that one reads "true -> b"
  if (f->rhs->op == Op::Bot) return false;
  a = f->lhs->lhs;
  b = f->rhs;
  return true;
}

inline bool match_not(Formula f, Formula& a) {
  Formula x, y;
  if (!is_not(f) || match_and(f, x, y)) return false;
  a = f->lhs;
  return true;
}

inline bool is_finally(Formula f) { return f->op == Op::Until && is_top(f->lhs); }

inline bool match_globally(Formula f, Formula& b) {
  Formula inner;
  if (!match_not(f, inner)) return false;
  if (!is_finally(inner)) return false;
  Formula nb;
  if (!match_not(inner->rhs, nb)) return false;
  b = nb;
  return true;
}

inline void flatten_or(Formula f, std::vector<Formula>& out) {
  Formula a, b;
  if (match_or(f, a, b)) {
    flatten_or(a, out);
    flatten_or(b, out);
  } else {
    out.push_back(f);
  }
}

inline void flatten_and(Formula f, std::vector<Formula>& out) {
  Formula a, b;
  if (match_and(f, a, b)) {
    flatten_and(a, out);
    flatten_and(b, out);
  } else {
    out.push_back(f);
  }
}

// ---------------------------------------------------------------------------
// Traversal utilities. All memoize on node ids so shared subtrees cost once.

namespace detail {
template <typename F>
void walk_post(Formula f, std::set<int>& seen, F&& fn) {
  if (!f || !seen.insert(f->id).second) return;
  walk_post(f->lhs, seen, fn);
  walk_post(f->rhs, seen, fn);
  fn(f);
}
}  // namespace detail

template <typename F>
void for_each_node(Formula f, F&& fn) {
  std::set<int> seen;
  detail::walk_post(f, seen, fn);
}

inline bool contains_op(Formula f, Op op) {
  bool found = false;
  for_each_node(f, [&](Formula n) { found |= n->op == op; });
  return found;
}

inline bool is_ltl(Formula f) {
  bool ok = true;
  for_each_node(f, [&](Formula n) {
    switch (n->op) {
      case Op::Bot:
      case Op::Atom:
      case Op::Implies:
      case Op::Next:
      case Op::Until:
        break;
      default:
        ok = false;
    }
  });
  return ok;
}

inline bool is_propositional(Formula f) {
  bool ok = true;
  for_each_node(f, [&](Formula n) {
    if (n->op != Op::Bot && n->op != Op::Atom && n->op != Op::Implies) ok = false;
  });
  return ok;
}

// CTL* proper: no quantifiers, game modalities, preference or path variables.
inline bool is_ctlstar(Formula f) {
  bool ok = true;
  for_each_node(f, [&](Formula n) {
    switch (n->op) {
      case Op::Bot:
      case Op::Atom:
      case Op::Implies:
      case Op::Next:
      case Op::Until:
      case Op::ExistsPath:
        break;
      default:
        ok = false;
    }
  });
  return ok;
}

inline std::set<std::string> atoms_of(Formula f) {
  std::set<std::string> r;
  for_each_node(f, [&](Formula n) {
    if (n->op == Op::Atom) r.insert(n->name);
  });
  return r;
}

inline std::set<int> agents_of(Formula f) {
  std::set<int> r;
  for_each_node(f, [&](Formula n) {
    for (int a : n->coalition) r.insert(a);
    if (n->op == Op::Pref || n->op == Op::SimQuant || n->op == Op::OneQuant) r.insert(n->agent);
  });
  return r;
}

inline std::set<std::string> all_names(Formula f) {
  std::set<std::string> r;
  for_each_node(f, [&](Formula n) {
    if (!n->name.empty()) r.insert(n->name);
  });
  return r;
}

inline void free_path_vars(Formula f, std::set<std::string>& out) {
  switch (f->op) {
    case Op::PathAtom:
      out.insert(f->name);
      return;
    case Op::SimQuant:
    case Op::OneQuant: {
      std::set<std::string> inner;
      free_path_vars(f->lhs, inner);
      inner.erase(f->name);
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      if (f->lhs) free_path_vars(f->lhs, out);
      if (f->rhs) free_path_vars(f->rhs, out);
  }
}

inline std::set<std::string> free_path_vars(Formula f) {
  std::set<std::string> r;
  free_path_vars(f, r);
  return r;
}

inline void free_props(Formula f, std::set<std::string>& out) {
  switch (f->op) {
    case Op::Atom:
      out.insert(f->name);
      return;
    case Op::ExistsProp: {
      std::set<std::string> inner;
      free_props(f->lhs, inner);
      inner.erase(f->name);
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      if (f->lhs) free_props(f->lhs, out);
      if (f->rhs) free_props(f->rhs, out);
  }
}

inline std::set<std::string> free_props(Formula f) {
  std::set<std::string> r;
  free_props(f, r);
  return r;
}

inline int modal_depth(Formula f) {
  std::unordered_map<int, int> memo;
  auto rec = [&](auto&& self, Formula n) -> int {
    if (!n) return 0;
    auto it = memo.find(n->id);
    if (it != memo.end()) return it->second;
    int l = self(self, n->lhs), r = self(self, n->rhs);
    int d = std::max(l, r);
    if (n->op == Op::Next || n->op == Op::Until) d += 1;
    memo[n->id] = d;
    return d;
  };
  return rec(rec, f);
}

inline size_t dag_size(Formula f) {
  size_t n = 0;
  for_each_node(f, [&](Formula) { ++n; });
  return n;
}

// ---------------------------------------------------------------------------
// Fresh variable supply. Every emitted name avoids the reserved set and all
// names handed out before; printed names keep a numeric suffix.

class FreshVarSupply {
 public:
  FreshVarSupply() = default;
  explicit FreshVarSupply(std::set<std::string> reserved) : reserved_(std::move(reserved)) {}

  void reserve(std::string name) { reserved_.insert(std::move(name)); }
  void reserve_all_names(Formula f) {
    auto names = all_names(f);
    reserved_.insert(names.begin(), names.end());
  }
  void reserve_all(std::set<std::string> const& names) {
    reserved_.insert(names.begin(), names.end());
  }

  std::string fresh(std::string const& base) {
    for (;;) {
      std::string cand = base + "_" + std::to_string(++counter_);
      if (reserved_.insert(cand).second) return cand;
    }
  }

 private:
  unsigned counter_ = 0;
  std::set<std::string> reserved_;
};

// ---------------------------------------------------------------------------
// Substitution. Replaces free occurrences only; bound variables that would
// capture a free name of an image are alpha-renamed through the supply.

struct Substitution {
  std::map<std::string, Formula> props;      // atom name -> state formula
  std::map<std::string, Formula> path_vars;  // path var name -> path formula
};

namespace detail {

inline Formula subst_rec(Formula f, Substitution const& s, FreshVarSupply& supply,
                         std::set<std::string> const& image_free) {
  using namespace mk;
  switch (f->op) {
    case Op::Bot:
      return f;
    case Op::Atom: {
      auto it = s.props.find(f->name);
      if (it == s.props.end()) return f;
      if (!it->second->state_level)
        throw BuildError("substitution puts a path formula into atom " + f->name);
      return it->second;
    }
    case Op::PathAtom: {
      auto it = s.path_vars.find(f->name);
      return it == s.path_vars.end() ? f : it->second;
    }
    case Op::Implies:
      return implies(subst_rec(f->lhs, s, supply, image_free),
                     subst_rec(f->rhs, s, supply, image_free));
    case Op::ExistsPath:
      return exists_path(subst_rec(f->lhs, s, supply, image_free));
    case Op::Next:
      return next(subst_rec(f->lhs, s, supply, image_free));
    case Op::Until:
      return until(subst_rec(f->lhs, s, supply, image_free),
                   subst_rec(f->rhs, s, supply, image_free));
    case Op::StratMod:
      return strat_mod(f->coalition, subst_rec(f->lhs, s, supply, image_free));
    case Op::Relax:
      return relax(f->coalition, subst_rec(f->lhs, s, supply, image_free));
    case Op::Pref:
      return pref(f->variant, f->agent, subst_rec(f->lhs, s, supply, image_free),
                  subst_rec(f->rhs, s, supply, image_free));
    case Op::ExistsProp:
    case Op::SimQuant:
    case Op::OneQuant: {
      bool is_prop = f->op == Op::ExistsProp;
      Substitution inner = s;
      if (is_prop)
        inner.props.erase(f->name);
      else
        inner.path_vars.erase(f->name);
      std::string bound = f->name;
      Formula body = f->lhs;
      if (image_free.count(bound)) {
        // would capture: rename the binder first
        std::string renamed = supply.fresh(bound);
        Substitution alpha;
        if (is_prop)
          alpha.props[bound] = atom(renamed);
        else
          alpha.path_vars[bound] = path_atom(renamed);
        FreshVarSupply tmp = supply;
        body = subst_rec(body, alpha, tmp, {});
        bound = renamed;
      }
      Formula nb = subst_rec(body, inner, supply, image_free);
      if (f->op == Op::ExistsProp) return exists_prop(bound, nb);
      if (f->op == Op::SimQuant) return sim_quant(f->agent, bound, nb);
      return one_quant(f->agent, bound, nb);
    }
  }
  throw BuildError("substitute: unhandled node");
}

}  // namespace detail

inline Formula substitute(Formula f, Substitution const& s, FreshVarSupply* supply = nullptr) {
  std::set<std::string> image_free;
  for (auto& [k, v] : s.props) {
    auto fp = free_props(v);
    image_free.insert(fp.begin(), fp.end());
    auto pv = free_path_vars(v);
    image_free.insert(pv.begin(), pv.end());
  }
  for (auto& [k, v] : s.path_vars) {
    auto fp = free_props(v);
    image_free.insert(fp.begin(), fp.end());
    auto pv = free_path_vars(v);
    image_free.insert(pv.begin(), pv.end());
  }
  FreshVarSupply local;
  if (!supply) {
    local.reserve_all_names(f);
    local.reserve_all(image_free);
  }
  return detail::subst_rec(f, s, supply ? *supply : local, image_free);
}

// ---------------------------------------------------------------------------
// Syntactic normalization used for closure bookkeeping and to keep emitted
// formulas small. The boolean skeleton is canonicalized in negation normal
// form (negations pushed to non-boolean leaves, sorted n-ary and/or with unit
// absorption, duplicate and complement elimination); temporal and modal nodes
// are leaves with normalized children plus a few unit laws (X false = false,
// b U false = false, E true = true on serial models, ...).

namespace detail {

struct Nf {
  enum Kind { False, True, Leaf, NotLeaf, And, Or } kind;
  Formula leaf = nullptr;           // Leaf / NotLeaf
  std::vector<Nf> parts;            // And / Or
};

inline Nf nf_neg(Nf n) {
  switch (n.kind) {
    case Nf::False: return {Nf::True, nullptr, {}};
    case Nf::True: return {Nf::False, nullptr, {}};
    case Nf::Leaf: return {Nf::NotLeaf, n.leaf, {}};
    case Nf::NotLeaf: return {Nf::Leaf, n.leaf, {}};
    case Nf::And:
    case Nf::Or: {
      Nf out{n.kind == Nf::And ? Nf::Or : Nf::And, nullptr, {}};
      for (auto& p : n.parts) out.parts.push_back(nf_neg(p));
      return out;
    }
  }
  return n;
}

inline Formula nf_encode(Nf const& n);

inline Nf nf_canon(Nf n) {
  if (n.kind != Nf::And && n.kind != Nf::Or) return n;
  bool conj = n.kind == Nf::And;
  std::vector<Nf> flat;
  auto push = [&](auto&& self, Nf p) -> void {
    if (p.kind == n.kind) {
      for (auto& q : p.parts) self(self, std::move(q));
    } else {
      flat.push_back(std::move(p));
    }
  };
  for (auto& p : n.parts) push(push, std::move(p));

  std::vector<std::pair<Formula, Nf>> keyed;
  std::set<int> seen;
  for (auto& p : flat) {
    if ((conj && p.kind == Nf::True) || (!conj && p.kind == Nf::False)) continue;
    if ((conj && p.kind == Nf::False) || (!conj && p.kind == Nf::True))
      return {conj ? Nf::False : Nf::True, nullptr, {}};
    Formula key = nf_encode(p);
    if (seen.insert(key->id).second) keyed.emplace_back(key, std::move(p));
  }
  for (auto& [key, p] : keyed) {
    Formula nk = nf_encode(nf_neg(p));
    if (seen.count(nk->id)) return {conj ? Nf::False : Nf::True, nullptr, {}};
  }
  if (keyed.empty()) return {conj ? Nf::True : Nf::False, nullptr, {}};
  if (keyed.size() == 1) return std::move(keyed[0].second);
  std::sort(keyed.begin(), keyed.end(),
            [](auto const& a, auto const& b) { return a.first->id < b.first->id; });
  Nf out{n.kind, nullptr, {}};
  for (auto& [key, p] : keyed) out.parts.push_back(std::move(p));
  return out;
}

inline Formula nf_encode(Nf const& n) {
  switch (n.kind) {
    case Nf::False: return mk::bot();
    case Nf::True: return mk::top();
    case Nf::Leaf: return n.leaf;
    case Nf::NotLeaf: return mk::not_(n.leaf);
    case Nf::And:
    case Nf::Or: {
      std::vector<Formula> enc;
      for (auto& p : n.parts) enc.push_back(nf_encode(p));
      return n.kind == Nf::And ? mk::and_n(enc) : mk::or_n(enc);
    }
  }
  return mk::bot();
}

inline Nf nf_decode(Formula f);

inline Nf nf_leafify(Formula f) {
  if (f->op == Op::Bot) return {Nf::False, nullptr, {}};
  if (is_top(f)) return {Nf::True, nullptr, {}};
  if (f->op == Op::Implies) return nf_decode(f);
  return {Nf::Leaf, f, {}};
}

}  // namespace detail

inline Formula normalize(Formula f);

namespace detail {

inline Nf nf_decode(Formula f) {
  Formula a = nullptr, b = nullptr;
  switch (f->op) {
    case Op::Bot:
      return {Nf::False, nullptr, {}};
    case Op::Atom:
    case Op::PathAtom:
      return {Nf::Leaf, f, {}};
    case Op::Implies: {
      if (is_top(f)) return {Nf::True, nullptr, {}};
      if (match_and(f, a, b))
        return nf_canon({Nf::And, nullptr, {nf_decode(normalize(a)), nf_decode(normalize(b))}});
      if (f->rhs->op == Op::Bot) return nf_neg(nf_decode(normalize(f->lhs)));
      Nf l = nf_decode(normalize(f->lhs));
      Nf r = nf_decode(normalize(f->rhs));
      if (match_or(f, a, b)) return nf_canon({Nf::Or, nullptr, {nf_decode(normalize(a)), r}});
      return nf_canon({Nf::Or, nullptr, {nf_neg(std::move(l)), std::move(r)}});
    }
    case Op::Next: {
      Formula l = normalize(f->lhs);
      if (l->op == Op::Bot || is_top(l)) return nf_leafify(l);  // serial models
      return {Nf::Leaf, mk::next(l), {}};
    }
    case Op::Until: {
      Formula l = normalize(f->lhs);
      Formula r = normalize(f->rhs);
      if (r->op == Op::Bot || is_top(r) || l == r || l->op == Op::Bot) return nf_leafify(r);
      return {Nf::Leaf, mk::until(l, r), {}};
    }
    case Op::ExistsPath: {
      Formula l = normalize(f->lhs);
      if (l->op == Op::Bot || is_top(l)) return nf_leafify(l);
      return {Nf::Leaf, mk::exists_path(l), {}};
    }
    case Op::ExistsProp: {
      Formula l = normalize(f->lhs);
      if (l->op == Op::Bot || is_top(l)) return nf_leafify(l);
      return {Nf::Leaf, mk::exists_prop(f->name, l), {}};
    }
    case Op::StratMod:
      return {Nf::Leaf, mk::strat_mod(f->coalition, normalize(f->lhs)), {}};
    case Op::Relax:
      return {Nf::Leaf, mk::relax(f->coalition, normalize(f->lhs)), {}};
    case Op::Pref:
      return {Nf::Leaf, mk::pref(f->variant, f->agent, normalize(f->lhs), normalize(f->rhs)), {}};
    case Op::SimQuant:
      return {Nf::Leaf, mk::sim_quant(f->agent, f->name, normalize(f->lhs)), {}};
    case Op::OneQuant:
      return {Nf::Leaf, mk::one_quant(f->agent, f->name, normalize(f->lhs)), {}};
  }
  return {Nf::Leaf, f, {}};
}

}  // namespace detail

inline Formula normalize(Formula f) {
  static std::mutex mu;
  static std::unordered_map<int, Formula> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(f->id);
    if (it != memo.end()) return it->second;
  }
  Formula result = detail::nf_encode(detail::nf_decode(f));
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(f->id, result);
  memo.emplace(result->id, result);
  return result;
}

}  // namespace atlscpref
