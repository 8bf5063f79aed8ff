#pragma once

// Guarded normal form of LTL formulas and tail closures.
//
// gnf(b) rewrites b as  OR_mask (minterm_mask & X tail[mask])  where the masks
// range over the 2^L valuations of b's atoms. The guards are always the full
// minterm system, so tails can be indexed by the letter read at the current
// position; this is what drives the stepwise preference updates.

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "atlscpref/formula.hpp"

namespace atlscpref {

class GnfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Gnf {
  std::vector<std::string> atoms;  // sorted; guard masks index into this
  std::vector<Formula> tails;      // size 1 << atoms.size(), normalized

  Formula guard(size_t mask) const {
    std::vector<Formula> lits;
    for (size_t i = 0; i < atoms.size(); ++i) {
      Formula a = mk::atom(atoms[i]);
      lits.push_back(mask >> i & 1 ? a : mk::not_(a));
    }
    return mk::and_n(lits);
  }

  size_t mask_of(std::set<std::string> const& valuation) const {
    size_t m = 0;
    for (size_t i = 0; i < atoms.size(); ++i)
      if (valuation.count(atoms[i])) m |= size_t{1} << i;
    return m;
  }

  Formula tail_for(std::set<std::string> const& valuation) const {
    return tails[mask_of(valuation)];
  }
};

// ---------------------------------------------------------------------------
// Canonical form for LTL formulas: temporal nodes are canonicalized bottom-up
// and every boolean skeleton is rebuilt as a Shannon normal form over its
// (id-ordered) non-boolean leaves. Equivalent boolean combinations of the
// same leaves become identical nodes, which keeps tail closures small.

namespace detail {

inline void bool_leaves(Formula f, std::vector<Formula>& out, std::set<int>& seen) {
  if (f->op == Op::Implies) {
    bool_leaves(f->lhs, out, seen);
    bool_leaves(f->rhs, out, seen);
  } else if (f->op != Op::Bot) {
    if (seen.insert(f->id).second) out.push_back(f);
  }
}

inline bool bool_eval(Formula f, std::map<int, bool> const& env) {
  if (f->op == Op::Bot) return false;
  if (f->op == Op::Implies) return !bool_eval(f->lhs, env) || bool_eval(f->rhs, env);
  return env.at(f->id);
}

// table segment [lo, lo+2^k) over leaves[0..k): bit i of the offset is the
// value of leaves[i]
inline Formula shannon(std::vector<Formula> const& leaves, std::vector<bool> const& table,
                       size_t lo, size_t k) {
  if (k == 0) return table[lo] ? mk::top() : mk::bot();
  size_t half = size_t{1} << (k - 1);
  // cofactors on the highest-indexed leaf of this segment
  Formula f0 = shannon(leaves, table, lo, k - 1);
  Formula f1 = shannon(leaves, table, lo + half, k - 1);
  if (f0 == f1) return f0;
  Formula v = leaves[k - 1];
  bool t1 = is_top(f1), b1 = f1->op == Op::Bot;
  bool t0 = is_top(f0), b0 = f0->op == Op::Bot;
  if (t1 && b0) return v;
  if (b1 && t0) return mk::not_(v);
  if (t1) return mk::or_(v, f0);
  if (b1) return mk::and_(mk::not_(v), f0);
  if (t0) return mk::or_(mk::not_(v), f1);
  if (b0) return mk::and_(v, f1);
  return mk::or_(mk::and_(v, f1), mk::and_(mk::not_(v), f0));
}

inline Formula ltl_canonical_rec(Formula f, std::unordered_map<int, Formula>& memo) {
  auto it = memo.find(f->id);
  if (it != memo.end()) return it->second;
  Formula r;
  switch (f->op) {
    case Op::Bot:
    case Op::Atom:
      r = f;
      break;
    case Op::Next: {
      Formula c = ltl_canonical_rec(f->lhs, memo);
      r = (c->op == Op::Bot || is_top(c)) ? c : mk::next(c);  // serial models
      break;
    }
    case Op::Until: {
      Formula l = ltl_canonical_rec(f->lhs, memo);
      Formula c = ltl_canonical_rec(f->rhs, memo);
      if (c->op == Op::Bot || is_top(c) || l == c || l->op == Op::Bot)
        r = c;
      else
        r = mk::until(l, c);
      break;
    }
    case Op::Implies: {
      Formula skel = mk::implies(ltl_canonical_rec(f->lhs, memo),
                                 ltl_canonical_rec(f->rhs, memo));
      std::vector<Formula> leaves;
      std::set<int> seen;
      bool_leaves(skel, leaves, seen);
      if (leaves.size() > 14) {
        r = normalize(skel);  // too wide for a truth table; keep NNF shape
        break;
      }
      std::sort(leaves.begin(), leaves.end(),
                [](Formula a, Formula b) { return a->id < b->id; });
      size_t n = size_t{1} << leaves.size();
      std::vector<bool> table(n);
      std::map<int, bool> env;
      for (size_t m = 0; m < n; ++m) {
        for (size_t i = 0; i < leaves.size(); ++i) env[leaves[i]->id] = (m >> i) & 1;
        table[m] = bool_eval(skel, env);
      }
      r = shannon(leaves, table, 0, leaves.size());
      break;
    }
    default:
      throw GnfError("canonical form is defined for LTL formulas only");
  }
  memo[f->id] = r;
  return r;
}

}  // namespace detail

inline Formula ltl_canonical(Formula f) {
  static std::mutex mu;
  static std::unordered_map<int, Formula> memo;
  std::lock_guard<std::mutex> lock(mu);
  return detail::ltl_canonical_rec(f, memo);
}

namespace detail {

inline Formula gnf_tail(Formula f, size_t mask,
                        std::unordered_map<std::string, size_t> const& atom_ix,
                        std::unordered_map<int, Formula>& memo) {
  auto it = memo.find(f->id);
  if (it != memo.end()) return it->second;
  Formula r;
  switch (f->op) {
    case Op::Bot:
      r = mk::bot();
      break;
    case Op::Atom:
      r = (mask >> atom_ix.at(f->name)) & 1 ? mk::top() : mk::bot();
      break;
    case Op::Implies:
      r = mk::implies(gnf_tail(f->lhs, mask, atom_ix, memo),
                      gnf_tail(f->rhs, mask, atom_ix, memo));
      break;
    case Op::Next:
      r = f->lhs;
      break;
    case Op::Until:
      // fixpoint expansion: b1 U b2 = b2 | (b1 & X(b1 U b2))
      r = mk::or_(gnf_tail(f->rhs, mask, atom_ix, memo),
                  mk::and_(gnf_tail(f->lhs, mask, atom_ix, memo), f));
      break;
    default:
      throw GnfError("guarded normal form is defined for LTL formulas only");
  }
  memo[f->id] = r;
  return r;
}

}  // namespace detail

inline Gnf gnf(Formula b) {
  if (!is_ltl(b)) throw GnfError("guarded normal form is defined for LTL formulas only");
  Gnf g;
  auto atoms = atoms_of(b);
  g.atoms.assign(atoms.begin(), atoms.end());
  if (g.atoms.size() > 16) throw GnfError("too many atoms for minterm guards");
  std::unordered_map<std::string, size_t> ix;
  for (size_t i = 0; i < g.atoms.size(); ++i) ix[g.atoms[i]] = i;
  size_t count = size_t{1} << g.atoms.size();
  g.tails.reserve(count);
  for (size_t mask = 0; mask < count; ++mask) {
    std::unordered_map<int, Formula> memo;
    g.tails.push_back(ltl_canonical(detail::gnf_tail(b, mask, ix, memo)));
  }
  return g;
}

inline Formula gnf_as_formula(Gnf const& g) {
  std::vector<Formula> disjuncts;
  for (size_t mask = 0; mask < g.tails.size(); ++mask)
    disjuncts.push_back(mk::and_(g.guard(mask), mk::next(g.tails[mask])));
  return mk::or_n(disjuncts);
}

// Tail closure: the least set containing normalize(b) and closed under taking
// GNF tails. Finite because tails never gain modal depth; the cap guards
// against normalization bugs.
inline std::vector<Formula> closure(Formula b, size_t cap = 4096) {
  if (!is_ltl(b)) throw GnfError("closure is defined for LTL formulas only");
  std::vector<Formula> members;
  std::set<int> seen;
  members.push_back(ltl_canonical(b));
  seen.insert(members[0]->id);
  for (size_t k = 0; k < members.size(); ++k) {
    Gnf g = gnf(members[k]);
    for (Formula t : g.tails) {
      if (seen.insert(t->id).second) {
        members.push_back(t);
        if (members.size() > cap) throw GnfError("closure exceeded cap");
      }
    }
  }
  return members;
}

// Closure of one objective with per-member GNFs and a member index, the shape
// every preference construction consumes.
struct ClosureTable {
  std::vector<Formula> members;
  std::vector<Gnf> gnfs;
  std::map<int, int> index;  // formula id -> member position

  int index_of(Formula f) const {
    auto it = index.find(f->id);
    if (it == index.end()) throw GnfError("formula is not a closure member: tails not closed");
    return it->second;
  }

  // member reached from `member` when the next state carries `valuation`
  int step(int member, std::set<std::string> const& valuation) const {
    return index_of(gnfs[static_cast<size_t>(member)].tail_for(valuation));
  }
};

inline ClosureTable make_closure_table(Formula objective) {
  ClosureTable t;
  t.members = closure(objective);
  for (size_t i = 0; i < t.members.size(); ++i) {
    t.gnfs.push_back(gnf(t.members[i]));
    t.index[t.members[i]->id] = static_cast<int>(i);
  }
  return t;
}

}  // namespace atlscpref
