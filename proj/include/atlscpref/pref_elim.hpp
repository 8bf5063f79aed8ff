#pragma once

// Preference-operator elimination.
//
// Derived variants expand into the <ff scheme over the current objective
// list; <ff over a full system B_1..B_K with pair set P rewrites to
//
//   AND_{(k1,k2) not in P}  !( E X (B' & B_k1)  &  E X (B'' & B_k2) )
//
// Current objective lists are selected by q-label guards, or collapse to the
// initial list when the occurrence is evaluated at the initial state only.
// Output modes: q-quantified (with the labeling formula L), log-encoded
// r-variables, or the bare rewrite aimed at the q-labeled product model.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "atlscpref/ctlstar.hpp"
#include "atlscpref/model.hpp"

namespace atlscpref {

enum class PrefElimMode { QVars, LogVars, ForMB };

// q_{B,k} as a formula: a plain atom, or the elementary conjunction over the
// slot's independent r-variables encoding the member index.
inline Formula q_label(AgentPrefVocab const& av, int slot, int member, bool log_mode) {
  SlotNaming const& names = av.naming[static_cast<size_t>(slot)];
  if (!log_mode) return mk::atom(names.q_names[static_cast<size_t>(member)]);
  std::vector<Formula> lits;
  for (size_t s = 0; s < names.r_names.size(); ++s) {
    Formula r = mk::atom(names.r_names[s]);
    lits.push_back(member >> s & 1 ? r : mk::not_(r));
  }
  return mk::and_n(lits);
}

// (B' < B'')_{B_1..B_K, P}
inline Formula elim_pref_at(Formula b1, Formula b2, std::vector<Formula> const& objectives,
                            std::set<std::pair<int, int>> const& p_pairs) {
  int K = static_cast<int>(objectives.size());
  std::vector<Formula> conjuncts;
  for (int k1 = 1; k1 <= K; ++k1)
    for (int k2 = 1; k2 <= K; ++k2) {
      if (p_pairs.count({k1, k2})) continue;
      Formula w1 = mk::exists_path(mk::next(mk::and_(b1, objectives[static_cast<size_t>(k1 - 1)])));
      Formula w2 = mk::exists_path(mk::next(mk::and_(b2, objectives[static_cast<size_t>(k2 - 1)])));
      conjuncts.push_back(mk::not_(mk::and_(w1, w2)));
    }
  return normalize(mk::and_n(conjuncts));
}

// Expansion of a non-<ff variant in terms of <ff comparisons between the
// objectives in scope. The result's only preference nodes are <ff with both
// operands drawn from the objective list.
inline Formula expand_variant(PrefVariant v, int agent, Formula b1, Formula b2,
                              std::vector<Formula> const& objectives) {
  if (v == PrefVariant::FF)
    throw CheckError("expand_variant expects a derived preference variant");
  int K = static_cast<int>(objectives.size());
  if (K == 0) throw CheckError("expand_variant needs a non-empty objective list");
  auto witness = [&](Formula b, int k) {
    return mk::exists_path(mk::next(mk::and_(b, objectives[static_cast<size_t>(k - 1)])));
  };
  auto ff = [&](int k1, int k2) {
    return mk::pref(PrefVariant::FF, agent, objectives[static_cast<size_t>(k1 - 1)],
                    objectives[static_cast<size_t>(k2 - 1)]);
  };
  bool flipped = v == PrefVariant::GEA || v == PrefVariant::GAE;
  auto compare = [&](int k1, int k2) { return flipped ? ff(k2, k1) : ff(k1, k2); };

  std::vector<Formula> outer;
  switch (v) {
    case PrefVariant::EA:
    case PrefVariant::GEA: {
      for (int k1 = 1; k1 <= K; ++k1) {
        std::vector<Formula> inner;
        for (int k2 = 1; k2 <= K; ++k2)
          inner.push_back(mk::implies(witness(b2, k2), compare(k1, k2)));
        outer.push_back(mk::and_(witness(b1, k1), mk::and_n(inner)));
      }
      return mk::or_n(outer);
    }
    case PrefVariant::AE:
    case PrefVariant::GAE: {
      for (int k1 = 1; k1 <= K; ++k1) {
        std::vector<Formula> inner;
        for (int k2 = 1; k2 <= K; ++k2)
          inner.push_back(mk::and_(witness(b2, k2), compare(k1, k2)));
        outer.push_back(mk::implies(witness(b1, k1), mk::or_n(inner)));
      }
      return mk::and_n(outer);
    }
    case PrefVariant::EE: {
      for (int k1 = 1; k1 <= K; ++k1)
        for (int k2 = 1; k2 <= K; ++k2)
          outer.push_back(
              mk::and_(witness(b1, k1), mk::and_(witness(b2, k2), compare(k1, k2))));
      return mk::or_n(outer);
    }
    default:
      throw CheckError("expand_variant: unhandled variant");
  }
}

// The labeling formula L: the initial labels, per-slot mutual exclusion
// (q mode only), and the minterm-driven tail update under every transition.
// In log mode the labels are elementary conjunctions of r-variables, mutual
// exclusion is structural, and the member-count range restriction is pinned
// at the initial state.
inline Formula labeling_formula(AgentPrefVocab const& av, bool log_mode) {
  std::vector<Formula> init;
  std::vector<Formula> box;
  for (int slot = 0; slot < av.slot_count(); ++slot) {
    ClosureTable const& table = av.slots[static_cast<size_t>(slot)];
    int initial_member =
        table.index_of(ltl_canonical(av.desc.objectives[static_cast<size_t>(slot)]));
    init.push_back(q_label(av, slot, initial_member, log_mode));

    size_t m = table.members.size();
    if (!log_mode)
      for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
          box.push_back(mk::not_(mk::and_(q_label(av, slot, static_cast<int>(i), false),
                                          q_label(av, slot, static_cast<int>(j), false))));
    for (size_t i = 0; i < m; ++i) {
      Gnf const& g = table.gnfs[i];
      std::vector<Formula> update;
      for (size_t mask = 0; mask < g.tails.size(); ++mask) {
        int target = table.index_of(g.tails[mask]);
        update.push_back(mk::implies(g.guard(mask), q_label(av, slot, target, log_mode)));
      }
      box.push_back(mk::implies(q_label(av, slot, static_cast<int>(i), log_mode),
                                mk::forall_path(mk::next(mk::and_n(update)))));
    }
  }
  Formula l = mk::and_(mk::and_n(init), mk::forall_path(mk::globally(mk::and_n(box))));
  if (log_mode) {
    std::vector<Formula> range;
    for (int slot = 0; slot < av.slot_count(); ++slot) {
      size_t m = av.slots[static_cast<size_t>(slot)].members.size();
      size_t bits = av.naming[static_cast<size_t>(slot)].r_names.size();
      if (m == (size_t{1} << bits)) continue;  // every code is a member
      std::vector<Formula> options;
      for (size_t i = 0; i < m; ++i)
        options.push_back(q_label(av, slot, static_cast<int>(i), true));
      range.push_back(mk::or_n(options));
    }
    if (!range.empty()) l = mk::and_(mk::and_n(range), l);
  }
  return l;
}

namespace detail {

// replace the <ff nodes of an expansion (operands are objectives) in place
inline Formula resolve_ff(Formula f, std::vector<Formula> const& objectives,
                          std::set<std::pair<int, int>> const& p_pairs) {
  if (f->op == Op::Pref) {
    if (f->variant != PrefVariant::FF)
      throw CheckError("expansion left a derived preference node behind");
    return elim_pref_at(f->lhs, f->rhs, objectives, p_pairs);
  }
  if (!f->lhs) return f;
  Formula l = resolve_ff(f->lhs, objectives, p_pairs);
  Formula r = f->rhs ? resolve_ff(f->rhs, objectives, p_pairs) : nullptr;
  switch (f->op) {
    case Op::Implies: return mk::implies(l, r);
    case Op::ExistsPath: return mk::exists_path(l);
    case Op::Next: return mk::next(l);
    case Op::Until: return mk::until(l, r);
    default: throw CheckError("unexpected node in a variant expansion");
  }
}

struct PrefElim {
  PrefVocabulary const& vocab;
  bool log_mode;
  std::set<int> used_agents;

  Formula rewrite_pref(Formula f, std::vector<Formula> const& objectives,
                       std::set<std::pair<int, int>> const& p_pairs) {
    if (f->variant == PrefVariant::FF)
      return elim_pref_at(f->lhs, f->rhs, objectives, p_pairs);
    Formula expanded = expand_variant(f->variant, f->agent, f->lhs, f->rhs, objectives);
    return resolve_ff(expanded, objectives, p_pairs);
  }

  Formula eliminate(Formula f, bool initial) {
    switch (f->op) {
      case Op::Bot:
      case Op::Atom:
        return f;
      case Op::PathAtom:
        throw CheckError("preference elimination runs after path-quantifier elimination; "
                         "found path variable ~" + f->name);
      case Op::SimQuant:
      case Op::OneQuant:
        throw CheckError("preference elimination runs after path-quantifier elimination");
      case Op::Implies:
        return mk::implies(eliminate(f->lhs, initial), eliminate(f->rhs, initial));
      case Op::ExistsPath:
        return mk::exists_path(eliminate(f->lhs, initial));
      case Op::ExistsProp:
        return mk::exists_prop(f->name, eliminate(f->lhs, initial));
      case Op::StratMod:
        return mk::strat_mod(f->coalition, eliminate(f->lhs, initial));
      case Op::Relax:
        return mk::relax(f->coalition, eliminate(f->lhs, initial));
      case Op::Next:
        return mk::next(eliminate(f->lhs, false));
      case Op::Until:
        return mk::until(eliminate(f->lhs, false), eliminate(f->rhs, false));
      case Op::Pref: {
        // operands sit one step ahead of the reference state
        Formula b1 = eliminate(f->lhs, false);
        Formula b2 = eliminate(f->rhs, false);
        Formula inner = mk::pref(f->variant, f->agent, b1, b2);
        AgentPrefVocab const& av = vocab.of(f->agent);
        used_agents.insert(f->agent);
        if (initial)  // the q-guards collapse to the initial objective list
          return rewrite_pref(inner, av.desc.objectives, av.desc.better);
        // one branch per combination of current members, q-guarded
        std::vector<int> combo(static_cast<size_t>(av.slot_count()), 0);
        std::vector<Formula> branches;
        for (;;) {
          std::vector<Formula> guard, members;
          for (int slot = 0; slot < av.slot_count(); ++slot) {
            guard.push_back(q_label(av, slot, combo[static_cast<size_t>(slot)], log_mode));
            members.push_back(av.slots[static_cast<size_t>(slot)]
                                  .members[static_cast<size_t>(combo[static_cast<size_t>(slot)])]);
          }
          branches.push_back(
              mk::and_(mk::and_n(guard), rewrite_pref(inner, members, av.desc.better)));
          int slot = 0;
          while (slot < av.slot_count()) {
            size_t limit = av.slots[static_cast<size_t>(slot)].members.size();
            if (static_cast<size_t>(++combo[static_cast<size_t>(slot)]) < limit) break;
            combo[static_cast<size_t>(slot)] = 0;
            ++slot;
          }
          if (slot == av.slot_count()) break;
        }
        return mk::or_n(branches);
      }
    }
    throw CheckError("eliminate_preference: unhandled node");
  }
};

}  // namespace detail

// Removes every preference node from a state formula. ForMB returns the bare
// rewrite whose q-atoms are to be interpreted on the q-labeled product;
// QVars/LogVars close over them with the labeling formula.
inline Formula eliminate_preference(Formula a, PrefVocabulary const& vocab, PrefElimMode mode) {
  detail::PrefElim elim{vocab, mode == PrefElimMode::LogVars, {}};
  Formula body = elim.eliminate(a, true);
  if (mode == PrefElimMode::ForMB) return body;
  // close over the label variables, innermost L last so each agent's block is
  // self-contained
  for (auto it = elim.used_agents.rbegin(); it != elim.used_agents.rend(); ++it) {
    AgentPrefVocab const& av = vocab.of(*it);
    body = mk::and_(labeling_formula(av, mode == PrefElimMode::LogVars), body);
    for (int slot = av.slot_count() - 1; slot >= 0; --slot) {
      SlotNaming const& names = av.naming[static_cast<size_t>(slot)];
      auto const& vars = mode == PrefElimMode::LogVars ? names.r_names : names.q_names;
      for (auto vit = vars.rbegin(); vit != vars.rend(); ++vit)
        body = mk::exists_prop(*vit, body);
    }
  }
  return body;
}

inline Formula eliminate_preference(Formula a,
                                    std::map<int, PreferenceDescription> const& descs,
                                    PrefElimMode mode, FreshVarSupply& supply) {
  PrefVocabulary vocab = make_pref_vocab(descs, supply);
  return eliminate_preference(a, vocab, mode);
}

}  // namespace atlscpref
