#pragma once

// Ground-truth evaluation of preference formulas.
//
// The evaluator annotates each reachable state with the objective list that
// currently describes the indiscernibility classes (one closure member per
// agent and slot, updated along transitions by GNF tails), then evaluates
// preference operators directly from the class semantics: a play belongs to
// the class of the unique current member it satisfies, and two plays compare
// exactly as their class indices do under the description's pair set. This is
// the tree-consistent reading of the semantics; verdicts are taken at the
// initial configuration.

#include <map>
#include <string>
#include <vector>

#include "atlscpref/ctlstar.hpp"
#include "atlscpref/model.hpp"

namespace atlscpref {

struct PrefProduct {
  KripkeModel model;
  std::vector<int> base_state;
  std::vector<std::vector<int>> ann;         // node -> member per layout slot
  std::vector<std::pair<int, int>> layout;   // flattened index -> (agent, slot)
  PrefVocabulary vocab;

  int slot_pos(int agent, int slot) const {
    for (size_t i = 0; i < layout.size(); ++i)
      if (layout[i] == std::make_pair(agent, slot)) return static_cast<int>(i);
    throw CheckError("no annotation slot for agent " + std::to_string(agent));
  }

  int member_at(int node, int agent, int slot) const {
    return ann[static_cast<size_t>(node)][static_cast<size_t>(slot_pos(agent, slot))];
  }

  Formula member_formula(int node, int agent, int slot) const {
    auto const& av = vocab.of(agent);
    return av.slots[static_cast<size_t>(slot)]
        .members[static_cast<size_t>(member_at(node, agent, slot))];
  }
};

// Reachable (state, objective-list) product. Built here independently of the
// q-labeled M_B construction so the two stay differential-test partners.
inline PrefProduct make_pref_product(KripkeModel const& base,
                                     std::map<int, PreferenceDescription> const& descs,
                                     FreshVarSupply& supply) {
  PrefProduct p;
  p.vocab = make_pref_vocab(descs, supply);
  for (auto& [agent, av] : p.vocab.agents)
    for (int slot = 0; slot < av.slot_count(); ++slot) p.layout.emplace_back(agent, slot);

  p.model.props = base.props;
  std::vector<int> init_ann;
  for (auto& [agent, slot] : p.layout) {
    auto const& av = p.vocab.of(agent);
    init_ann.push_back(av.slots[static_cast<size_t>(slot)].index_of(
        ltl_canonical(av.desc.objectives[static_cast<size_t>(slot)])));
  }

  std::map<std::pair<int, std::vector<int>>, int> ids;
  struct Item {
    int base;
    std::vector<int> ann;
  };
  std::vector<Item> queue;
  auto visit = [&](int b, std::vector<int> a) {
    auto key = std::make_pair(b, a);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(p.model.states.size());
    ids.emplace(key, id);
    p.model.states.push_back(base.states[static_cast<size_t>(b)] + "#" + std::to_string(id));
    p.model.labels.push_back(base.labels[static_cast<size_t>(b)]);
    p.model.succ.emplace_back();
    p.base_state.push_back(b);
    p.ann.push_back(a);
    queue.push_back({b, std::move(a)});
    return id;
  };
  visit(base.initial, init_ann);
  p.model.initial = 0;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    Item item = queue[qi];
    int id = ids.at({item.base, item.ann});
    for (int t : base.succ[static_cast<size_t>(item.base)]) {
      std::vector<int> na(item.ann.size());
      for (size_t i = 0; i < p.layout.size(); ++i) {
        auto const& av = p.vocab.of(p.layout[i].first);
        na[i] = av.slots[static_cast<size_t>(p.layout[i].second)]
                    .step(item.ann[i], base.labels[static_cast<size_t>(t)]);
      }
      int child = visit(t, std::move(na));
      p.model.succ[static_cast<size_t>(id)].push_back(child);
    }
  }
  return p;
}

// Combines per-class witness bits into the verdict of one preference variant.
// e1[k] / e2[k]: some play of the left / right operand lies in class k+1.
inline bool pref_combine(PrefVariant variant, std::vector<char> const& e1,
                         std::vector<char> const& e2,
                         std::set<std::pair<int, int>> const& better) {
  int K = static_cast<int>(e1.size());
  auto pref_holds = [&](int k1, int k2) { return better.count({k1 + 1, k2 + 1}) != 0; };
  switch (variant) {
    case PrefVariant::FF: {
      for (int k1 = 0; k1 < K; ++k1)
        for (int k2 = 0; k2 < K; ++k2)
          if (e1[static_cast<size_t>(k1)] && e2[static_cast<size_t>(k2)] && !pref_holds(k1, k2))
            return false;
      return true;
    }
    case PrefVariant::EA:
    case PrefVariant::GEA: {
      bool flipped = variant == PrefVariant::GEA;
      for (int k1 = 0; k1 < K; ++k1) {
        if (!e1[static_cast<size_t>(k1)]) continue;
        bool all = true;
        for (int k2 = 0; k2 < K; ++k2)
          if (e2[static_cast<size_t>(k2)] &&
              !(flipped ? pref_holds(k2, k1) : pref_holds(k1, k2)))
            all = false;
        if (all) return true;
      }
      return false;
    }
    case PrefVariant::AE:
    case PrefVariant::GAE: {
      bool flipped = variant == PrefVariant::GAE;
      for (int k1 = 0; k1 < K; ++k1) {
        if (!e1[static_cast<size_t>(k1)]) continue;
        bool some = false;
        for (int k2 = 0; k2 < K; ++k2)
          if (e2[static_cast<size_t>(k2)] &&
              (flipped ? pref_holds(k2, k1) : pref_holds(k1, k2)))
            some = true;
        if (!some) return false;
      }
      return true;
    }
    case PrefVariant::EE: {
      for (int k1 = 0; k1 < K; ++k1)
        for (int k2 = 0; k2 < K; ++k2)
          if (e1[static_cast<size_t>(k1)] && e2[static_cast<size_t>(k2)] && pref_holds(k1, k2))
            return true;
      return false;
    }
  }
  return false;
}

// CTL*_< engine: CTL* plus preference operators of every variant, evaluated
// natively on the annotated product. Optionally interprets the q-naming atoms
// against the annotation, which lets it check path-quantifier eliminations.
class DirectPrefChecker : public StateChecker {
 public:
  explicit DirectPrefChecker(PrefProduct const& p, bool interpret_q_atoms = true)
      : StateChecker(p.model), p_(p) {
    if (interpret_q_atoms)
      for (auto& [agent, av] : p_.vocab.agents)
        for (size_t slot = 0; slot < av.naming.size(); ++slot)
          for (size_t m = 0; m < av.naming[slot].q_names.size(); ++m)
            q_atoms_[av.naming[slot].q_names[m]] = {agent, static_cast<int>(slot),
                                                    static_cast<int>(m)};
  }

  PrefProduct const& product() const { return p_; }

  // does some play from the node's successors satisfy b while lying in class
  // k of the agent's current description
  bool class_witness(int node, int agent, int slot, Formula b) {
    Formula member = p_.member_formula(node, agent, slot);
    Formula probe = mk::exists_path(mk::next(mk::and_(b, member)));
    return sat(probe)[static_cast<size_t>(node)];
  }

  bool class_nonempty(int node, int agent, int slot) {
    return class_witness(node, agent, slot, mk::top());
  }

 protected:
  std::vector<char> eval_extra(Formula f) override {
    if (f->op == Op::Pref) return eval_pref(f);
    return StateChecker::eval_extra(f);
  }

  bool atom_value(int state, std::string const& name) override {
    auto it = q_atoms_.find(name);
    if (it != q_atoms_.end()) {
      auto [agent, slot, member] = it->second;
      return p_.member_at(state, agent, slot) == member;
    }
    return StateChecker::atom_value(state, name);
  }

  std::vector<char> eval_pref(Formula f) {
    auto const& av = p_.vocab.of(f->agent);
    int K = av.desc.size();
    size_t n = p_.model.states.size();
    std::vector<char> out(n, 0);
    for (size_t s = 0; s < n; ++s) {
      std::vector<char> e1(static_cast<size_t>(K)), e2(static_cast<size_t>(K));
      for (int k = 0; k < K; ++k) {
        e1[static_cast<size_t>(k)] = class_witness(static_cast<int>(s), f->agent, k, f->lhs);
        e2[static_cast<size_t>(k)] = class_witness(static_cast<int>(s), f->agent, k, f->rhs);
      }
      out[s] = pref_combine(f->variant, e1, e2, av.desc.better);
    }
    return out;
  }

  PrefProduct const& p_;
  std::map<std::string, std::tuple<int, int, int>> q_atoms_;
};

inline bool direct_pref_check(KripkeModel const& base,
                              std::map<int, PreferenceDescription> const& descs, Formula a) {
  FreshVarSupply supply;
  for (auto& p : base.props) supply.reserve(p);
  supply.reserve_all_names(a);
  PrefProduct p = make_pref_product(base, descs, supply);
  DirectPrefChecker checker(p, false);
  return checker.holds_initially(a);
}

// ---------------------------------------------------------------------------
// Occurrence separation, interpreter-side: rewrites a state formula so that
// every free occurrence of the given path variable sits under exactly one X
// (mode One) or at the top temporal level (mode Zero). Untils are unfolded
// once per level; deeper occurrences die as false. This is the evaluator's
// own twin of the syntactic translation in the path-quantifier module.

namespace detail {

inline Formula kill_var(Formula f, std::string const& var) {
  Substitution s;
  s.path_vars[var] = mk::bot();
  return substitute(f, s);
}

inline Formula sep_rec(Formula f, std::string const& var, int mode) {
  using namespace mk;
  switch (f->op) {
    case Op::Bot:
    case Op::Atom:
      return f;
    case Op::PathAtom:
      if (f->name != var) return f;
      return mode == 1 ? bot() : f;
    case Op::Implies:
      return implies(sep_rec(f->lhs, var, mode), sep_rec(f->rhs, var, mode));
    case Op::ExistsPath:
      return exists_path(sep_rec(f->lhs, var, mode));
    case Op::ExistsProp:
      return exists_prop(f->name, sep_rec(f->lhs, var, mode));
    case Op::StratMod:
      return strat_mod(f->coalition, sep_rec(f->lhs, var, mode));
    case Op::Relax:
      return relax(f->coalition, sep_rec(f->lhs, var, mode));
    case Op::Next:
      if (mode == 1) return next(sep_rec(f->lhs, var, 0));
      return next(kill_var(f->lhs, var));
    case Op::Until:
      return sep_rec(or_(f->rhs, and_(f->lhs, next(f))), var, mode);
    case Op::Pref:
      if (mode == 1)
        return pref(f->variant, f->agent, sep_rec(f->lhs, var, 0), sep_rec(f->rhs, var, 0));
      return pref(f->variant, f->agent, kill_var(f->lhs, var), kill_var(f->rhs, var));
    case Op::SimQuant:
    case Op::OneQuant: {
      Formula body = f->lhs;
      if (f->name == var) {
        // inner binder shadows; only normalize its own occurrences
        Formula nb = sep_rec(body, f->name, 1);
        return f->op == Op::SimQuant ? sim_quant(f->agent, f->name, nb)
                                     : one_quant(f->agent, f->name, nb);
      }
      Formula nb = sep_rec(sep_rec(body, f->name, 1), var, mode);
      return f->op == Op::SimQuant ? sim_quant(f->agent, f->name, nb)
                                   : one_quant(f->agent, f->name, nb);
    }
  }
  throw CheckError("separate: unhandled node");
}

}  // namespace detail

inline Formula separate_one_ahead(Formula f, std::string const& var) {
  return detail::sep_rec(f, var, 1);
}

// ---------------------------------------------------------------------------
// Quantifier-semantics engine: adds the path-set quantifiers. At a node, the
// agent's indiscernibility classes are the current members; Es ranges over
// unions of classes (all subsets of {1..K}), E1 over single classes. The
// bound variable is substituted by the class disjunction after occurrence
// separation, which is exact because separated occurrences are evaluated only
// at plays rooted one step ahead of the binding node.

class QuantSemChecker : public DirectPrefChecker {
 public:
  using DirectPrefChecker::DirectPrefChecker;

 protected:
  std::vector<char> eval_extra(Formula f) override {
    if (f->op == Op::SimQuant || f->op == Op::OneQuant) return eval_quant(f);
    return DirectPrefChecker::eval_extra(f);
  }

  std::vector<char> eval_quant(Formula f) {
    auto const& av = p_.vocab.of(f->agent);
    int K = av.desc.size();
    Formula separated = separate_one_ahead(f->lhs, f->name);
    size_t n = p_.model.states.size();
    std::vector<char> out(n, 0);
    for (size_t s = 0; s < n; ++s) {
      std::vector<Formula> members;
      for (int k = 0; k < K; ++k)
        members.push_back(p_.member_formula(static_cast<int>(s), f->agent, k));
      auto instantiate = [&](Formula cls) {
        Substitution sub;
        sub.path_vars[f->name] = cls;
        return substitute(separated, sub);
      };
      bool v = false;
      if (f->op == Op::OneQuant) {
        for (int k = 0; k < K && !v; ++k)
          v = sat(instantiate(members[static_cast<size_t>(k)]))[s];
      } else {
        for (uint32_t set = 0; set < (uint32_t{1} << K) && !v; ++set) {
          std::vector<Formula> chosen;
          for (int k = 0; k < K; ++k)
            if (set >> k & 1) chosen.push_back(members[static_cast<size_t>(k)]);
          v = sat(instantiate(mk::or_n(chosen)))[s];
        }
      }
      out[s] = v;
    }
    return out;
  }
};

inline bool quant_sem_check(KripkeModel const& base,
                            std::map<int, PreferenceDescription> const& descs, Formula a) {
  FreshVarSupply supply;
  for (auto& p : base.props) supply.reserve(p);
  supply.reserve_all_names(a);
  PrefProduct p = make_pref_product(base, descs, supply);
  QuantSemChecker checker(p, false);
  return checker.holds_initially(a);
}

}  // namespace atlscpref
