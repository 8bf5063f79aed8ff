#pragma once

// Path-set quantifier elimination.
//
// A bound path variable is meaningful only at plays rooted one step ahead of
// the binding state. t_sep separates occurrences accordingly: in mode One the
// surviving occurrences sit under exactly one X and no U; everything else
// becomes false. Untils are unfolded once per level, which terminates because
// the X clauses strip the variable from the remainder.
//
// With occurrences separated, E1 instantiates the variable with each current
// objective, Es with each union of them; away from the initial state the
// current objective list is selected by q-label guards.

#include <string>
#include <vector>

#include "atlscpref/model.hpp"
#include "atlscpref/pref_elim.hpp"

namespace atlscpref {

enum class SepMode { Zero, One };

namespace detail {

inline Formula tsep_kill(Formula f, std::string const& var) {
  Substitution s;
  s.path_vars[var] = mk::bot();
  return substitute(f, s);
}

inline Formula tsep(Formula f, std::string const& var, SepMode mode) {
  using namespace mk;
  bool one = mode == SepMode::One;
  switch (f->op) {
    case Op::Bot:
    case Op::Atom:
      return f;
    case Op::PathAtom:
      if (f->name != var) return f;
      return one ? bot() : f;  // t1(p) = false, t0(p) = p
    case Op::Implies:
      return implies(tsep(f->lhs, var, mode), tsep(f->rhs, var, mode));
    case Op::ExistsPath:
      return exists_path(tsep(f->lhs, var, mode));
    case Op::ExistsProp:
      return exists_prop(f->name, tsep(f->lhs, var, mode));
    case Op::StratMod:
      return strat_mod(f->coalition, tsep(f->lhs, var, mode));
    case Op::Relax:
      return relax(f->coalition, tsep(f->lhs, var, mode));
    case Op::Next:
      // t1(X B) = X t0(B), t0(X B) = X [false/var] B
      return one ? next(tsep(f->lhs, var, SepMode::Zero)) : next(tsep_kill(f->lhs, var));
    case Op::Until:
      // t*(B1 U B2) = t*(B2 | B1 & X(B1 U B2))
      return tsep(or_(f->rhs, and_(f->lhs, next(f))), var, mode);
    case Op::Pref:
      // operands are evaluated one step ahead of the reference state
      if (one)
        return pref(f->variant, f->agent, tsep(f->lhs, var, SepMode::Zero),
                    tsep(f->rhs, var, SepMode::Zero));
      return pref(f->variant, f->agent, tsep_kill(f->lhs, var), tsep_kill(f->rhs, var));
    case Op::SimQuant:
    case Op::OneQuant: {
      // the inner binder gets its own separation; a shadowing binder hides
      // the outer variable entirely
      Formula body = tsep(f->lhs, f->name, SepMode::One);
      if (f->name != var) body = tsep(body, var, mode);
      return f->op == Op::SimQuant ? sim_quant(f->agent, f->name, body)
                                   : one_quant(f->agent, f->name, body);
    }
  }
  throw CheckError("t_sep: unhandled node");
}

}  // namespace detail

inline Formula t_sep(Formula f, std::string const& var, SepMode mode) {
  return detail::tsep(f, var, mode);
}

// Occurrence discipline validator (the counter-indexed grammar): in mode One
// every free occurrence of the variable lies under exactly one X and no U; in
// mode Zero every free occurrence is at the top temporal level.
inline bool check_separated(Formula f, std::string const& var, SepMode mode) {
  auto no_free = [&](Formula g) { return free_path_vars(g).count(var) == 0; };
  auto rec = [&](auto&& self, Formula g, int ahead) -> bool {
    switch (g->op) {
      case Op::Bot:
      case Op::Atom:
        return true;
      case Op::PathAtom:
        return g->name != var || ahead == 0;
      case Op::Implies:
        return self(self, g->lhs, ahead) && self(self, g->rhs, ahead);
      case Op::ExistsPath:
      case Op::ExistsProp:
      case Op::StratMod:
      case Op::Relax:
        return self(self, g->lhs, ahead);
      case Op::Next:
        return ahead == 1 ? self(self, g->lhs, 0) : no_free(g->lhs);
      case Op::Until:
        return no_free(g->lhs) && no_free(g->rhs);
      case Op::Pref:
        if (ahead == 1) return self(self, g->lhs, 0) && self(self, g->rhs, 0);
        return no_free(g->lhs) && no_free(g->rhs);
      case Op::SimQuant:
      case Op::OneQuant:
        if (g->name == var) return true;
        return self(self, g->lhs, ahead);
    }
    return false;
  };
  return rec(rec, f, mode == SepMode::One ? 1 : 0);
}

namespace detail {

struct PathQuantElim {
  PrefVocabulary const& vocab;
  bool log_guards;

  Formula instantiate(Formula separated, std::string const& var, Formula cls) {
    Substitution s;
    s.path_vars[var] = cls;
    return substitute(separated, s);
  }

  // the quantifier scheme over a concrete current-objective list
  Formula scheme(Formula separated, Formula quant, std::vector<Formula> const& members) {
    std::vector<Formula> branches;
    if (quant->op == Op::OneQuant) {
      for (Formula m : members) branches.push_back(instantiate(separated, quant->name, m));
    } else {
      size_t K = members.size();
      for (uint32_t set = 0; set < (uint32_t{1} << K); ++set) {
        std::vector<Formula> chosen;
        for (size_t k = 0; k < K; ++k)
          if (set >> k & 1) chosen.push_back(members[k]);
        branches.push_back(instantiate(separated, quant->name, mk::or_n(chosen)));
      }
    }
    return mk::or_n(branches);
  }

  Formula eliminate(Formula f, bool initial) {
    switch (f->op) {
      case Op::Bot:
      case Op::Atom:
      case Op::PathAtom:
        return f;
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
      case Op::Pref:
        return mk::pref(f->variant, f->agent, eliminate(f->lhs, false),
                        eliminate(f->rhs, false));
      case Op::SimQuant:
      case Op::OneQuant: {
        Formula body = eliminate(f->lhs, initial);
        Formula quant = f->op == Op::SimQuant ? mk::sim_quant(f->agent, f->name, body)
                                              : mk::one_quant(f->agent, f->name, body);
        AgentPrefVocab const& av = vocab.of(f->agent);
        Formula separated = t_sep(body, f->name, SepMode::One);
        if (!check_separated(separated, f->name, SepMode::One))
          throw CheckError("occurrence separation failed for ~" + f->name);
        if (initial)  // the q-guards collapse to the initial objective list
          return scheme(separated, quant, av.desc.objectives);
        std::vector<int> combo(static_cast<size_t>(av.slot_count()), 0);
        std::vector<Formula> branches;
        for (;;) {
          std::vector<Formula> guard, members;
          for (int slot = 0; slot < av.slot_count(); ++slot) {
            guard.push_back(
                q_label(av, slot, combo[static_cast<size_t>(slot)], log_guards));
            members.push_back(
                av.slots[static_cast<size_t>(slot)]
                    .members[static_cast<size_t>(combo[static_cast<size_t>(slot)])]);
          }
          branches.push_back(mk::and_(mk::and_n(guard), scheme(separated, quant, members)));
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
    throw CheckError("eliminate_path_quant: unhandled node");
  }
};

}  // namespace detail

inline Formula eliminate_path_quant(Formula a, PrefVocabulary const& vocab,
                                    bool log_guards = false) {
  detail::PathQuantElim elim{vocab, log_guards};
  Formula out = elim.eliminate(a, true);
  if (contains_op(out, Op::SimQuant) || contains_op(out, Op::OneQuant))
    throw CheckError("path quantifier survived elimination");
  auto free_vars = free_path_vars(out);
  if (!free_vars.empty())
    throw CheckError("free path variable ~" + *free_vars.begin() + " in input");
  return out;
}

inline Formula eliminate_path_quant(Formula a,
                                    std::map<int, PreferenceDescription> const& descs,
                                    FreshVarSupply& supply, bool log_guards = false) {
  PrefVocabulary vocab = make_pref_vocab(descs, supply);
  return eliminate_path_quant(a, vocab, log_guards);
}

}  // namespace atlscpref
