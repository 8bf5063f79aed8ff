#pragma once

// Satisfaction-preserving translation from ATLSC* into QCTL* over the
// move-storing unfolding. Strategies become quantified state variables:
// by default one per coalition member, constrained to mark exactly the
// successors chosen by one action everywhere; optionally one variable per
// merged coalition, or ceil(log2 |Act_i|) independent variables per member
// with the prescribed action read off the current state.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "atlscpref/ctlstar.hpp"
#include "atlscpref/model.hpp"

namespace atlscpref {

struct AtlscOptions {
  bool merge = false;
  bool log_actions = false;
};

// One <<G>> occurrence's quantifier block in the output formula.
struct QuantBlock {
  enum Kind { PerAgent, PerAgentLog, Merged, MergedLog } kind = PerAgent;
  int head_id = -1;                 // node id of the outermost exists-prop
  std::vector<int> coalition;
  // bound units in order: (agents of the unit, variables of the unit)
  std::vector<std::pair<std::vector<int>, std::vector<std::string>>> units;
  int var_count = 0;
};

struct AtlscTranslation {
  Formula formula = nullptr;
  Cgm unfolded;
  std::vector<int> unfolded_base;  // unfolded state -> base state
  std::vector<QuantBlock> blocks;
  std::vector<std::string> notes;  // merge fallbacks and other diagnostics
};

// AllBox (w)(X G p), the outer shell of every strategy constraint
inline Formula all_box(Formula f) { return mk::forall_path(mk::globally(f)); }

// default encoding: p marks exactly the successors reached by one fixed action
//   A G ( OR_a A X (p <-> a) )
inline Formula strategy_constraint(std::vector<std::string> const& actions,
                                   std::string const& var) {
  if (actions.empty()) throw CheckError("strategy constraint needs a non-empty action set");
  std::vector<Formula> options;
  for (auto& a : actions)
    options.push_back(mk::forall_path(mk::next(mk::iff(mk::atom(var), mk::atom(a)))));
  return all_box(mk::or_n(options));
}

// merged coalition: the options range over joint moves, marked by the
// conjunction of the members' action atoms
inline Formula strategy_constraint_merged(
    std::vector<std::vector<std::string>> const& member_actions, std::string const& var) {
  std::vector<size_t> idx(member_actions.size(), 0);
  std::vector<Formula> options;
  for (;;) {
    std::vector<Formula> conj;
    for (size_t i = 0; i < member_actions.size(); ++i)
      conj.push_back(mk::atom(member_actions[i][idx[i]]));
    options.push_back(mk::forall_path(mk::next(mk::iff(mk::atom(var), mk::and_n(conj)))));
    size_t i = 0;
    while (i < idx.size() && ++idx[i] == member_actions[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return all_box(mk::or_n(options));
}

namespace detail {

struct AtlscBinding {
  std::vector<int> agents;             // singleton unless merged
  std::vector<std::string> vars;       // one q, or log r-bits
  std::vector<std::string> joint_actions;  // per action code: member atoms, for log/merged
  bool log = false;

  // elementary conjunction of the r-bits encoding action code j
  Formula code_minterm(size_t j) const {
    std::vector<Formula> lits;
    for (size_t s = 0; s < vars.size(); ++s) {
      Formula r = mk::atom(vars[s]);
      lits.push_back(j >> s & 1 ? r : mk::not_(r));
    }
    return mk::and_n(lits);
  }
};

struct AtlscTranslator {
  Cgm const& g;
  AtlscOptions opts;
  FreshVarSupply supply;
  std::vector<QuantBlock> blocks;
  std::vector<std::string> notes;

  // actions of one unit as joint atoms per code
  std::vector<Formula> unit_actions(std::vector<int> const& agents) const {
    std::vector<size_t> idx(agents.size(), 0);
    std::vector<Formula> out;
    for (;;) {
      std::vector<Formula> conj;
      for (size_t i = 0; i < agents.size(); ++i)
        conj.push_back(mk::atom(g.actions.at(agents[i])[idx[i]]));
      out.push_back(mk::and_n(conj));
      size_t i = 0;
      while (i < idx.size() && ++idx[i] == g.actions.at(agents[i]).size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
    return out;
  }

  // a play is consistent with the binding's strategy
  Formula consistency(AtlscBinding const& b) const {
    if (!b.log) return mk::next(mk::globally(mk::atom(b.vars[0])));
    // source-labeled: the r-code at each state prescribes the next action
    auto acts = unit_actions(b.agents);
    std::vector<Formula> steps;
    for (size_t j = 0; j < acts.size(); ++j)
      steps.push_back(mk::implies(b.code_minterm(j), mk::next(acts[j])));
    return mk::globally(mk::and_n(steps));
  }

  Formula guard(std::vector<AtlscBinding> const& ctx) const {
    std::vector<Formula> q_marks, conj;
    for (auto& b : ctx) {
      if (b.log)
        conj.push_back(consistency(b));
      else
        q_marks.push_back(mk::atom(b.vars[0]));
    }
    if (!q_marks.empty()) conj.push_back(mk::next(mk::globally(mk::and_n(q_marks))));
    return mk::and_n(conj);
  }

  bool splits(Formula f, std::vector<int> const& merged) const {
    bool bad = false;
    std::set<int> unit(merged.begin(), merged.end());
    for_each_node(f, [&](Formula n) {
      if (n->op != Op::StratMod && n->op != Op::Relax) return;
      bool inside = false, outside = false;
      for (int a : n->coalition) (unit.count(a) ? inside : outside) = true;
      bool cover = true;
      for (int a : merged)
        if (std::find(n->coalition.begin(), n->coalition.end(), a) == n->coalition.end())
          cover = false;
      if (inside && !cover) bad = true;
      (void)outside;
    });
    return bad;
  }

  Formula translate(Formula f, std::vector<AtlscBinding> const& ctx) {
    switch (f->op) {
      case Op::Bot:
      case Op::Atom:
        return f;
      case Op::Implies:
        return mk::implies(translate(f->lhs, ctx), translate(f->rhs, ctx));
      case Op::Next:
        return mk::next(translate(f->lhs, ctx));
      case Op::Until:
        return mk::until(translate(f->lhs, ctx), translate(f->rhs, ctx));
      case Op::ExistsPath:
        return mk::exists_path(translate(f->lhs, ctx));
      case Op::ExistsProp:
        return mk::exists_prop(f->name, translate(f->lhs, ctx));
      case Op::Relax: {
        std::set<int> dropped(f->coalition.begin(), f->coalition.end());
        std::vector<AtlscBinding> kept;
        for (auto& b : ctx) {
          bool in = false, out = false;
          for (int a : b.agents) (dropped.count(a) ? in : out) = true;
          if (in && out)
            throw CheckError("relax splits a merged coalition binding");
          if (!in) kept.push_back(b);
        }
        return translate(f->lhs, kept);
      }
      case Op::StratMod: {
        for (int a : f->coalition)
          if (std::find(g.agents.begin(), g.agents.end(), a) == g.agents.end())
            throw ModelError("coalition member " + std::to_string(a) +
                             " is not an agent of the model");
        std::set<int> taken(f->coalition.begin(), f->coalition.end());
        std::vector<AtlscBinding> survivors;
        for (auto& b : ctx) {
          bool in = false, out = false;
          for (int a : b.agents) (taken.count(a) ? in : out) = true;
          if (in && out)
            throw CheckError("coalition splits a merged context binding");
          if (!in) survivors.push_back(b);
        }
        if (f->coalition.empty()) {
          Formula body = translate(f->lhs, survivors);
          if (survivors.empty()) return mk::forall_path(body);
          return mk::forall_path(mk::implies(guard(survivors), body));
        }

        // unit layout for this occurrence
        std::vector<std::vector<int>> units;
        bool merged = false;
        if (opts.merge && f->coalition.size() > 1) {
          if (splits(f->lhs, f->coalition)) {
            notes.push_back("merge disabled for <<" + detail::coalition_str(f->coalition) +
                            ">>: a subformula splits the coalition");
          } else {
            units.push_back(f->coalition);
            merged = true;
          }
        }
        if (!merged)
          for (int a : f->coalition) units.push_back({a});

        QuantBlock block;
        block.coalition = f->coalition;
        block.kind = merged ? (opts.log_actions ? QuantBlock::MergedLog : QuantBlock::Merged)
                            : (opts.log_actions ? QuantBlock::PerAgentLog : QuantBlock::PerAgent);

        std::vector<AtlscBinding> fresh;
        std::vector<Formula> constraints;
        for (auto& unit : units) {
          AtlscBinding b;
          b.agents = unit;
          b.log = opts.log_actions;
          size_t action_count = 1;
          for (int a : unit) action_count *= g.actions.at(a).size();
          if (!b.log) {
            std::string base = merged ? "qm" : "q" + std::to_string(unit[0]);
            b.vars.push_back(supply.fresh(base));
            if (unit.size() == 1)
              constraints.push_back(strategy_constraint(g.actions.at(unit[0]), b.vars[0]));
            else {
              std::vector<std::vector<std::string>> member_actions;
              for (int a : unit) member_actions.push_back(g.actions.at(a));
              constraints.push_back(strategy_constraint_merged(member_actions, b.vars[0]));
            }
          } else {
            size_t bits = 0;
            while ((size_t{1} << bits) < action_count) ++bits;
            std::string base = "r" + std::to_string(unit[0]);
            for (size_t s = 0; s < bits; ++s) b.vars.push_back(supply.fresh(base));
            if (action_count != (size_t{1} << bits)) {
              std::vector<Formula> in_range;
              for (size_t j = 0; j < action_count; ++j) in_range.push_back(b.code_minterm(j));
              constraints.push_back(all_box(mk::or_n(in_range)));
            }
          }
          block.units.emplace_back(unit, b.vars);
          block.var_count += static_cast<int>(b.vars.size());
          fresh.push_back(std::move(b));
        }

        std::vector<AtlscBinding> inner_ctx = survivors;
        for (auto& b : fresh) inner_ctx.push_back(b);
        Formula body =
            mk::forall_path(mk::implies(guard(inner_ctx), translate(f->lhs, inner_ctx)));
        Formula out = constraints.empty() ? body : mk::and_(mk::and_n(constraints), body);
        for (auto it = fresh.rbegin(); it != fresh.rend(); ++it)
          for (auto vit = it->vars.rbegin(); vit != it->vars.rend(); ++vit)
            out = mk::exists_prop(*vit, out);
        block.head_id = out->id;
        if (block.var_count > 0) blocks.push_back(std::move(block));
        return out;
      }
      default:
        throw CheckError(
            "translation input must be preference- and quantifier-free ATLSC*, got " +
            print_formula(f));
    }
  }
};

}  // namespace detail

inline AtlscTranslation translate_atlsc(Formula a, Cgm const& m, AtlscOptions opts = {}) {
  if (contains_op(a, Op::Pref) || contains_op(a, Op::SimQuant) || contains_op(a, Op::OneQuant) ||
      contains_op(a, Op::PathAtom))
    throw CheckError("run the path and preference stages before the game translation");
  detail::AtlscTranslator tr{m, opts, FreshVarSupply{}, {}, {}};
  for (auto& p : m.props) tr.supply.reserve(p);
  for (int agent : m.agents)
    for (auto& act : m.actions.at(agent)) tr.supply.reserve(act);
  tr.supply.reserve_all_names(a);
  AtlscTranslation out;
  out.formula = tr.translate(a, {});
  if (contains_op(out.formula, Op::StratMod) || contains_op(out.formula, Op::Relax))
    throw CheckError("game modalities survived the translation");
  out.unfolded = unfold1(m);
  out.unfolded_base = unfold1_base_map(m);
  out.blocks = std::move(tr.blocks);
  out.notes = std::move(tr.notes);
  return out;
}

// ---------------------------------------------------------------------------
// Solution-concept templates over the extended language.

enum class SolutionTemplate { Nash, Secure };

inline Formula solution_concept(SolutionTemplate which, std::map<int, Formula> const& goals) {
  if (goals.empty()) throw CheckError("solution concepts need at least one goal");
  std::vector<int> agents;
  for (auto& [agent, goal] : goals) agents.push_back(agent);
  std::vector<Formula> conjuncts;
  for (int i : agents) {
    Formula gi = goals.at(i);
    Formula premise;
    if (which == SolutionTemplate::Nash) {
      premise = mk::pref(PrefVariant::EA, i, gi, mk::path_atom("c"));
    } else {
      std::vector<Formula> losses;
      for (int j : agents) {
        if (j == i) continue;
        losses.push_back(mk::or_(mk::pref(PrefVariant::EA, j, mk::path_atom("c"), goals.at(j)),
                                 mk::pref(PrefVariant::AE, j, mk::path_atom("c"), goals.at(j))));
      }
      premise = mk::or_n(losses);
    }
    Formula no_dev = mk::strat_dual({i}, mk::next(mk::not_(mk::path_atom("c"))));
    conjuncts.push_back(mk::and_(mk::next(gi),
                                 mk::forall_sim(i, "c", mk::implies(premise, no_dev))));
  }
  return mk::strat_mod(agents, mk::and_n(conjuncts));
}

}  // namespace atlscpref
