#pragma once

// Bounded-memory game oracle.
//
// Strategies are tables over windows of at most h+1 states; shifting a
// strategy along a play only moves its window, so strategy contexts stay
// finite and the full ATLSCPref* semantics (game modalities with contexts,
// preference via annotated objective lists, path-set quantifiers) can be
// evaluated exactly relative to the bound. <<G>> enumerates the bounded
// profiles; out-sets under a fixed profile are checked exactly on the finite
// configuration graph. Verdicts are three-valued: exact when the instance is
// known h-sufficient (or contains no real game modality), one-sided by
// polarity otherwise, else unknown.
//
// A companion evaluator checks translated QCTL* formulas on the move-storing
// unfolding by enumerating bounded strategies for each quantifier block.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "atlscpref/atlsc_translate.hpp"
#include "atlscpref/ctlstar.hpp"
#include "atlscpref/direct_pref.hpp"
#include "atlscpref/model.hpp"

namespace atlscpref {

enum class Verdict { False = 0, True = 1, Unknown = 3 };

namespace detail {

struct BoundedStrategy {
  int unit = -1;                       // index into GameChecker::units_
  std::map<std::vector<int>, size_t> table;  // window of model states -> action code
};

struct GameCfg {
  int state = 0;
  std::vector<int> ann;  // objective member per (agent, slot) layout entry
  // context: (strategy id, current window) per bound unit, agent-keyed
  std::vector<std::pair<int, std::vector<int>>> ctx;  // sorted by strategy unit agents

  bool operator<(GameCfg const& o) const {
    if (state != o.state) return state < o.state;
    if (ann != o.ann) return ann < o.ann;
    return ctx < o.ctx;
  }
};

}  // namespace detail

class GameChecker {
 public:
  GameChecker(Cgm const& g, int h, std::map<int, PreferenceDescription> const& descs,
              size_t profile_cap = 1 << 22)
      : g_(g), h_(h), profile_cap_(profile_cap) {
    FreshVarSupply supply;
    for (auto& p : g.props) supply.reserve(p);
    vocab_ = make_pref_vocab(descs, supply);
    for (auto& [agent, av] : vocab_.agents)
      for (int slot = 0; slot < av.slot_count(); ++slot) layout_.emplace_back(agent, slot);
  }

  bool eval(Formula a) {
    detail::GameCfg root;
    root.state = g_.initial;
    for (auto& [agent, slot] : layout_) {
      auto const& av = vocab_.of(agent);
      root.ann.push_back(av.slots[static_cast<size_t>(slot)].index_of(
          ltl_canonical(av.desc.objectives[static_cast<size_t>(slot)])));
    }
    return eval_state(a, root);
  }

  Verdict check(Formula a, bool h_sufficient) {
    bool value = eval(a);
    if (h_sufficient) return value ? Verdict::True : Verdict::False;
    bool has_pos = false, has_neg = false;
    polarity(a, true, has_pos, has_neg);
    if (!has_pos && !has_neg) return value ? Verdict::True : Verdict::False;
    if (!has_neg && value) return Verdict::True;
    if (!has_pos && !value) return Verdict::False;
    return Verdict::Unknown;
  }

 private:
  // empty coalitions are exact regardless of the bound
  static void polarity(Formula f, bool positive, bool& has_pos, bool& has_neg) {
    switch (f->op) {
      case Op::Bot:
      case Op::Atom:
      case Op::PathAtom:
        return;
      case Op::Implies:
        polarity(f->lhs, !positive, has_pos, has_neg);
        polarity(f->rhs, positive, has_pos, has_neg);
        return;
      case Op::StratMod:
        if (!f->coalition.empty()) (positive ? has_pos : has_neg) = true;
        polarity(f->lhs, positive, has_pos, has_neg);
        return;
      case Op::Pref:
        polarity(f->lhs, positive, has_pos, has_neg);
        polarity(f->rhs, positive, has_pos, has_neg);
        return;
      default:
        if (f->lhs) polarity(f->lhs, positive, has_pos, has_neg);
        if (f->rhs) polarity(f->rhs, positive, has_pos, has_neg);
        return;
    }
  }

  std::vector<int> window_push(std::vector<int> const& w, int state) const {
    std::vector<int> out = w;
    out.push_back(state);
    if (static_cast<int>(out.size()) > h_ + 1) out.erase(out.begin());
    return out;
  }

  detail::GameCfg step(detail::GameCfg const& cfg, size_t move_code) const {
    detail::GameCfg next;
    next.state = g_.outcome[static_cast<size_t>(cfg.state)][move_code];
    next.ann.resize(cfg.ann.size());
    for (size_t i = 0; i < layout_.size(); ++i) {
      auto const& av = vocab_.of(layout_[i].first);
      next.ann[i] = av.slots[static_cast<size_t>(layout_[i].second)]
                        .step(cfg.ann[i], g_.labels[static_cast<size_t>(next.state)]);
    }
    for (auto& [sid, window] : cfg.ctx)
      next.ctx.emplace_back(sid, window_push(window, next.state));
    return next;
  }

  // moves allowed at a configuration; restricted configurations force every
  // context agent to its prescribed action
  bool move_allowed(detail::GameCfg const& cfg, size_t code, bool restricted) const {
    if (!restricted) return true;
    std::vector<int> decoded = g_.decode_move(code);
    for (auto& [sid, window] : cfg.ctx) {
      detail::BoundedStrategy const& s = strategies_[static_cast<size_t>(sid)];
      size_t prescribed = s.table.at(window);
      auto const& unit = units_[static_cast<size_t>(s.unit)];
      size_t rem = prescribed;
      for (int agent : unit) {
        size_t n = g_.actions.at(agent).size();
        if (decoded[static_cast<size_t>(g_.agent_pos(agent))] != static_cast<int>(rem % n))
          return false;
        rem /= n;
      }
    }
    return true;
  }

  // finite configuration graph rooted at cfg
  struct CfgGraph {
    std::vector<detail::GameCfg> nodes;
    std::vector<std::vector<int>> succ;
    std::map<detail::GameCfg, int> ids;
  };

  CfgGraph build_graph(detail::GameCfg const& root, bool restricted) const {
    CfgGraph gr;
    std::vector<int> queue;
    auto visit = [&](detail::GameCfg const& c) {
      auto it = gr.ids.find(c);
      if (it != gr.ids.end()) return it->second;
      int id = static_cast<int>(gr.nodes.size());
      gr.ids.emplace(c, id);
      gr.nodes.push_back(c);
      gr.succ.emplace_back();
      queue.push_back(id);
      return id;
    };
    visit(root);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int id = queue[qi];
      detail::GameCfg cfg = gr.nodes[static_cast<size_t>(id)];
      std::set<int> seen;
      for (size_t code = 0; code < g_.move_count(); ++code) {
        if (!move_allowed(cfg, code, restricted)) continue;
        detail::GameCfg nxt = step(cfg, code);
        int child = visit(nxt);
        if (seen.insert(child).second) gr.succ[static_cast<size_t>(id)].push_back(child);
      }
      if (gr.succ[static_cast<size_t>(id)].empty())
        throw CheckError("restricted configuration graph lost seriality");
    }
    return gr;
  }

  // does some path from cfg through the (restricted or full) graph satisfy b
  bool exists_play(Formula b, detail::GameCfg const& cfg, bool restricted) {
    if (b->state_level) return eval_state(b, cfg);
    CfgGraph gr = build_graph(cfg, restricted);
    std::map<int, Formula> pseudo;
    Formula ltl = ltlify_path(b, pseudo);
    auto atom_of = [&](int node, Formula atom) {
      auto it = pseudo.find(atom->id);
      if (it != pseudo.end())
        return eval_state(it->second, gr.nodes[static_cast<size_t>(node)]);
      return atom_in_state(gr.nodes[static_cast<size_t>(node)], atom->name);
    };
    detail::ExistsPathTableau tab(gr.succ, ltl, atom_of);
    return tab.run()[0];
  }

  bool atom_in_state(detail::GameCfg const& cfg, std::string const& name) const {
    if (!g_.props.count(name))
      throw CheckError("atom '" + name + "' is not in the model vocabulary");
    return g_.labels[static_cast<size_t>(cfg.state)].count(name) != 0;
  }

  Formula ltlify_path(Formula f, std::map<int, Formula>& pseudo) {
    if (f->state_level) {
      if (f->op == Op::Bot || f->op == Op::Atom) return f;
      Formula at = mk::atom("@" + std::to_string(f->id));
      pseudo.emplace(at->id, f);
      return at;
    }
    switch (f->op) {
      case Op::PathAtom:
        throw CheckError("free path variable ~" + f->name);
      case Op::Implies:
        return mk::implies(ltlify_path(f->lhs, pseudo), ltlify_path(f->rhs, pseudo));
      case Op::Next:
        return mk::next(ltlify_path(f->lhs, pseudo));
      case Op::Until:
        return mk::until(ltlify_path(f->lhs, pseudo), ltlify_path(f->rhs, pseudo));
      default:
        throw CheckError("unexpected path operator: " + print_formula(f));
    }
  }

  bool eval_state(Formula f, detail::GameCfg const& cfg) {
    auto key = std::make_pair(f->id, cfg);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool v = eval_state_raw(f, cfg);
    memo_.emplace(std::move(key), v);
    return v;
  }

  bool eval_state_raw(Formula f, detail::GameCfg const& cfg) {
    switch (f->op) {
      case Op::Bot:
        return false;
      case Op::Atom:
        return atom_in_state(cfg, f->name);
      case Op::Implies:
        return !eval_state(f->lhs, cfg) || eval_state(f->rhs, cfg);
      case Op::ExistsPath:
        return exists_play(f->lhs, cfg, false);
      case Op::Relax: {
        std::set<int> dropped(f->coalition.begin(), f->coalition.end());
        detail::GameCfg trimmed = cfg;
        trimmed.ctx.clear();
        for (auto& entry : cfg.ctx) {
          auto const& unit = units_[static_cast<size_t>(
              strategies_[static_cast<size_t>(entry.first)].unit)];
          bool in = false, out = false;
          for (int a : unit) (dropped.count(a) ? in : out) = true;
          if (in && out) throw CheckError("relax splits a bound coalition");
          if (!in) trimmed.ctx.push_back(entry);
        }
        return eval_state(f->lhs, trimmed);
      }
      case Op::StratMod:
        return eval_strat(f, cfg);
      case Op::Pref:
        return eval_pref(f, cfg);
      case Op::SimQuant:
      case Op::OneQuant:
        return eval_quant(f, cfg);
      default:
        throw CheckError("operator not supported by the bounded engine: " + print_formula(f));
    }
  }

  bool eval_strat(Formula f, detail::GameCfg const& cfg) {
    std::set<int> taken(f->coalition.begin(), f->coalition.end());
    std::vector<std::pair<int, std::vector<int>>> survivors;
    for (auto& entry : cfg.ctx) {
      auto const& unit =
          units_[static_cast<size_t>(strategies_[static_cast<size_t>(entry.first)].unit)];
      bool in = false, out = false;
      for (int a : unit) (taken.count(a) ? in : out) = true;
      if (in && out) throw CheckError("coalition splits a bound unit");
      if (!in) survivors.push_back(entry);
    }

    if (f->coalition.empty()) {
      detail::GameCfg base = cfg;
      base.ctx = survivors;
      return !exists_play(mk::not_(f->lhs), base, true);
    }

    // domain of the new strategies: windows reachable from here
    std::vector<std::vector<int>> windows;
    {
      std::set<std::vector<int>> seen;
      std::vector<std::vector<int>> queue{{cfg.state}};
      seen.insert(queue[0]);
      while (!queue.empty()) {
        std::vector<int> w = queue.back();
        queue.pop_back();
        windows.push_back(w);
        for (size_t code = 0; code < g_.move_count(); ++code) {
          int t = g_.outcome[static_cast<size_t>(w.back())][code];
          std::vector<int> nw = window_push(w, t);
          if (seen.insert(nw).second) queue.push_back(nw);
        }
      }
    }

    // profile space: per coalition member, |Act_i|^|windows|
    double log_size = 0;
    for (int agent : f->coalition)
      log_size += static_cast<double>(windows.size()) *
                  std::log2(static_cast<double>(g_.actions.at(agent).size()));
    if (log_size > std::log2(static_cast<double>(profile_cap_)))
      throw CheckError("bounded strategy enumeration too large; lower the bound");

    std::vector<size_t> sizes;
    for (int agent : f->coalition)
      for (size_t w = 0; w < windows.size(); ++w)
        sizes.push_back(g_.actions.at(agent).size());
    std::vector<size_t> pick(sizes.size(), 0);
    for (;;) {
      // materialize this profile
      std::vector<std::pair<int, std::vector<int>>> ctx = survivors;
      size_t cell = 0;
      for (int agent : f->coalition) {
        detail::BoundedStrategy s;
        s.unit = unit_id({agent});
        for (auto& w : windows) s.table[w] = pick[cell++];
        int sid = static_cast<int>(strategies_.size());
        strategies_.push_back(std::move(s));
        ctx.emplace_back(sid, std::vector<int>{cfg.state});
      }
      detail::GameCfg inner = cfg;
      inner.ctx = ctx;
      if (!exists_play(mk::not_(f->lhs), inner, true)) return true;

      size_t i = 0;
      while (i < pick.size() && ++pick[i] == sizes[i]) pick[i++] = 0;
      if (i == pick.size()) break;
    }
    return false;
  }

  bool eval_pref(Formula f, detail::GameCfg const& cfg) {
    if (contains_op(f->lhs, Op::StratMod) || contains_op(f->rhs, Op::StratMod) ||
        contains_op(f->lhs, Op::Relax) || contains_op(f->rhs, Op::Relax))
      throw CheckError("game modalities inside preference operands are not supported");
    auto const& av = vocab_.of(f->agent);
    int K = av.desc.size();
    std::vector<char> e1(static_cast<size_t>(K)), e2(static_cast<size_t>(K));
    for (int k = 0; k < K; ++k) {
      Formula member = member_formula(cfg, f->agent, k);
      e1[static_cast<size_t>(k)] =
          exists_play(mk::next(mk::and_(f->lhs, member)), cfg, false);
      e2[static_cast<size_t>(k)] =
          exists_play(mk::next(mk::and_(f->rhs, member)), cfg, false);
    }
    return pref_combine(f->variant, e1, e2, av.desc.better);
  }

  Formula member_formula(detail::GameCfg const& cfg, int agent, int slot) const {
    for (size_t i = 0; i < layout_.size(); ++i)
      if (layout_[i] == std::make_pair(agent, slot))
        return vocab_.of(agent).slots[static_cast<size_t>(slot)]
            .members[static_cast<size_t>(cfg.ann[i])];
    throw CheckError("no annotation for agent " + std::to_string(agent));
  }

  bool eval_quant(Formula f, detail::GameCfg const& cfg) {
    auto const& av = vocab_.of(f->agent);
    int K = av.desc.size();
    Formula separated = separate_one_ahead(f->lhs, f->name);
    std::vector<Formula> members;
    for (int k = 0; k < K; ++k) members.push_back(member_formula(cfg, f->agent, k));
    auto instantiate = [&](Formula cls) {
      Substitution sub;
      sub.path_vars[f->name] = cls;
      return substitute(separated, sub);
    };
    if (f->op == Op::OneQuant) {
      for (int k = 0; k < K; ++k)
        if (eval_state(instantiate(members[static_cast<size_t>(k)]), cfg)) return true;
      return false;
    }
    for (uint32_t set = 0; set < (uint32_t{1} << K); ++set) {
      std::vector<Formula> chosen;
      for (int k = 0; k < K; ++k)
        if (set >> k & 1) chosen.push_back(members[static_cast<size_t>(k)]);
      if (eval_state(instantiate(mk::or_n(chosen)), cfg)) return true;
    }
    return false;
  }

  int unit_id(std::vector<int> unit) {
    for (size_t i = 0; i < units_.size(); ++i)
      if (units_[i] == unit) return static_cast<int>(i);
    units_.push_back(std::move(unit));
    return static_cast<int>(units_.size()) - 1;
  }

  Cgm const& g_;
  int h_;
  size_t profile_cap_;
  PrefVocabulary vocab_;
  std::vector<std::pair<int, int>> layout_;
  std::vector<std::vector<int>> units_;
  std::vector<detail::BoundedStrategy> strategies_;
  std::map<std::pair<int, detail::GameCfg>, bool> memo_;
};

inline Verdict atlsc_bounded_check(Cgm const& g, Formula a, int h, bool h_sufficient = false,
                                   std::map<int, PreferenceDescription> const& descs = {}) {
  std::map<int, PreferenceDescription> use = descs;
  if (use.empty()) use = g.prefs;
  GameChecker checker(g, h, use);
  return checker.check(a, h_sufficient);
}

// ---------------------------------------------------------------------------
// Bounded evaluation of a translated formula on the move-storing unfolding.
// Each quantifier block of the translation binds the strategy variables of
// one coalition; enumeration installs, per bounded strategy, the valuation
// the encoding prescribes (destination marks for q-variables, current-state
// action codes for r-variables) and hands the rest to the CTL* engine.

namespace detail {

struct UnfoldGraph {
  KripkeModel view;                       // graph as a Kripke model
  std::vector<int> mstate;                // node -> unfolded-CGM state
  std::vector<std::vector<int>> window;   // node -> last <= h+2 states
};

// windows track base-model states so enumerated strategies coincide with the
// oracle's strategy class
inline UnfoldGraph build_unfold_graph(Cgm const& u, std::vector<int> const& base_of, int h) {
  UnfoldGraph gr;
  gr.view.props = u.props;
  std::map<std::pair<int, std::vector<int>>, int> ids;
  std::vector<std::pair<int, std::vector<int>>> queue;
  auto visit = [&](int s, std::vector<int> w) {
    auto key = std::make_pair(s, w);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(gr.view.states.size());
    ids.emplace(key, id);
    gr.view.states.push_back(u.states[static_cast<size_t>(s)] + "/" + std::to_string(id));
    gr.view.labels.push_back(u.labels[static_cast<size_t>(s)]);
    gr.view.succ.emplace_back();
    gr.mstate.push_back(s);
    gr.window.push_back(w);
    queue.emplace_back(s, std::move(w));
    return id;
  };
  visit(u.initial, {base_of[static_cast<size_t>(u.initial)]});
  gr.view.initial = 0;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    auto [s, w] = queue[qi];
    int id = ids.at({s, w});
    std::set<int> seen;
    for (size_t code = 0; code < u.move_count(); ++code) {
      int t = u.outcome[static_cast<size_t>(s)][code];
      std::vector<int> nw = w;
      nw.push_back(base_of[static_cast<size_t>(t)]);
      if (static_cast<int>(nw.size()) > h + 2) nw.erase(nw.begin());
      int child = visit(t, std::move(nw));
      if (seen.insert(child).second) gr.view.succ[static_cast<size_t>(id)].push_back(child);
    }
  }
  return gr;
}

class QctlStrategyChecker : public StateChecker {
 public:
  QctlStrategyChecker(UnfoldGraph const& gr, Cgm const& u,
                      std::map<int, QuantBlock const*> const& blocks, int h,
                      std::map<std::string, std::vector<char>> env)
      : StateChecker(gr.view), gr_(gr), u_(u), blocks_(blocks), h_(h), env_(std::move(env)) {}

 protected:
  bool atom_value(int state, std::string const& name) override {
    auto it = env_.find(name);
    if (it != env_.end()) return it->second[static_cast<size_t>(state)];
    return StateChecker::atom_value(state, name);
  }

  std::vector<char> eval_extra(Formula f) override {
    if (f->op != Op::ExistsProp) return StateChecker::eval_extra(f);
    auto bit = blocks_.find(f->id);
    if (bit == blocks_.end())
      throw CheckError("quantifier is not a strategy block of the translation: exists " +
                       f->name);
    QuantBlock const& block = *bit->second;
    // strip the block's own exists chain
    Formula body = f;
    for (int i = 0; i < block.var_count; ++i) {
      if (body->op != Op::ExistsProp) throw CheckError("malformed strategy block");
      body = body->lhs;
    }
    size_t n = gr_.view.states.size();
    std::vector<char> out(n, 0);

    // window suffix of length <= h+1 ending at the node
    auto key_window = [&](std::vector<int> const& w, bool predecessor) {
      std::vector<int> k = w;
      if (predecessor) {
        if (k.size() < 2) return std::vector<int>{};  // root has no move into it
        k.pop_back();
      }
      while (static_cast<int>(k.size()) > h_ + 1) k.erase(k.begin());
      return k;
    };

    // enumerate one bounded strategy per unit
    std::vector<std::vector<std::vector<int>>> domains;  // per unit: window keys
    std::vector<size_t> action_counts;
    for (auto& [agents, vars] : block.units) {
      std::set<std::vector<int>> keys;
      for (size_t node = 0; node < n; ++node) {
        auto k = key_window(gr_.window[node], false);
        if (!k.empty()) keys.insert(k);
      }
      domains.emplace_back(keys.begin(), keys.end());
      size_t count = 1;
      for (int a : agents) count *= u_.actions.at(a).size();
      action_counts.push_back(count);
    }

    size_t cells = 0;
    for (auto& d : domains) cells += d.size();
    double log_size = 0;
    for (size_t ui = 0; ui < domains.size(); ++ui)
      log_size += static_cast<double>(domains[ui].size()) *
                  std::log2(static_cast<double>(action_counts[ui]));
    if (log_size > 22) throw CheckError("strategy enumeration too large; lower the bound");

    std::vector<size_t> sizes;
    for (size_t ui = 0; ui < domains.size(); ++ui)
      for (size_t w = 0; w < domains[ui].size(); ++w) sizes.push_back(action_counts[ui]);
    std::vector<size_t> pick(cells, 0);
    for (;;) {
      // install the encoding's valuation for this profile
      std::map<std::string, std::vector<char>> env = env_;
      size_t cell0 = 0;
      for (size_t ui = 0; ui < block.units.size(); ++ui) {
        auto const& [agents, vars] = block.units[ui];
        std::map<std::vector<int>, size_t> table;
        for (size_t w = 0; w < domains[ui].size(); ++w)
          table[domains[ui][w]] = pick[cell0 + w];
        cell0 += domains[ui].size();
        bool log_block = block.kind == QuantBlock::PerAgentLog ||
                         block.kind == QuantBlock::MergedLog;
        if (!log_block) {
          std::vector<char> val(n, 0);
          for (size_t node = 0; node < n; ++node) {
            auto pk = key_window(gr_.window[node], true);
            if (pk.empty()) continue;
            size_t prescribed = table.at(pk);
            val[node] = stored_move_matches(gr_.mstate[node], agents, prescribed);
          }
          env[vars[0]] = std::move(val);
        } else {
          for (size_t bit = 0; bit < vars.size(); ++bit) {
            std::vector<char> val(n, 0);
            for (size_t node = 0; node < n; ++node) {
              auto ck = key_window(gr_.window[node], false);
              val[node] = table.at(ck) >> bit & 1;
            }
            env[vars[bit]] = std::move(val);
          }
        }
      }
      QctlStrategyChecker child(gr_, u_, blocks_, h_, std::move(env));
      auto const& inner = child.sat(body);
      bool all = true;
      for (size_t node = 0; node < n; ++node) {
        if (inner[node]) out[node] = 1;
        all = all && out[node];
      }
      if (all) break;
      size_t i = 0;
      while (i < pick.size() && ++pick[i] == sizes[i]) pick[i++] = 0;
      if (i == pick.size()) break;
    }
    return out;
  }

 private:
  // does the move stored at this unfolded state (read off its action atoms)
  // assign the prescribed code to the unit's agents
  bool stored_move_matches(int mstate, std::vector<int> const& agents, size_t code) const {
    size_t rem = code;
    for (int agent : agents) {
      auto const& acts = u_.actions.at(agent);
      size_t want = rem % acts.size();
      rem /= acts.size();
      if (!u_.labels[static_cast<size_t>(mstate)].count(acts[want])) return false;
    }
    return true;
  }

  UnfoldGraph const& gr_;
  Cgm const& u_;
  std::map<int, QuantBlock const*> const& blocks_;
  int h_;
  std::map<std::string, std::vector<char>> env_;
};

}  // namespace detail

// Evaluate the translated formula on (the tree unfolding of) the move-storing
// model, with propositional quantifiers restricted to bounded strategies.
inline bool qctl_strategy_eval(AtlscTranslation const& tr, int h) {
  detail::UnfoldGraph gr = detail::build_unfold_graph(tr.unfolded, tr.unfolded_base, h);
  std::map<int, QuantBlock const*> blocks;
  for (auto& b : tr.blocks) blocks.emplace(b.head_id, &b);
  detail::QctlStrategyChecker checker(gr, tr.unfolded, blocks, h, {});
  return checker.holds_initially(tr.formula);
}

}  // namespace atlscpref
