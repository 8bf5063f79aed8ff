#pragma once

// Finite models: concurrent game models, Kripke models, preference
// descriptions, and the model constructions the translations rely on
// (CGM -> Kripke projection, the move-storing unfolding, and the q-labeled
// product for preference checking).

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "atlscpref/formula.hpp"
#include "atlscpref/gnf.hpp"
#include "atlscpref/parser.hpp"
#include "atlscpref/printer.hpp"

namespace atlscpref {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite description of a preference relation: a full system of LTL
// objectives B_1..B_K plus the set of ordered index pairs (k1,k2) such that
// B_k1 < B_k2 holds at the initial state. Indices are 1-based.
struct PreferenceDescription {
  std::vector<Formula> objectives;
  std::set<std::pair<int, int>> better;

  int size() const { return static_cast<int>(objectives.size()); }
};

struct KripkeModel {
  std::vector<std::string> states;
  int initial = 0;
  std::vector<std::vector<int>> succ;
  std::vector<std::set<std::string>> labels;
  std::set<std::string> props;
  std::map<int, PreferenceDescription> prefs;

  int index_of(std::string const& name) const {
    for (size_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return static_cast<int>(i);
    throw ModelError("unknown state " + name);
  }

  void check_serial() const {
    for (size_t i = 0; i < states.size(); ++i)
      if (succ[i].empty())
        throw ModelError("state " + states[i] + " has no successor (model must be serial)");
  }
};

struct Cgm {
  std::vector<std::string> states;
  int initial = 0;
  std::vector<int> agents;                          // sorted
  std::map<int, std::vector<std::string>> actions;  // non-empty per agent
  std::vector<std::vector<int>> outcome;            // [state][move_code] -> state
  std::vector<std::set<std::string>> labels;
  std::set<std::string> props;
  std::map<int, PreferenceDescription> prefs;

  size_t move_count() const {
    size_t n = 1;
    for (int a : agents) n *= actions.at(a).size();
    return n;
  }

  // mixed-radix move codes, agents in `agents` order, first agent = least
  // significant digit
  std::vector<int> decode_move(size_t code) const {
    std::vector<int> m;
    for (int a : agents) {
      size_t k = actions.at(a).size();
      m.push_back(static_cast<int>(code % k));
      code /= k;
    }
    return m;
  }

  size_t encode_move(std::vector<int> const& m) const {
    size_t code = 0, mul = 1;
    for (size_t i = 0; i < agents.size(); ++i) {
      code += static_cast<size_t>(m[i]) * mul;
      mul *= actions.at(agents[i]).size();
    }
    return code;
  }

  int agent_pos(int agent) const {
    for (size_t i = 0; i < agents.size(); ++i)
      if (agents[i] == agent) return static_cast<int>(i);
    throw ModelError("unknown agent " + std::to_string(agent));
  }

  int index_of(std::string const& name) const {
    for (size_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return static_cast<int>(i);
    throw ModelError("unknown state " + name);
  }
};

// ---------------------------------------------------------------------------
// Model file format, one section entry per line ('#' starts a comment):
//
//   agents: 1 2
//   actions 1: a b
//   actions 2: c d
//   states: w0 w1
//   init: w0
//   label w0: p
//   props: p q                      optional extra vocabulary
//   outcome w0 a c -> w1            one line per (state, global move)
//   pref 1 objective: G p           repeated; builds agent 1's objective list
//   pref 1 order: 2 < 1             indices into that list, 1-based
//
// Kripke models replace agents/actions/outcome with `trans w0 -> w1` lines.

struct LoadedModel {
  std::optional<Cgm> cgm;
  std::optional<KripkeModel> kripke;

  bool is_cgm() const { return cgm.has_value(); }
};

namespace detail {

inline bool valid_symbol(std::string const& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::islower(static_cast<unsigned char>(c)) &&
        !std::isdigit(static_cast<unsigned char>(c)) && c != '_')
      return false;
  return true;
}

inline std::vector<std::string> split_ws(std::string const& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

inline void validate_objective(Formula b) {
  if (!is_ltl(b)) throw ModelError("preference objectives must be LTL: " + print_formula(b));
}

}  // namespace detail

inline LoadedModel load_model(std::string const& text) {
  std::vector<int> agents;
  std::map<int, std::vector<std::string>> actions;
  std::vector<std::string> states;
  std::optional<std::string> init;
  std::map<std::string, std::set<std::string>> labels;
  std::set<std::string> props;
  std::map<int, PreferenceDescription> prefs;
  struct OutcomeLine {
    std::string src;
    std::vector<std::string> moves;
    std::string dst;
  };
  std::vector<OutcomeLine> outcomes;
  std::vector<std::pair<std::string, std::string>> trans;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  auto err = [&](std::string const& msg) -> ModelError {
    return ModelError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto words = detail::split_ws(raw);
    if (words.empty()) continue;
    std::string head = words[0];
    auto rest_after = [&](size_t n) {
      std::string r;
      for (size_t i = n; i < words.size(); ++i) {
        if (!r.empty()) r += " ";
        r += words[i];
      }
      return r;
    };
    if (head == "agents:") {
      for (size_t i = 1; i < words.size(); ++i) agents.push_back(std::stoi(words[i]));
    } else if (head == "actions") {
      if (words.size() < 3 || words[1].back() != ':') throw err("expected 'actions <agent>: ...'");
      int agent = std::stoi(words[1].substr(0, words[1].size() - 1));
      for (size_t i = 2; i < words.size(); ++i) actions[agent].push_back(words[i]);
    } else if (head == "states:") {
      for (size_t i = 1; i < words.size(); ++i) states.push_back(words[i]);
    } else if (head == "init:") {
      if (words.size() != 2) throw err("expected 'init: <state>'");
      init = words[1];
    } else if (head == "props:") {
      for (size_t i = 1; i < words.size(); ++i) props.insert(words[i]);
    } else if (head == "label") {
      if (words.size() < 2 || words[1].back() != ':') throw err("expected 'label <state>: ...'");
      std::string st = words[1].substr(0, words[1].size() - 1);
      for (size_t i = 2; i < words.size(); ++i) labels[st].insert(words[i]);
    } else if (head == "outcome") {
      if (words.size() < 4) throw err("expected 'outcome <state> <actions...> -> <state>'");
      OutcomeLine o;
      o.src = words[1];
      size_t i = 2;
      while (i < words.size() && words[i] != "->") o.moves.push_back(words[i++]);
      if (i >= words.size() || words[i] != "->" || i + 2 != words.size())
        throw err("expected '-> <state>' at the end of the outcome line");
      o.dst = words[i + 1];
      outcomes.push_back(std::move(o));
    } else if (head == "trans") {
      if (words.size() != 4 || words[2] != "->") throw err("expected 'trans <state> -> <state>'");
      trans.emplace_back(words[1], words[3]);
    } else if (head == "pref") {
      if (words.size() < 3) throw err("expected 'pref <agent> objective:|order: ...'");
      int agent = std::stoi(words[1]);
      if (words[2] == "objective:") {
        Formula b;
        try {
          b = parse_formula(rest_after(3));
        } catch (ParseError const& e) {
          throw err(std::string("objective: ") + e.what());
        }
        detail::validate_objective(b);
        prefs[agent].objectives.push_back(b);
      } else if (words[2] == "order:") {
        if (words.size() != 6 || words[4] != "<") throw err("expected 'order: <k1> < <k2>'");
        prefs[agent].better.emplace(std::stoi(words[3]), std::stoi(words[5]));
      } else {
        throw err("expected 'objective:' or 'order:' after the agent id");
      }
    } else {
      throw err("unknown section '" + head + "'");
    }
  }

  if (states.empty()) throw ModelError("no states declared");
  if (!init) throw ModelError("no initial state declared");
  for (auto& [agent, d] : prefs)
    for (auto& [k1, k2] : d.better)
      if (k1 < 1 || k1 > d.size() || k2 < 1 || k2 > d.size())
        throw ModelError("pref order index out of range for agent " + std::to_string(agent));

  bool is_cgm = !agents.empty() || !outcomes.empty();
  if (is_cgm && !trans.empty()) throw ModelError("model mixes 'outcome' and 'trans' sections");

  auto state_index = [&](std::string const& name) {
    for (size_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return static_cast<int>(i);
    throw ModelError("unknown state " + name);
  };

  std::set<std::string> declared_props = props;
  for (auto& [st, ls] : labels) {
    state_index(st);
    declared_props.insert(ls.begin(), ls.end());
  }
  for (std::string const& p : declared_props)
    if (!detail::valid_symbol(p)) throw ModelError("proposition '" + p + "' is not a valid atom");

  if (!is_cgm) {
    KripkeModel k;
    k.states = states;
    k.initial = state_index(*init);
    k.succ.resize(states.size());
    k.labels.resize(states.size());
    for (auto& [st, ls] : labels) k.labels[static_cast<size_t>(state_index(st))] = ls;
    k.props = declared_props;
    k.prefs = prefs;
    for (auto& [a, b] : trans) {
      int s = state_index(a), t = state_index(b);
      auto& row = k.succ[static_cast<size_t>(s)];
      if (std::find(row.begin(), row.end(), t) == row.end()) row.push_back(t);
    }
    k.check_serial();
    return {std::nullopt, std::move(k)};
  }

  Cgm g;
  g.states = states;
  g.initial = state_index(*init);
  std::sort(agents.begin(), agents.end());
  g.agents = agents;
  if (g.agents.empty()) throw ModelError("a game model needs an 'agents:' section");
  std::set<std::string> action_names;
  for (int a : g.agents) {
    auto it = actions.find(a);
    if (it == actions.end() || it->second.empty())
      throw ModelError("agent " + std::to_string(a) + " has no actions");
    for (auto& n : it->second) {
      if (!detail::valid_symbol(n)) throw ModelError("action '" + n + "' is not a valid atom");
      if (!action_names.insert(n).second)
        throw ModelError("action name '" + n + "' is used twice");
      if (declared_props.count(n))
        throw ModelError("action name '" + n + "' collides with a proposition");
    }
  }
  g.actions = actions;
  g.labels.resize(states.size());
  for (auto& [st, ls] : labels) g.labels[static_cast<size_t>(state_index(st))] = ls;
  g.props = declared_props;
  g.prefs = prefs;

  size_t moves = g.move_count();
  g.outcome.assign(states.size(), std::vector<int>(moves, -1));
  for (auto& o : outcomes) {
    int s = state_index(o.src), t = state_index(o.dst);
    if (o.moves.size() != g.agents.size())
      throw ModelError("outcome from " + o.src + " lists " + std::to_string(o.moves.size()) +
                       " actions for " + std::to_string(g.agents.size()) + " agents");
    std::vector<int> m;
    for (size_t i = 0; i < g.agents.size(); ++i) {
      auto const& acts = g.actions.at(g.agents[i]);
      auto it = std::find(acts.begin(), acts.end(), o.moves[i]);
      if (it == acts.end())
        throw ModelError("action '" + o.moves[i] + "' does not belong to agent " +
                         std::to_string(g.agents[i]));
      m.push_back(static_cast<int>(it - acts.begin()));
    }
    int& cell = g.outcome[static_cast<size_t>(s)][g.encode_move(m)];
    if (cell != -1) throw ModelError("duplicate outcome line from " + o.src);
    cell = t;
  }
  for (size_t s = 0; s < states.size(); ++s)
    for (size_t c = 0; c < moves; ++c)
      if (g.outcome[s][c] == -1) {
        auto m = g.decode_move(c);
        std::string mv;
        for (size_t i = 0; i < g.agents.size(); ++i)
          mv += (i ? " " : "") + g.actions.at(g.agents[i])[static_cast<size_t>(m[i])];
        throw ModelError("outcome missing for state " + states[s] + " and move '" + mv +
                         "' (the outcome function must be total)");
      }
  return {std::move(g), std::nullopt};
}

inline std::string model_to_text(Cgm const& g) {
  std::ostringstream out;
  out << "agents:";
  for (int a : g.agents) out << " " << a;
  out << "\n";
  for (int a : g.agents) {
    out << "actions " << a << ":";
    for (auto& n : g.actions.at(a)) out << " " << n;
    out << "\n";
  }
  out << "states:";
  for (auto& s : g.states) out << " " << s;
  out << "\ninit: " << g.states[static_cast<size_t>(g.initial)] << "\n";
  for (size_t s = 0; s < g.states.size(); ++s)
    if (!g.labels[s].empty()) {
      out << "label " << g.states[s] << ":";
      for (auto& p : g.labels[s]) out << " " << p;
      out << "\n";
    }
  for (size_t s = 0; s < g.states.size(); ++s)
    for (size_t c = 0; c < g.move_count(); ++c) {
      auto m = g.decode_move(c);
      out << "outcome " << g.states[s];
      for (size_t i = 0; i < g.agents.size(); ++i)
        out << " " << g.actions.at(g.agents[i])[static_cast<size_t>(m[i])];
      out << " -> " << g.states[static_cast<size_t>(g.outcome[s][c])] << "\n";
    }
  for (auto& [agent, d] : g.prefs) {
    for (Formula b : d.objectives)
      out << "pref " << agent << " objective: " << print_formula(b) << "\n";
    for (auto& [k1, k2] : d.better)
      out << "pref " << agent << " order: " << k1 << " < " << k2 << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// CGM -> Kripke projection: R(w,v) iff some global move takes w to v.

inline KripkeModel to_kripke(Cgm const& g) {
  KripkeModel k;
  k.states = g.states;
  k.initial = g.initial;
  k.labels = g.labels;
  k.props = g.props;
  k.prefs = g.prefs;
  k.succ.resize(g.states.size());
  for (size_t s = 0; s < g.states.size(); ++s) {
    std::set<int> seen;
    for (size_t c = 0; c < g.move_count(); ++c)
      if (seen.insert(g.outcome[s][c]).second) k.succ[s].push_back(g.outcome[s][c]);
  }
  k.check_serial();
  return k;
}

// ---------------------------------------------------------------------------
// Move-storing unfolding: states remember the last global move, and the move's
// actions label their destination states. The fresh initial state stores no
// move and satisfies no action atom.

inline Cgm unfold1(Cgm const& g) {
  Cgm u;
  u.agents = g.agents;
  u.actions = g.actions;
  u.prefs = g.prefs;
  u.props = g.props;
  for (int a : g.agents)
    for (auto& n : g.actions.at(a)) u.props.insert(n);

  size_t moves = g.move_count();
  // state 0 is (w_I, *); state 1 + w*moves + c is (w, move c)
  auto pair_id = [&](int w, size_t c) {
    return static_cast<int>(1 + static_cast<size_t>(w) * moves + c);
  };
  u.states.push_back(g.states[static_cast<size_t>(g.initial)] + "@-");
  u.labels.push_back(g.labels[static_cast<size_t>(g.initial)]);
  for (size_t w = 0; w < g.states.size(); ++w)
    for (size_t c = 0; c < moves; ++c) {
      auto m = g.decode_move(c);
      std::string name = g.states[w] + "@";
      std::set<std::string> lab = g.labels[w];
      for (size_t i = 0; i < g.agents.size(); ++i) {
        std::string const& act = g.actions.at(g.agents[i])[static_cast<size_t>(m[i])];
        name += (i ? "." : "") + act;
        lab.insert(act);
      }
      u.states.push_back(name);
      u.labels.push_back(lab);
    }
  u.initial = 0;
  u.outcome.assign(u.states.size(), std::vector<int>(moves, -1));
  for (size_t c = 0; c < moves; ++c)
    u.outcome[0][c] = pair_id(g.outcome[static_cast<size_t>(g.initial)][c], c);
  for (size_t w = 0; w < g.states.size(); ++w)
    for (size_t b = 0; b < moves; ++b)
      for (size_t c = 0; c < moves; ++c)
        u.outcome[static_cast<size_t>(pair_id(static_cast<int>(w), b))][c] =
            pair_id(g.outcome[w][c], c);
  return u;
}

// projection of unfold1's states back to the base model, in unfold1's layout
inline std::vector<int> unfold1_base_map(Cgm const& base) {
  std::vector<int> out;
  out.push_back(base.initial);
  for (size_t w = 0; w < base.states.size(); ++w)
    for (size_t c = 0; c < base.move_count(); ++c) out.push_back(static_cast<int>(w));
  return out;
}

// ---------------------------------------------------------------------------
// Per-agent preference bookkeeping: closure tables for every objective slot
// plus fresh q / r names for the labeling constructions.

struct SlotNaming {
  std::vector<std::string> q_names;  // one per closure member
  std::vector<std::string> r_names;  // ceil(log2 |members|) independent vars
};

struct AgentPrefVocab {
  PreferenceDescription desc;
  std::vector<ClosureTable> slots;
  std::vector<SlotNaming> naming;

  int slot_count() const { return static_cast<int>(slots.size()); }
};

struct PrefVocabulary {
  std::map<int, AgentPrefVocab> agents;

  AgentPrefVocab const& of(int agent) const {
    auto it = agents.find(agent);
    if (it == agents.end())
      throw ModelError("no preference description for agent " + std::to_string(agent));
    return it->second;
  }
};

inline PrefVocabulary make_pref_vocab(std::map<int, PreferenceDescription> const& descs,
                                      FreshVarSupply& supply) {
  PrefVocabulary v;
  for (auto& [agent, d] : descs) {
    AgentPrefVocab av;
    av.desc = d;
    for (int k = 0; k < d.size(); ++k) {
      av.slots.push_back(make_closure_table(d.objectives[static_cast<size_t>(k)]));
      SlotNaming names;
      std::string base = "q" + std::to_string(agent) + "_" + std::to_string(k + 1);
      for (size_t j = 0; j < av.slots.back().members.size(); ++j)
        names.q_names.push_back(supply.fresh(base));
      size_t m = av.slots.back().members.size();
      size_t bits = 0;
      while ((size_t{1} << bits) < m) ++bits;
      std::string rbase = "r" + std::to_string(agent) + "_" + std::to_string(k + 1);
      for (size_t s = 0; s < bits; ++s) names.r_names.push_back(supply.fresh(rbase));
      av.naming.push_back(std::move(names));
    }
    v.agents.emplace(agent, std::move(av));
  }
  return v;
}

// ---------------------------------------------------------------------------
// q-labeled product M_B: every reachable state carries, per agent and
// objective slot, the closure member currently describing that slot's
// indiscernibility class; the label follows the GNF tail selected by the
// destination state's valuation.

struct AnnotatedModel {
  KripkeModel model;
  std::vector<int> base_state;            // product node -> original state
  std::vector<std::vector<int>> members;  // product node -> flattened (agent, slot) member
  std::vector<std::pair<int, int>> layout;  // flattened index -> (agent, slot)

  int member_at(int node, int agent, int slot) const {
    for (size_t i = 0; i < layout.size(); ++i)
      if (layout[i].first == agent && layout[i].second == slot)
        return members[static_cast<size_t>(node)][i];
    throw ModelError("no such agent/slot in annotation");
  }
};

inline AnnotatedModel build_mb_product(KripkeModel const& k, PrefVocabulary const& vocab,
                                       bool add_q_labels) {
  AnnotatedModel out;
  out.model.props = k.props;
  out.model.prefs = {};
  for (auto& [agent, av] : vocab.agents)
    for (int slot = 0; slot < av.slot_count(); ++slot) out.layout.emplace_back(agent, slot);
  if (add_q_labels)
    for (auto& [agent, av] : vocab.agents)
      for (auto& names : av.naming)
        for (auto& q : names.q_names) out.model.props.insert(q);

  std::vector<int> initial_members;
  for (auto& [agent, slot] : out.layout) {
    auto& av = vocab.of(agent);
    Formula seed = ltl_canonical(av.desc.objectives[static_cast<size_t>(slot)]);
    initial_members.push_back(av.slots[static_cast<size_t>(slot)].index_of(seed));
  }

  std::map<std::pair<int, std::vector<int>>, int> ids;
  std::vector<std::pair<int, std::vector<int>>> queue;
  auto visit = [&](int base, std::vector<int> members) {
    auto key = std::make_pair(base, members);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(out.model.states.size());
    ids.emplace(key, id);
    std::string name = k.states[static_cast<size_t>(base)];
    for (int m : members) name += "+" + std::to_string(m);
    out.model.states.push_back(name);
    std::set<std::string> lab = k.labels[static_cast<size_t>(base)];
    if (add_q_labels)
      for (size_t i = 0; i < out.layout.size(); ++i) {
        auto& av = vocab.of(out.layout[i].first);
        lab.insert(av.naming[static_cast<size_t>(out.layout[i].second)]
                       .q_names[static_cast<size_t>(members[i])]);
      }
    out.model.labels.push_back(std::move(lab));
    out.base_state.push_back(base);
    out.members.push_back(members);
    out.model.succ.emplace_back();
    queue.emplace_back(base, std::move(members));
    return id;
  };

  visit(k.initial, initial_members);
  out.model.initial = 0;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    auto [base, members] = queue[qi];
    int id = ids.at({base, members});
    for (int t : k.succ[static_cast<size_t>(base)]) {
      std::vector<int> nm(members.size());
      for (size_t i = 0; i < out.layout.size(); ++i) {
        auto& av = vocab.of(out.layout[i].first);
        nm[i] = av.slots[static_cast<size_t>(out.layout[i].second)]
                    .step(members[i], k.labels[static_cast<size_t>(t)]);
      }
      int child = visit(t, std::move(nm));  // may grow succ
      out.model.succ[static_cast<size_t>(id)].push_back(child);
    }
  }
  out.model.check_serial();
  return out;
}

// Single-description form: the q-labeled Kripke product for one preference
// description under a given naming scheme.
inline KripkeModel build_mb(KripkeModel const& k, PreferenceDescription const& d,
                            FreshVarSupply& supply) {
  PrefVocabulary v = make_pref_vocab({{1, d}}, supply);
  return build_mb_product(k, v, true).model;
}

// ---------------------------------------------------------------------------
// Objective update along a history. The path starts at the initial state; the
// formulas returned describe the indiscernibility classes after traversing it
// (GNF tails selected by each destination valuation, in order).

inline std::vector<Formula> pref_update_path(PreferenceDescription const& d,
                                             std::vector<std::string> const& path,
                                             KripkeModel const& m) {
  if (path.empty()) return d.objectives;
  int at = m.index_of(path[0]);
  if (at != m.initial) throw ModelError("path must start at the initial state");
  std::vector<ClosureTable> slots;
  std::vector<int> cur;
  for (Formula b : d.objectives) {
    slots.push_back(make_closure_table(b));
    cur.push_back(slots.back().index_of(ltl_canonical(b)));
  }
  for (size_t i = 1; i < path.size(); ++i) {
    int t = m.index_of(path[i]);
    auto const& row = m.succ[static_cast<size_t>(at)];
    if (std::find(row.begin(), row.end(), t) == row.end())
      throw ModelError("path step " + path[i - 1] + " -> " + path[i] +
                       " is not a transition");
    for (size_t k = 0; k < slots.size(); ++k)
      cur[k] = slots[k].step(cur[k], m.labels[static_cast<size_t>(t)]);
    at = t;
  }
  std::vector<Formula> out;
  for (size_t k = 0; k < slots.size(); ++k)
    out.push_back(slots[k].members[static_cast<size_t>(cur[k])]);
  return out;
}

// Optional lint: the pair set should normally be consistent with a strict
// order. Violations are reported, never enforced.
inline std::vector<std::string> lint_preference(PreferenceDescription const& d) {
  std::vector<std::string> warnings;
  for (auto& [k1, k2] : d.better)
    if (k1 == k2)
      warnings.push_back("pair (" + std::to_string(k1) + "," + std::to_string(k2) +
                         ") makes the preference reflexive");
  for (auto& [a, b] : d.better)
    for (auto& [c, e] : d.better)
      if (b == c && !d.better.count({a, e}) && a != e)
        warnings.push_back("pairs (" + std::to_string(a) + "," + std::to_string(b) + ") and (" +
                           std::to_string(c) + "," + std::to_string(e) +
                           ") have no transitive closure pair");
  return warnings;
}

}  // namespace atlscpref
