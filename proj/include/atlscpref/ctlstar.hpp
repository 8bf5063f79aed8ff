#pragma once

// Exact explicit-state CTL* model checking.
//
// State formulas are labeled recursively; each E-subformula is decided by a
// tableau product: maximal state subformulas inside the path formula become
// pseudo-atoms, the remaining pure-LTL obligation set is tracked per state,
// and satisfaction amounts to reaching a fair SCC of the product. Exactness
// is the contract; the construction is the standard closure automaton.

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "atlscpref/formula.hpp"
#include "atlscpref/model.hpp"
#include "atlscpref/printer.hpp"

namespace atlscpref {

class CheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// ∃-path satisfaction core: does some infinite path from each state satisfy
// the given pure-LTL formula (atoms resolved through the provider)?
class ExistsPathTableau {
 public:
  ExistsPathTableau(std::vector<std::vector<int>> const& succ, Formula ltl,
                    std::function<bool(int, Formula)> atom_value)
      : succ_(succ), atom_value_(std::move(atom_value)) {
    index(ltl);
    root_ = slot_.at(ltl->id);
    temporal_count_ = 0;
    for (Formula f : order_)
      if (f->op == Op::Next || f->op == Op::Until) temporal_ix_[f->id] = temporal_count_++;
    if (temporal_count_ > 20) throw CheckError("path formula has too many temporal operators");
  }

  std::vector<char> run() {
    size_t n_states = succ_.size();
    size_t width = size_t{1} << temporal_count_;
    size_t n_nodes = n_states * width;

    // derived truth of every subformula per product node
    std::vector<std::vector<char>> truth(n_nodes);
    for (size_t s = 0; s < n_states; ++s)
      for (size_t bits = 0; bits < width; ++bits)
        truth[s * width + bits] = derive(static_cast<int>(s), bits);

    // edges under the X / U transition constraints
    std::vector<std::vector<int>> edges(n_nodes);
    for (size_t s = 0; s < n_states; ++s)
      for (size_t bits = 0; bits < width; ++bits) {
        size_t from = s * width + bits;
        for (int t : succ_[s])
          for (size_t nbits = 0; nbits < width; ++nbits) {
            size_t to = static_cast<size_t>(t) * width + nbits;
            if (consistent(truth[from], bits, truth[to])) edges[from].push_back(static_cast<int>(to));
          }
      }

    std::vector<int> comp = scc(edges, n_nodes);
    int n_comp = 0;
    for (size_t i = 0; i < n_nodes; ++i) n_comp = std::max(n_comp, comp[i] + 1);

    // a component is fair when it is nontrivial and, for every until, touches
    // a node where the until is discharged
    std::vector<char> nontrivial(static_cast<size_t>(n_comp), 0);
    for (size_t i = 0; i < n_nodes; ++i)
      for (int t : edges[i])
        if (comp[static_cast<size_t>(t)] == comp[i]) nontrivial[static_cast<size_t>(comp[i])] = 1;
    std::vector<Formula> untils;
    for (Formula f : order_)
      if (f->op == Op::Until) untils.push_back(f);
    std::vector<std::vector<char>> discharged(
        static_cast<size_t>(n_comp), std::vector<char>(untils.size(), 0));
    for (size_t i = 0; i < n_nodes; ++i)
      for (size_t u = 0; u < untils.size(); ++u) {
        bool holds = truth[i][static_cast<size_t>(slot_.at(untils[u]->id))];
        bool done = truth[i][static_cast<size_t>(slot_.at(untils[u]->rhs->id))];
        if (!holds || done) discharged[static_cast<size_t>(comp[i])][u] = 1;
      }
    std::vector<char> fair(static_cast<size_t>(n_comp), 0);
    for (int c = 0; c < n_comp; ++c) {
      fair[static_cast<size_t>(c)] = nontrivial[static_cast<size_t>(c)];
      for (size_t u = 0; u < untils.size(); ++u)
        fair[static_cast<size_t>(c)] &= discharged[static_cast<size_t>(c)][u];
    }

    // nodes that can reach a fair component
    std::vector<std::vector<int>> redges(n_nodes);
    for (size_t i = 0; i < n_nodes; ++i)
      for (int t : edges[i]) redges[static_cast<size_t>(t)].push_back(static_cast<int>(i));
    std::vector<char> good(n_nodes, 0);
    std::vector<int> stack;
    for (size_t i = 0; i < n_nodes; ++i)
      if (fair[static_cast<size_t>(comp[i])]) {
        good[i] = 1;
        stack.push_back(static_cast<int>(i));
      }
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int p : redges[static_cast<size_t>(v)])
        if (!good[static_cast<size_t>(p)]) {
          good[static_cast<size_t>(p)] = 1;
          stack.push_back(p);
        }
    }

    std::vector<char> result(n_states, 0);
    for (size_t s = 0; s < n_states; ++s)
      for (size_t bits = 0; bits < width; ++bits) {
        size_t node = s * width + bits;
        if (good[node] && truth[node][static_cast<size_t>(root_)]) {
          result[s] = 1;
          break;
        }
      }
    return result;
  }

 private:
  void index(Formula f) {
    if (slot_.count(f->id)) return;
    switch (f->op) {
      case Op::Bot:
      case Op::Atom:
        break;
      case Op::Implies:
      case Op::Until:
        index(f->lhs);
        index(f->rhs);
        break;
      case Op::Next:
        index(f->lhs);
        break;
      default:
        throw CheckError("tableau expects pure LTL, got " + print_formula(f));
    }
    slot_[f->id] = static_cast<int>(order_.size());
    order_.push_back(f);
  }

  // truth of every subformula at a product node; the bits assign X-values to
  // Next nodes and next-step values to Until nodes
  std::vector<char> derive(int state, size_t bits) {
    std::vector<char> v(order_.size());
    for (size_t i = 0; i < order_.size(); ++i) {
      Formula f = order_[i];
      switch (f->op) {
        case Op::Bot:
          v[i] = 0;
          break;
        case Op::Atom:
          v[i] = atom_value_(state, f);
          break;
        case Op::Implies:
          v[i] = !v[static_cast<size_t>(slot_.at(f->lhs->id))] ||
                 v[static_cast<size_t>(slot_.at(f->rhs->id))];
          break;
        case Op::Next:
          v[i] = bits >> temporal_ix_.at(f->id) & 1;
          break;
        case Op::Until: {
          bool now = v[static_cast<size_t>(slot_.at(f->rhs->id))];
          bool keep = v[static_cast<size_t>(slot_.at(f->lhs->id))];
          bool next = bits >> temporal_ix_.at(f->id) & 1;
          v[i] = now || (keep && next);
          break;
        }
        default:
          break;
      }
    }
    return v;
  }

  bool consistent(std::vector<char> const&, size_t from_bits,
                  std::vector<char> const& to_truth) const {
    for (Formula f : order_) {
      if (f->op == Op::Next) {
        bool promised = from_bits >> temporal_ix_.at(f->id) & 1;
        if (promised != static_cast<bool>(to_truth[static_cast<size_t>(slot_.at(f->lhs->id))]))
          return false;
      } else if (f->op == Op::Until) {
        bool promised = from_bits >> temporal_ix_.at(f->id) & 1;
        if (promised != static_cast<bool>(to_truth[static_cast<size_t>(slot_.at(f->id))]))
          return false;
      }
    }
    return true;
  }

  // iterative Tarjan
  static std::vector<int> scc(std::vector<std::vector<int>> const& edges, size_t n) {
    std::vector<int> comp(n, -1), low(n, 0), num(n, -1), stk;
    std::vector<char> on(n, 0);
    int counter = 0, comps = 0;
    struct Frame {
      int v;
      size_t child;
    };
    for (size_t root = 0; root < n; ++root) {
      if (num[root] != -1) continue;
      std::vector<Frame> call{{static_cast<int>(root), 0}};
      while (!call.empty()) {
        Frame& fr = call.back();
        int v = fr.v;
        if (fr.child == 0) {
          num[static_cast<size_t>(v)] = low[static_cast<size_t>(v)] = counter++;
          stk.push_back(v);
          on[static_cast<size_t>(v)] = 1;
        }
        if (fr.child < edges[static_cast<size_t>(v)].size()) {
          int w = edges[static_cast<size_t>(v)][fr.child++];
          if (num[static_cast<size_t>(w)] == -1) {
            call.push_back({w, 0});
          } else if (on[static_cast<size_t>(w)]) {
            low[static_cast<size_t>(v)] =
                std::min(low[static_cast<size_t>(v)], num[static_cast<size_t>(w)]);
          }
        } else {
          if (low[static_cast<size_t>(v)] == num[static_cast<size_t>(v)]) {
            for (;;) {
              int w = stk.back();
              stk.pop_back();
              on[static_cast<size_t>(w)] = 0;
              comp[static_cast<size_t>(w)] = comps;
              if (w == v) break;
            }
            ++comps;
          }
          call.pop_back();
          if (!call.empty()) {
            int parent = call.back().v;
            low[static_cast<size_t>(parent)] =
                std::min(low[static_cast<size_t>(parent)], low[static_cast<size_t>(v)]);
          }
        }
      }
    }
    return comp;
  }

  std::vector<std::vector<int>> const& succ_;
  std::function<bool(int, Formula)> atom_value_;
  std::unordered_map<int, int> slot_;
  std::vector<Formula> order_;
  std::unordered_map<int, int> temporal_ix_;
  int temporal_count_ = 0;
  int root_ = 0;
};

}  // namespace detail

// Recursive CTL* engine over a Kripke model. Subclasses extend it with
// further state-level operators (preference, path-set quantifiers) and with
// derived atoms by overriding the two hooks.
class StateChecker {
 public:
  explicit StateChecker(KripkeModel const& m) : m_(m) {}
  virtual ~StateChecker() = default;

  std::vector<char> const& sat(Formula f) {
    if (!f->state_level)
      throw CheckError("state formula required, got " + print_formula(f));
    auto it = memo_.find(f->id);
    if (it != memo_.end()) return it->second;
    std::vector<char> v = eval(f);
    return memo_.emplace(f->id, std::move(v)).first->second;
  }

  bool holds_at(Formula f, int state) { return sat(f)[static_cast<size_t>(state)]; }
  bool holds_initially(Formula f) { return holds_at(f, m_.initial); }

  KripkeModel const& model() const { return m_; }

 protected:
  virtual std::vector<char> eval_extra(Formula f) {
    throw CheckError("operator not supported by this engine: " + print_formula(f));
  }

  virtual bool atom_value(int state, std::string const& name) {
    if (!m_.props.count(name))
      throw CheckError("atom '" + name + "' is not in the model vocabulary");
    return m_.labels[static_cast<size_t>(state)].count(name) != 0;
  }

  // does some path from each state satisfy the (path-level) formula
  std::vector<char> exists_path(Formula b) {
    if (b->state_level) return sat(b);  // a path starting here begins with this state
    std::map<int, Formula> pseudo;  // pseudo atom id -> replaced state formula
    Formula ltl = ltlify(b, pseudo);
    auto atom_of = [this, pseudo](int state, Formula atom) {
      auto it = pseudo.find(atom->id);
      if (it != pseudo.end()) return static_cast<bool>(sat(it->second)[static_cast<size_t>(state)]);
      return atom_value(state, atom->name);
    };
    detail::ExistsPathTableau tab(m_.succ, ltl, atom_of);
    return tab.run();
  }

  KripkeModel const& m_;
  std::unordered_map<int, std::vector<char>> memo_;

 private:
  std::vector<char> eval(Formula f) {
    switch (f->op) {
      case Op::Bot:
        return std::vector<char>(m_.states.size(), 0);
      case Op::Atom: {
        std::vector<char> v(m_.states.size());
        for (size_t s = 0; s < m_.states.size(); ++s)
          v[s] = atom_value(static_cast<int>(s), f->name);
        return v;
      }
      case Op::Implies: {
        auto const l = sat(f->lhs);
        auto const r = sat(f->rhs);
        std::vector<char> v(m_.states.size());
        for (size_t s = 0; s < m_.states.size(); ++s) v[s] = !l[s] || r[s];
        return v;
      }
      case Op::ExistsPath:
        return exists_path(f->lhs);
      default:
        return eval_extra(f);
    }
  }

  // replace maximal proper state subformulas with pseudo-atoms
  Formula ltlify(Formula f, std::map<int, Formula>& pseudo) {
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
        return mk::implies(ltlify(f->lhs, pseudo), ltlify(f->rhs, pseudo));
      case Op::Next:
        return mk::next(ltlify(f->lhs, pseudo));
      case Op::Until:
        return mk::until(ltlify(f->lhs, pseudo), ltlify(f->rhs, pseudo));
      default:
        throw CheckError("unexpected path-level operator: " + print_formula(f));
    }
  }
};

// Plain CTL* model checking: no quantifiers, game modalities, preference or
// path variables.
inline std::vector<char> ctlstar_check_all(KripkeModel const& m, Formula a) {
  if (!is_ctlstar(a))
    throw CheckError("formula is not plain CTL*: " + print_formula(a));
  StateChecker c(m);
  return c.sat(a);
}

inline bool ctlstar_check(KripkeModel const& m, Formula a) {
  return ctlstar_check_all(m, a)[static_cast<size_t>(m.initial)];
}

}  // namespace atlscpref
