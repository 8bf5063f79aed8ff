#pragma once

// Seeded random instance generators for the differential test suites: LTL and
// CTL* formulas, preference formulas, serial Kripke models, CGMs, and valid
// preference descriptions (full systems by construction).

#include <random>
#include <string>
#include <vector>

#include "atlscpref/formula.hpp"
#include "atlscpref/lasso.hpp"
#include "atlscpref/model.hpp"

namespace atlscpref {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  int below(int n) { return static_cast<int>(eng() % static_cast<uint64_t>(n)); }
  bool coin() { return below(2); }
};

inline Formula random_ltl(Rng& rng, std::vector<std::string> const& atoms, int depth) {
  if (depth == 0) {
    int k = rng.below(static_cast<int>(atoms.size()) + 2);
    if (k == 0) return mk::bot();
    if (k == 1) return mk::top();
    return mk::atom(atoms[static_cast<size_t>(k - 2)]);
  }
  switch (rng.below(8)) {
    case 0: return mk::next(random_ltl(rng, atoms, depth - 1));
    case 1: return mk::until(random_ltl(rng, atoms, depth - 1), random_ltl(rng, atoms, depth - 1));
    case 2:
      return mk::implies(random_ltl(rng, atoms, depth - 1), random_ltl(rng, atoms, depth - 1));
    case 3: return mk::and_(random_ltl(rng, atoms, depth - 1), random_ltl(rng, atoms, depth - 1));
    case 4: return mk::or_(random_ltl(rng, atoms, depth - 1), random_ltl(rng, atoms, depth - 1));
    case 5: return mk::not_(random_ltl(rng, atoms, depth - 1));
    case 6: return mk::finally_(random_ltl(rng, atoms, depth - 1));
    default: return mk::globally(random_ltl(rng, atoms, depth - 1));
  }
}

inline Formula random_ctlstar_state(Rng& rng, std::vector<std::string> const& atoms, int depth);

inline Formula random_ctlstar_path(Rng& rng, std::vector<std::string> const& atoms, int depth) {
  if (depth == 0) return random_ctlstar_state(rng, atoms, 0);
  switch (rng.below(7)) {
    case 0: return mk::next(random_ctlstar_path(rng, atoms, depth - 1));
    case 1:
      return mk::until(random_ctlstar_path(rng, atoms, depth - 1),
                       random_ctlstar_path(rng, atoms, depth - 1));
    case 2:
      return mk::implies(random_ctlstar_path(rng, atoms, depth - 1),
                         random_ctlstar_path(rng, atoms, depth - 1));
    case 3:
      return mk::and_(random_ctlstar_path(rng, atoms, depth - 1),
                      random_ctlstar_path(rng, atoms, depth - 1));
    case 4:
      return mk::or_(random_ctlstar_path(rng, atoms, depth - 1),
                     random_ctlstar_path(rng, atoms, depth - 1));
    default: return random_ctlstar_state(rng, atoms, depth - 1);
  }
}

inline Formula random_ctlstar_state(Rng& rng, std::vector<std::string> const& atoms, int depth) {
  if (depth == 0) {
    int k = rng.below(static_cast<int>(atoms.size()) + 1);
    if (k == 0) return rng.coin() ? mk::bot() : mk::top();
    return mk::atom(atoms[static_cast<size_t>(k - 1)]);
  }
  switch (rng.below(6)) {
    case 0:
      return mk::implies(random_ctlstar_state(rng, atoms, depth - 1),
                         random_ctlstar_state(rng, atoms, depth - 1));
    case 1: return mk::not_(random_ctlstar_state(rng, atoms, depth - 1));
    case 2:
      return mk::and_(random_ctlstar_state(rng, atoms, depth - 1),
                      random_ctlstar_state(rng, atoms, depth - 1));
    case 3: return mk::exists_path(random_ctlstar_path(rng, atoms, depth - 1));
    case 4: return mk::forall_path(random_ctlstar_path(rng, atoms, depth - 1));
    default: return random_ctlstar_state(rng, atoms, 0);
  }
}

// CTL*_< state formulas: CTL* plus preference operators of all variants for
// the given agents. Preference operands are path formulas that may themselves
// contain one further preference level.
inline Formula random_pref_state(Rng& rng, std::vector<std::string> const& atoms,
                                 std::vector<int> const& agents, int depth, int pref_nesting);

inline Formula random_pref_operand(Rng& rng, std::vector<std::string> const& atoms,
                                   std::vector<int> const& agents, int depth, int pref_nesting) {
  if (depth > 0 && pref_nesting > 0 && rng.below(5) == 0)
    return random_pref_state(rng, atoms, agents, depth - 1, pref_nesting);
  return random_ctlstar_path(rng, atoms, depth);
}

inline Formula random_pref_state(Rng& rng, std::vector<std::string> const& atoms,
                                 std::vector<int> const& agents, int depth, int pref_nesting) {
  if (depth == 0 || rng.below(4) == 0) {
    auto v = static_cast<PrefVariant>(rng.below(6));
    int agent = agents[static_cast<size_t>(rng.below(static_cast<int>(agents.size())))];
    int d = depth == 0 ? 0 : depth - 1;
    return mk::pref(v, agent, random_pref_operand(rng, atoms, agents, d, pref_nesting - 1),
                    random_pref_operand(rng, atoms, agents, d, pref_nesting - 1));
  }
  switch (rng.below(5)) {
    case 0:
      return mk::implies(random_pref_state(rng, atoms, agents, depth - 1, pref_nesting),
                         random_pref_state(rng, atoms, agents, depth - 1, pref_nesting));
    case 1: return mk::not_(random_pref_state(rng, atoms, agents, depth - 1, pref_nesting));
    case 2:
      return mk::and_(random_ctlstar_state(rng, atoms, depth - 1),
                      random_pref_state(rng, atoms, agents, depth - 1, pref_nesting));
    case 3: return mk::exists_path(mk::next(
        random_pref_state(rng, atoms, agents, depth - 1, pref_nesting)));
    default:
      return mk::forall_path(mk::next(
          random_pref_state(rng, atoms, agents, depth - 1, pref_nesting)));
  }
}

// Serial Kripke model with random labels.
inline KripkeModel random_kripke(Rng& rng, int n_states, std::vector<std::string> const& atoms) {
  KripkeModel k;
  for (int i = 0; i < n_states; ++i) {
    k.states.push_back("s" + std::to_string(i));
    std::set<std::string> lab;
    for (auto& a : atoms)
      if (rng.coin()) lab.insert(a);
    k.labels.push_back(lab);
    k.succ.emplace_back();
  }
  k.props.insert(atoms.begin(), atoms.end());
  k.initial = 0;
  for (int s = 0; s < n_states; ++s) {
    int degree = 1 + rng.below(std::min(3, n_states));
    std::set<int> targets;
    while (static_cast<int>(targets.size()) < degree) targets.insert(rng.below(n_states));
    k.succ[static_cast<size_t>(s)].assign(targets.begin(), targets.end());
  }
  return k;
}

inline Cgm random_cgm(Rng& rng, int n_states, int n_agents, int n_actions,
                      std::vector<std::string> const& atoms) {
  Cgm g;
  for (int i = 0; i < n_states; ++i) {
    g.states.push_back("s" + std::to_string(i));
    std::set<std::string> lab;
    for (auto& a : atoms)
      if (rng.coin()) lab.insert(a);
    g.labels.push_back(lab);
  }
  g.props.insert(atoms.begin(), atoms.end());
  g.initial = 0;
  for (int a = 1; a <= n_agents; ++a) {
    g.agents.push_back(a);
    std::vector<std::string> acts;
    for (int j = 0; j < n_actions; ++j)
      acts.push_back("act" + std::to_string(a) + std::to_string(j));
    g.actions[a] = acts;
  }
  g.outcome.assign(static_cast<size_t>(n_states), std::vector<int>(g.move_count(), 0));
  for (int s = 0; s < n_states; ++s)
    for (size_t c = 0; c < g.move_count(); ++c)
      g.outcome[static_cast<size_t>(s)][c] = rng.below(n_states);
  return g;
}

// Full system of K objectives built as a partition chain
// C1, !C1 & C2, ..., !C1 & ... & !C_{K-1}; valid by construction.
inline PreferenceDescription random_description(Rng& rng, std::vector<std::string> const& atoms,
                                                int k_classes, int depth) {
  PreferenceDescription d;
  std::vector<Formula> picked;
  for (int i = 0; i + 1 < k_classes; ++i) picked.push_back(random_ltl(rng, atoms, depth));
  for (int i = 0; i < k_classes; ++i) {
    std::vector<Formula> parts;
    for (int j = 0; j < i; ++j) parts.push_back(mk::not_(picked[static_cast<size_t>(j)]));
    if (i + 1 < k_classes) parts.push_back(picked[static_cast<size_t>(i)]);
    d.objectives.push_back(parts.empty() ? mk::top() : mk::and_n(parts));
  }
  for (int k1 = 1; k1 <= k_classes; ++k1)
    for (int k2 = 1; k2 <= k_classes; ++k2)
      if (k1 != k2 && rng.below(3) == 0) d.better.emplace(k1, k2);
  return d;
}

// Deterministic single-path model realizing a lasso word: state j has the
// word's letter j as its label and exactly one successor.
inline KripkeModel lasso_to_model(LassoWord const& w, std::set<std::string> const& props) {
  KripkeModel k;
  size_t n = w.prefix.size() + w.loop.size();
  for (size_t j = 0; j < n; ++j) {
    k.states.push_back("u" + std::to_string(j));
    k.labels.push_back(j < w.prefix.size() ? w.prefix[j] : w.loop[j - w.prefix.size()]);
    k.succ.push_back({static_cast<int>(j + 1 < n ? j + 1 : w.prefix.size())});
  }
  k.props = props;
  k.initial = 0;
  return k;
}

}  // namespace atlscpref
