#pragma once

// Ultimately periodic words and the exact LTL evaluation oracle.
//
// A lasso word is prefix . loop^omega. Evaluation runs a per-subformula
// bitmask DP over the pre+loop position classes; untils are solved as least
// fixpoints around the loop, so results are exact for any LTL formula.

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "atlscpref/formula.hpp"
#include "atlscpref/gnf.hpp"

namespace atlscpref {

struct LassoWord {
  std::vector<std::set<std::string>> prefix;
  std::vector<std::set<std::string>> loop;  // non-empty
};

// Compiled evaluator for a fixed set of LTL formulas over a fixed atom list.
// Words are presented as per-class atom bitmasks; values are bitmasks over
// position classes (so pre+loop is capped at 30).
class LassoEvaluator {
 public:
  LassoEvaluator(std::vector<Formula> const& roots, std::vector<std::string> atoms)
      : atoms_(std::move(atoms)) {
    for (size_t i = 0; i < atoms_.size(); ++i) atom_ix_[atoms_[i]] = static_cast<int>(i);
    for (Formula f : roots) root_slots_.push_back(compile(f));
  }

  size_t atom_count() const { return atoms_.size(); }
  std::vector<std::string> const& atoms() const { return atoms_; }

  // letters[c] = atom bitmask at class c; classes wrap from the end to pre.
  void run(std::vector<uint32_t> const& letters, int pre) {
    int n = static_cast<int>(letters.size());
    uint32_t full = n == 32 ? 0xffffffffu : ((uint32_t{1} << n) - 1);
    vals_.resize(prog_.size());
    auto shift = [&](uint32_t x) {
      return ((x >> 1) | (((x >> pre) & 1u) << (n - 1))) & full;
    };
    for (size_t s = 0; s < prog_.size(); ++s) {
      Instr const& in = prog_[s];
      switch (in.op) {
        case Op::Bot:
          vals_[s] = 0;
          break;
        case Op::Atom: {
          uint32_t m = 0;
          for (int c = 0; c < n; ++c)
            if (letters[static_cast<size_t>(c)] >> in.atom & 1u) m |= uint32_t{1} << c;
          vals_[s] = m;
          break;
        }
        case Op::Implies:
          vals_[s] = (~vals_[static_cast<size_t>(in.a)] | vals_[static_cast<size_t>(in.b)]) & full;
          break;
        case Op::Next:
          vals_[s] = shift(vals_[static_cast<size_t>(in.a)]);
          break;
        case Op::Until: {
          uint32_t a = vals_[static_cast<size_t>(in.a)], b = vals_[static_cast<size_t>(in.b)];
          uint32_t u = 0;
          for (int i = 0; i <= n; ++i) u = b | (a & shift(u));
          vals_[s] = u;
          break;
        }
        default:
          break;
      }
    }
  }

  bool value_at(size_t root, int cls) const {
    return vals_[static_cast<size_t>(root_slots_[root])] >> cls & 1u;
  }

  int slot_of(Formula f) const { return slot_.at(f->id); }
  bool slot_value(int slot, int cls) const { return vals_[static_cast<size_t>(slot)] >> cls & 1u; }

 private:
  struct Instr {
    Op op;
    int a = -1, b = -1;
    int atom = -1;
  };

  int compile(Formula f) {
    auto it = slot_.find(f->id);
    if (it != slot_.end()) return it->second;
    Instr in;
    in.op = f->op;
    switch (f->op) {
      case Op::Bot:
        break;
      case Op::Atom:
        in.atom = atom_ix_.at(f->name);
        break;
      case Op::Implies:
      case Op::Until:
        in.a = compile(f->lhs);
        in.b = compile(f->rhs);
        break;
      case Op::Next:
        in.a = compile(f->lhs);
        break;
      default:
        throw GnfError("lasso evaluation is defined for LTL formulas only");
    }
    prog_.push_back(in);
    int s = static_cast<int>(prog_.size()) - 1;
    slot_[f->id] = s;
    return s;
  }

  std::vector<std::string> atoms_;
  std::unordered_map<std::string, int> atom_ix_;
  std::unordered_map<int, int> slot_;
  std::vector<Instr> prog_;
  std::vector<int> root_slots_;
  std::vector<uint32_t> vals_;
};

inline bool ltl_eval(LassoWord const& w, Formula b) {
  if (w.loop.empty()) throw GnfError("lasso loop must be non-empty");
  if (!is_ltl(b)) throw GnfError("lasso evaluation is defined for LTL formulas only");
  auto atom_set = atoms_of(b);
  std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  if (w.prefix.size() + w.loop.size() > 30) throw GnfError("lasso too long");
  LassoEvaluator ev({b}, atoms);
  std::vector<uint32_t> letters;
  auto encode = [&](std::set<std::string> const& v) {
    uint32_t m = 0;
    for (size_t i = 0; i < atoms.size(); ++i)
      if (v.count(atoms[i])) m |= uint32_t{1} << i;
    return m;
  };
  for (auto& v : w.prefix) letters.push_back(encode(v));
  for (auto& v : w.loop) letters.push_back(encode(v));
  ev.run(letters, static_cast<int>(w.prefix.size()));
  return ev.value_at(0, 0);
}

// Enumerates every lasso with |prefix| + |loop| <= bound over the given
// alphabet, as (letters, pre) pairs of atom bitmasks.
inline void enumerate_lassos(size_t alphabet_size, int bound,
                             std::function<void(std::vector<uint32_t> const&, int)> const& fn) {
  uint32_t letters_count = uint32_t{1} << alphabet_size;
  for (int total = 1; total <= bound; ++total) {
    std::vector<uint32_t> word(static_cast<size_t>(total), 0);
    for (;;) {
      for (int pre = 0; pre < total; ++pre) fn(word, pre);
      int i = total - 1;
      while (i >= 0 && word[static_cast<size_t>(i)] + 1 == letters_count) {
        word[static_cast<size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      ++word[static_cast<size_t>(i)];
    }
  }
}

struct FullSystemResult {
  bool exact;  // true: decided by valuation enumeration; false: lasso-sampled
  bool ok;
};

// Pairwise inconsistency and joint exhaustiveness. Propositional member lists
// are decided exactly over all valuations; temporal ones are checked on every
// lasso up to the bound: each word must satisfy exactly one member.
inline FullSystemResult full_system_check(std::vector<Formula> const& members,
                                          std::set<std::string> const& alphabet, int bound) {
  std::vector<std::string> atoms(alphabet.begin(), alphabet.end());
  for (Formula m : members)
    if (!is_ltl(m)) throw GnfError("full system members must be LTL");
  bool propositional = true;
  for (Formula m : members) propositional &= is_propositional(m);

  LassoEvaluator ev(members, atoms);
  bool ok = true;
  auto check_word = [&](std::vector<uint32_t> const& letters, int pre) {
    if (!ok) return;
    ev.run(letters, pre);
    int sat = 0;
    for (size_t r = 0; r < members.size(); ++r) sat += ev.value_at(r, 0);
    if (sat != 1) ok = false;
  };

  if (propositional) {
    for (uint32_t v = 0; v < (uint32_t{1} << atoms.size()); ++v) {
      std::vector<uint32_t> letters{v};
      check_word(letters, 0);
    }
    return {true, ok};
  }
  enumerate_lassos(atoms.size(), bound, check_word);
  return {false, ok};
}

// Joint soundness check used by the acceptance gate: b agrees with its GNF on
// every lasso up to the bound. Equivalent to evaluating gnf_as_formula(b) but
// runs on the compiled tails directly.
inline bool gnf_agrees_on_all_lassos(Formula b, int bound) {
  Gnf g = gnf(b);
  std::vector<Formula> roots{b};
  roots.insert(roots.end(), g.tails.begin(), g.tails.end());
  LassoEvaluator ev(roots, g.atoms);
  bool ok = true;
  enumerate_lassos(g.atoms.size(), bound, [&](std::vector<uint32_t> const& letters, int pre) {
    if (!ok) return;
    ev.run(letters, pre);
    int n = static_cast<int>(letters.size());
    int cls1 = 1 < n ? 1 : pre;
    bool whole = ev.value_at(0, 0);
    bool tail = ev.value_at(1 + letters[0], cls1);
    if (whole != tail) ok = false;
  });
  return ok;
}

}  // namespace atlscpref
