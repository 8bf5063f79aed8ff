#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "atlscpref/direct_pref.hpp"
#include "atlscpref/gen.hpp"
#include "atlscpref/parser.hpp"
#include "atlscpref/pref_elim.hpp"
#include "atlscpref/printer.hpp"

using namespace atlscpref;

namespace {
Formula P(std::string const& s) { return parse_formula(s, {1, 2, 3}); }
}  // namespace

TEST_CASE("expand_variant at K=1 instantiates the <ee scheme") {
  Formula b1 = P("X p"), b2 = P("q");
  std::vector<Formula> objs{P("p U q")};
  Formula got = expand_variant(PrefVariant::EE, 1, b1, b2, objs);
  Formula want = mk::and_(
      mk::exists_path(mk::next(mk::and_(b1, objs[0]))),
      mk::and_(mk::exists_path(mk::next(mk::and_(b2, objs[0]))),
               mk::pref(PrefVariant::FF, 1, objs[0], objs[0])));
  CHECK(got == want);
}

TEST_CASE("expand_variant output only compares objectives under <ff") {
  Rng rng(77);
  std::vector<std::string> atoms{"p", "q"};
  for (int i = 0; i < 50; ++i) {
    auto v = static_cast<PrefVariant>(1 + rng.below(5));
    std::vector<Formula> objs{random_ltl(rng, atoms, 1), random_ltl(rng, atoms, 1)};
    Formula got = expand_variant(v, 1, random_ltl(rng, atoms, 2), random_ltl(rng, atoms, 2), objs);
    for_each_node(got, [&](Formula n) {
      if (n->op != Op::Pref) return;
      CHECK(n->variant == PrefVariant::FF);
      CHECK((n->lhs == objs[0] || n->lhs == objs[1]));
      CHECK((n->rhs == objs[0] || n->rhs == objs[1]));
    });
  }
}

TEST_CASE("derived variants agree with their expansions under the direct evaluator") {
  Rng rng(123);
  std::vector<std::string> atoms{"p", "q"};
  int rounds = 0;
  for (int i = 0; i < 60; ++i) {
    KripkeModel k = random_kripke(rng, 3, atoms);
    PreferenceDescription d = random_description(rng, atoms, 2, 1);
    std::map<int, PreferenceDescription> descs{{1, d}};
    auto v = static_cast<PrefVariant>(1 + rng.below(5));
    Formula b1 = random_ltl(rng, atoms, 2);
    Formula b2 = rng.below(4) == 0 ? mk::bot() : random_ltl(rng, atoms, 2);
    Formula variant_node = mk::pref(v, 1, b1, b2);
    Formula expanded = expand_variant(v, 1, b1, b2, d.objectives);
    CHECK(direct_pref_check(k, descs, variant_node) ==
          direct_pref_check(k, descs, expanded));
    ++rounds;
  }
  CHECK(rounds == 60);
}

TEST_CASE("elim_pref_at of a false left operand is the empty conjunction") {
  std::vector<Formula> objs{P("p"), P("!p")};
  CHECK(elim_pref_at(mk::bot(), P("q"), objs, {}) == mk::top());
}

TEST_CASE("elim_pref_at keeps exactly the conjuncts outside P") {
  std::vector<Formula> objs{P("p"), P("!p")};
  Formula e = elim_pref_at(P("X p"), P("X q"), objs, {{1, 2}});
  std::vector<Formula> conjuncts;
  flatten_and(e, conjuncts);
  CHECK(conjuncts.size() == 3);  // (1,1), (2,1), (2,2)
}

TEST_CASE("elim_pref_at is antitone in P") {
  Rng rng(9);
  std::vector<std::string> atoms{"p", "q"};
  for (int i = 0; i < 40; ++i) {
    KripkeModel base = random_kripke(rng, 4, atoms);
    PreferenceDescription d = random_description(rng, atoms, 3, 1);
    Formula b1 = random_ltl(rng, atoms, 1), b2 = random_ltl(rng, atoms, 1);
    int k1 = 1 + rng.below(3), k2 = 1 + rng.below(3);
    if (d.better.count({k1, k2})) continue;
    auto larger = d.better;
    larger.emplace(k1, k2);
    Formula small = elim_pref_at(b1, b2, d.objectives, d.better);
    Formula big = elim_pref_at(b1, b2, d.objectives, larger);
    // adding a pair weakens the formula everywhere
    FreshVarSupply supply;
    PrefProduct p = make_pref_product(base, {{1, d}}, supply);
    DirectPrefChecker checker(p, false);
    auto vs = checker.sat(mk::implies(small, big));
    for (char x : vs) CHECK(x);
  }
}

TEST_CASE("labeling formula holds exactly on the q-labeled product") {
  KripkeModel k = *load_model(R"(
states: w0 w1
init: w0
label w1: p
trans w0 -> w1
trans w0 -> w0
trans w1 -> w0
)").kripke;
  PreferenceDescription d;
  d.objectives = {P("X p"), P("!(X p)")};
  std::map<int, PreferenceDescription> descs{{1, d}};
  FreshVarSupply supply;
  supply.reserve("p");
  PrefVocabulary vocab = make_pref_vocab(descs, supply);
  AnnotatedModel mb = build_mb_product(k, vocab, true);
  Formula l = labeling_formula(vocab.of(1), false);
  CHECK(ctlstar_check(mb.model, l));

  // perturbing one reachable non-initial label breaks L
  AnnotatedModel broken = mb;
  auto& names = vocab.of(1).naming[0].q_names;
  for (size_t node = 1; node < broken.model.labels.size(); ++node) {
    for (size_t m = 0; m < names.size(); ++m)
      if (broken.model.labels[node].count(names[m])) {
        broken.model.labels[node].erase(names[m]);
        broken.model.labels[node].insert(names[(m + 1) % names.size()]);
        goto perturbed;
      }
  }
perturbed:
  CHECK_FALSE(ctlstar_check(broken.model, l));
}

TEST_CASE("log-mode naming uses ceil(log2) variables and a range restriction") {
  PreferenceDescription d;
  d.objectives = {P("X p"), P("!(X p)")};
  FreshVarSupply supply;
  supply.reserve("p");
  PrefVocabulary vocab = make_pref_vocab({{1, d}}, supply);
  // closure of X p is {X p, p, true, false}: 4 members, 2 bits, no range
  CHECK(vocab.of(1).naming[0].r_names.size() == 2);
  // closure of !(X p) has 3 members (!Xp, !p, false? depends); just check the
  // log bound and that a non-power-of-two slot forces a range restriction
  size_t m1 = vocab.of(1).slots[1].members.size();
  size_t bits1 = vocab.of(1).naming[1].r_names.size();
  CHECK((size_t{1} << bits1) >= m1);
  CHECK((bits1 == 0 || (size_t{1} << (bits1 - 1)) < m1));

  Formula l_q = labeling_formula(vocab.of(1), false);
  Formula l_r = labeling_formula(vocab.of(1), true);
  auto mentions = [](Formula f, std::string const& name) {
    bool found = false;
    for_each_node(f, [&](Formula n) { found |= n->op == Op::Atom && n->name == name; });
    return found;
  };
  CHECK(mentions(l_q, vocab.of(1).naming[0].q_names[0]));
  CHECK_FALSE(mentions(l_r, vocab.of(1).naming[0].q_names[0]));
  CHECK(mentions(l_r, vocab.of(1).naming[0].r_names[0]));
}

TEST_CASE("q-mode mutual exclusion has n(n-1)/2 conjuncts per slot") {
  PreferenceDescription d;
  d.objectives = {P("p U q")};
  FreshVarSupply supply;
  supply.reserve("p");
  supply.reserve("q");
  PrefVocabulary vocab = make_pref_vocab({{1, d}}, supply);
  size_t n = vocab.of(1).slots[0].members.size();
  REQUIRE(n == 3);  // p U q, true, false
  Formula l = labeling_formula(vocab.of(1), false);
  auto const& names = vocab.of(1).naming[0].q_names;
  std::set<std::string> qset(names.begin(), names.end());
  int mutex = 0;
  for_each_node(l, [&](Formula f) {
    Formula a = nullptr, b = nullptr, inner = nullptr;
    if (!match_not(f, inner)) return;
    if (!match_and(inner, a, b)) return;
    if (a->op == Op::Atom && b->op == Op::Atom && qset.count(a->name) && qset.count(b->name))
      ++mutex;
  });
  CHECK(mutex == static_cast<int>(n * (n - 1) / 2));
}

TEST_CASE("eliminate_preference leaves preference-free formulas unchanged") {
  FreshVarSupply supply;
  Formula a = P("E (p U q) -> A X p");
  CHECK(eliminate_preference(a, {}, PrefElimMode::ForMB, supply) == a);
  CHECK(eliminate_preference(a, {}, PrefElimMode::QVars, supply) == a);
}

TEST_CASE("eliminate_preference output never contains preference nodes") {
  Rng rng(31);
  std::vector<std::string> atoms{"p", "q"};
  for (int i = 0; i < 40; ++i) {
    PreferenceDescription d = random_description(rng, atoms, 2, 1);
    std::map<int, PreferenceDescription> descs{{1, d}, {2, random_description(rng, atoms, 2, 1)}};
    Formula a = random_pref_state(rng, atoms, {1, 2}, 3, 2);
    FreshVarSupply supply;
    supply.reserve("p");
    supply.reserve("q");
    for (auto mode : {PrefElimMode::ForMB, PrefElimMode::QVars, PrefElimMode::LogVars}) {
      Formula out = eliminate_preference(a, descs, mode, supply);
      CHECK_FALSE(contains_op(out, Op::Pref));
    }
  }
}

TEST_CASE("eliminate_preference needs a description for every preference agent") {
  FreshVarSupply supply;
  Formula a = P("p <ff[3] q");
  PreferenceDescription d;
  d.objectives = {P("p"), P("!p")};
  CHECK_THROWS_AS(eliminate_preference(a, {{1, d}}, PrefElimMode::ForMB, supply), ModelError);
}

TEST_CASE("direct evaluation agrees with ForMB elimination checked on the product") {
  Rng rng(2025);
  std::vector<std::string> atoms{"p", "q"};
  int rounds = 0;
  for (int i = 0; i < 40; ++i) {
    KripkeModel base = random_kripke(rng, 4, atoms);
    std::map<int, PreferenceDescription> descs{{1, random_description(rng, atoms, 2, 1)}};
    Formula a = random_pref_state(rng, atoms, {1}, 3, 1);

    bool direct = direct_pref_check(base, descs, a);

    FreshVarSupply supply;
    supply.reserve("p");
    supply.reserve("q");
    supply.reserve_all_names(a);
    PrefVocabulary vocab = make_pref_vocab(descs, supply);
    Formula rewritten = eliminate_preference(a, vocab, PrefElimMode::ForMB);
    AnnotatedModel mb = build_mb_product(base, vocab, true);
    bool via_mb = ctlstar_check(mb.model, rewritten);

    CAPTURE(print_formula(a));
    CHECK(direct == via_mb);
    ++rounds;
  }
  CHECK(rounds == 40);
}
