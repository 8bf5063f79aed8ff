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

KripkeModel hesitating() {
  // s0 {} may stall or step to s1 {p}; s1 falls back to s0
  return *load_model(R"(
states: s0 s1
init: s0
label s1: p
trans s0 -> s0
trans s0 -> s1
trans s1 -> s0
)").kripke;
}

std::map<int, PreferenceDescription> example_descs() {
  PreferenceDescription d;
  d.objectives = {P("X (!p & X p)"), P("X X (!p & X p)"),
                  P("!(X (!p & X p)) & !(X X (!p & X p))")};
  d.better = {{2, 1}};
  return {{1, d}};
}
}  // namespace

TEST_CASE("the worked preference-update implication holds on a realizing model") {
  Formula f = P("(X X (!p & X p)) <ff[1] (X (!p & X p)) -> "
                "A X (!p -> (X (!p & X p)) <ff[1] (X p))");
  CHECK(direct_pref_check(hesitating(), example_descs(), f));
}

TEST_CASE("anything < false and false < anything hold everywhere") {
  Rng rng(4);
  std::vector<std::string> atoms{"p", "q"};
  for (int i = 0; i < 25; ++i) {
    KripkeModel k = random_kripke(rng, 4, atoms);
    std::map<int, PreferenceDescription> descs{{1, random_description(rng, atoms, 2, 1)}};
    Formula b = random_ltl(rng, atoms, 2);
    FreshVarSupply supply;
    PrefProduct p = make_pref_product(k, descs, supply);
    DirectPrefChecker checker(p, false);
    for (char x : checker.sat(mk::pref(PrefVariant::FF, 1, b, mk::bot()))) CHECK(x);
    for (char x : checker.sat(mk::pref(PrefVariant::FF, 1, mk::bot(), b))) CHECK(x);
  }
}

TEST_CASE("preference axioms hold under the direct evaluator") {
  Rng rng(77);
  std::vector<std::string> atoms{"p", "q"};
  int rounds = 0;
  for (int i = 0; i < 50; ++i) {
    KripkeModel k = random_kripke(rng, 4, atoms);
    PreferenceDescription d = random_description(rng, atoms, 1 + rng.below(3), 1);
    std::map<int, PreferenceDescription> descs{{1, d}};
    FreshVarSupply supply;
    PrefProduct p = make_pref_product(k, descs, supply);
    DirectPrefChecker checker(p, false);

    Formula b1p = random_ltl(rng, atoms, 2), b2p = random_ltl(rng, atoms, 2);
    Formula b1q = random_ltl(rng, atoms, 2), b2q = random_ltl(rng, atoms, 2);
    auto ff = [](Formula a, Formula b) { return mk::pref(PrefVariant::FF, 1, a, b); };

    // extensionality
    Formula ax1 = mk::implies(
        mk::and_(mk::forall_path(mk::next(mk::implies(b1p, b2p))),
                 mk::forall_path(mk::next(mk::implies(b1q, b2q)))),
        mk::implies(ff(b2p, b2q), ff(b1p, b1q)));
    // disjunction distribution, both operands
    Formula ax2 = mk::iff(
        ff(mk::or_(b1p, b2p), mk::or_(b1q, b2q)),
        mk::and_(mk::and_(ff(b1p, b1q), ff(b1p, b2q)), mk::and_(ff(b2p, b1q), ff(b2p, b2q))));
    for (char x : checker.sat(ax1)) CHECK(x);
    for (char x : checker.sat(ax2)) CHECK(x);
    ++rounds;
  }
  CHECK(rounds == 50);
}

TEST_CASE("the stability axiom <4 holds for modality-free guards") {
  Rng rng(21);
  std::vector<std::string> atoms{"p", "q"};
  for (int i = 0; i < 40; ++i) {
    KripkeModel k = random_kripke(rng, 4, atoms);
    PreferenceDescription d = random_description(rng, atoms, 2, 1);
    std::map<int, PreferenceDescription> descs{{1, d}};
    FreshVarSupply supply;
    PrefProduct p = make_pref_product(k, descs, supply);
    DirectPrefChecker checker(p, false);
    Formula guard = rng.coin() ? P("p") : P("!p & q");
    Formula b1 = random_ltl(rng, atoms, 1), b2 = random_ltl(rng, atoms, 1);
    auto ff = [](Formula a, Formula b) { return mk::pref(PrefVariant::FF, 1, a, b); };
    Formula ax4 = mk::implies(
        ff(mk::and_(guard, mk::next(b1)), mk::and_(guard, mk::next(b2))),
        mk::forall_path(mk::next(mk::implies(guard, ff(b1, b2)))));
    for (char x : checker.sat(ax4)) CHECK(x);
  }
}

TEST_CASE("the stability axiom <5 holds on guard-shaped class operands") {
  // sound only when guard & X tail describes indiscernibility classes: use
  // the description's own GNF disjuncts
  Rng rng(8);
  std::vector<std::string> atoms{"p", "q"};
  for (int i = 0; i < 40; ++i) {
    KripkeModel k = random_kripke(rng, 4, atoms);
    PreferenceDescription d = random_description(rng, atoms, 2, 1);
    std::map<int, PreferenceDescription> descs{{1, d}};
    FreshVarSupply supply;
    PrefProduct p = make_pref_product(k, descs, supply);
    DirectPrefChecker checker(p, false);
    auto const& av = p.vocab.of(1);
    // pick a minterm over the first objective's atoms and the matching tails
    Gnf const& g0 = av.slots[0].gnfs[0];
    Gnf const& g1 = av.slots[1].gnfs[0];
    size_t mask0 = rng.below(static_cast<int>(g0.tails.size()));
    Formula guard = g0.guard(mask0);
    Formula t1 = g0.tails[mask0];
    Formula t2 = g1.tail_for([&] {
      // evaluate the same minterm over the second objective's atoms
      std::set<std::string> val;
      for (size_t b = 0; b < g0.atoms.size(); ++b)
        if (mask0 >> b & 1) val.insert(g0.atoms[b]);
      return val;
    }());
    auto ff = [](Formula a, Formula b) { return mk::pref(PrefVariant::FF, 1, a, b); };
    Formula ax5 = mk::implies(
        mk::and_(mk::exists_path(mk::next(mk::and_(
                     guard, mk::and_(mk::exists_path(mk::next(t1)),
                                     mk::exists_path(mk::next(t2)))))),
                 mk::forall_path(mk::next(mk::implies(guard, ff(t1, t2))))),
        ff(mk::and_(guard, mk::next(t1)), mk::and_(guard, mk::next(t2))));
    for (char x : checker.sat(ax5)) CHECK(x);
  }
}

TEST_CASE("one-step pair sets only grow, and only by empty-class pairs") {
  Rng rng(55);
  std::vector<std::string> atoms{"p", "q"};
  int rounds = 0;
  for (int i = 0; i < 50; ++i) {
    KripkeModel k = random_kripke(rng, 4, atoms);
    PreferenceDescription d = random_description(rng, atoms, 1 + rng.below(3), 1);
    int K = d.size();
    std::map<int, PreferenceDescription> descs{{1, d}};
    FreshVarSupply supply;
    PrefProduct p = make_pref_product(k, descs, supply);
    DirectPrefChecker checker(p, false);
    for (int succ_node : p.model.succ[0]) {
      std::set<std::pair<int, int>> p_next;
      for (int k1 = 1; k1 <= K; ++k1)
        for (int k2 = 1; k2 <= K; ++k2) {
          Formula cmp = mk::pref(PrefVariant::FF, 1,
                                 p.member_formula(succ_node, 1, k1 - 1),
                                 p.member_formula(succ_node, 1, k2 - 1));
          if (checker.sat(cmp)[static_cast<size_t>(succ_node)]) p_next.emplace(k1, k2);
        }
      for (auto& pair : d.better) CHECK(p_next.count(pair));
      for (auto& pair : p_next) {
        if (d.better.count(pair)) continue;
        bool empty_side = !checker.class_nonempty(succ_node, 1, pair.first - 1) ||
                          !checker.class_nonempty(succ_node, 1, pair.second - 1);
        CHECK(empty_side);
      }
    }
    ++rounds;
  }
  CHECK(rounds == 50);
}

TEST_CASE("separate_one_ahead matches the translation table rows") {
  Formula v = mk::path_atom("c");
  CHECK(separate_one_ahead(mk::exists_path(v), "c") == mk::exists_path(mk::bot()));
  CHECK(separate_one_ahead(mk::exists_path(mk::next(v)), "c") ==
        mk::exists_path(mk::next(v)));
  Formula u = mk::until(v, mk::atom("q"));
  Formula sep = separate_one_ahead(mk::exists_path(u), "c");
  CHECK_FALSE(contains_op(normalize(sep), Op::PathAtom));
  CHECK(normalize(sep) == normalize(mk::exists_path(mk::atom("q"))));
}

TEST_CASE("quantifier semantics basics") {
  KripkeModel k = hesitating();
  auto descs = example_descs();
  CHECK(quant_sem_check(k, descs, P("Es[1] ~c . true")));
  CHECK(quant_sem_check(k, descs, P("E1[1] ~c . E X ~c")));
  CHECK_FALSE(quant_sem_check(k, descs, P("Es[1] ~c . false")));
}

TEST_CASE("a middle class witnesses the between-quantifier") {
  KripkeModel k = *load_model(R"(
states: s a b c
init: s
label a: lo
label c: hi
trans s -> a
trans s -> b
trans s -> c
trans a -> a
trans b -> b
trans c -> c
)").kripke;
  PreferenceDescription d;
  d.objectives = {P("lo"), P("!lo & !hi"), P("!lo & hi")};
  d.better = {{1, 2}, {2, 3}, {1, 3}};
  Formula f = P("Es[1] ~c . (E X ~c & lo <ff[1] ~c & ~c <ff[1] (!lo & hi))");
  CHECK(quant_sem_check(k, {{1, d}}, f));

  PreferenceDescription weaker = d;
  weaker.better = {{2, 3}, {1, 3}};
  CHECK_FALSE(quant_sem_check(k, {{1, weaker}}, f));
}

TEST_CASE("quantifiers reject missing descriptions and free variables") {
  KripkeModel k = hesitating();
  CHECK_THROWS_AS(quant_sem_check(k, {}, P("Es[1] ~c . E X ~c")), ModelError);
  CHECK_THROWS_AS(quant_sem_check(k, example_descs(), P("E X ~c")), CheckError);
}

TEST_CASE("exists-one implies exists-union") {
  Rng rng(99);
  std::vector<std::string> atoms{"p", "q"};
  for (int i = 0; i < 30; ++i) {
    KripkeModel k = random_kripke(rng, 3, atoms);
    std::map<int, PreferenceDescription> descs{{1, random_description(rng, atoms, 2, 1)}};
    Formula body = mk::implies(mk::exists_path(mk::next(mk::path_atom("c"))),
                               mk::exists_path(mk::next(mk::and_(
                                   mk::path_atom("c"), random_ltl(rng, atoms, 1)))));
    Formula one = mk::one_quant(1, "c", body);
    Formula sim = mk::sim_quant(1, "c", body);
    if (quant_sem_check(k, descs, one)) CHECK(quant_sem_check(k, descs, sim));
  }
}
