#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "atlscpref/atlsc_translate.hpp"
#include "atlscpref/game_check.hpp"
#include "atlscpref/gen.hpp"
#include "atlscpref/parser.hpp"
#include "atlscpref/printer.hpp"

using namespace atlscpref;

namespace {
Formula P(std::string const& s) { return parse_formula(s, {1, 2, 3}); }

Cgm pennies() {
  return *load_model(R"(
agents: 1 2
actions 1: h1 t1
actions 2: h2 t2
states: m0 m1
init: m0
label m1: win
outcome m0 h1 h2 -> m1
outcome m0 t1 t2 -> m1
outcome m0 h1 t2 -> m0
outcome m0 t1 h2 -> m0
outcome m1 h1 h2 -> m1
outcome m1 t1 t2 -> m1
outcome m1 h1 t2 -> m1
outcome m1 t1 h2 -> m1
)").cgm;
}

Cgm sole_controller() {
  return *load_model(R"(
agents: 1 2
actions 1: a b
actions 2: c
states: w0 w1
init: w0
label w1: p
outcome w0 a c -> w0
outcome w0 b c -> w1
outcome w1 a c -> w1
outcome w1 b c -> w1
)").cgm;
}

Cgm three_actions() {
  return *load_model(R"(
agents: 1 2
actions 1: a b c
actions 2: d e f
states: w0 w1
init: w0
label w1: p
outcome w0 a d -> w0
outcome w0 a e -> w0
outcome w0 a f -> w0
outcome w0 b d -> w1
outcome w0 b e -> w1
outcome w0 b f -> w1
outcome w0 c d -> w0
outcome w0 c e -> w1
outcome w0 c f -> w0
outcome w1 a d -> w1
outcome w1 a e -> w1
outcome w1 a f -> w1
outcome w1 b d -> w1
outcome w1 b e -> w1
outcome w1 b f -> w1
outcome w1 c d -> w1
outcome w1 c e -> w1
outcome w1 c f -> w1
)").cgm;
}
}  // namespace

TEST_CASE("strategy constraint shapes") {
  Formula single = strategy_constraint({"a"}, "q");
  CHECK(single == mk::forall_path(mk::globally(
                      mk::forall_path(mk::next(mk::iff(mk::atom("q"), mk::atom("a")))))));

  Formula two = strategy_constraint({"a", "b"}, "q");
  // A G (A X (q <-> a) | A X (q <-> b))
  Formula want = mk::forall_path(mk::globally(mk::or_(
      mk::forall_path(mk::next(mk::iff(mk::atom("q"), mk::atom("a")))),
      mk::forall_path(mk::next(mk::iff(mk::atom("q"), mk::atom("b")))))));
  CHECK(two == want);

  Formula merged = strategy_constraint_merged({{"a", "b"}, {"c", "d"}}, "q");
  int options = 0;
  for_each_node(merged, [&](Formula n) {
    Formula x = nullptr, y = nullptr;
    if (n->op == Op::Next) return;
    (void)x; (void)y;
  });
  // four joint moves -> four disjuncts, each marking a conjunction of atoms
  std::vector<Formula> leaves;
  Formula body = merged;
  // A G ( ... ): unwrap not_(E(...)) shell via printer-level checks instead
  CHECK(print_formula(merged).find("a & c") != std::string::npos);
  CHECK(print_formula(merged).find("b & d") != std::string::npos);
  (void)options;
  (void)body;
  CHECK_THROWS_AS(strategy_constraint({}, "q"), CheckError);
}

TEST_CASE("empty coalition translates to the plain universal path quantifier") {
  Cgm g = pennies();
  AtlscTranslation tr = translate_atlsc(P("<<>> X win"), g);
  CHECK(tr.formula == mk::forall_path(mk::next(mk::atom("win"))));
  CHECK(tr.blocks.empty());
  CHECK(tr.unfolded.states.size() == 9);
}

TEST_CASE("a two-agent coalition introduces two constrained quantifiers") {
  Cgm g = pennies();
  AtlscTranslation tr = translate_atlsc(P("<<1,2>> X win"), g);
  REQUIRE(tr.blocks.size() == 1);
  CHECK(tr.blocks[0].var_count == 2);
  CHECK(tr.blocks[0].kind == QuantBlock::PerAgent);
  REQUIRE(tr.formula->op == Op::ExistsProp);
  REQUIRE(tr.formula->lhs->op == Op::ExistsProp);
  Formula inner = tr.formula->lhs->lhs;
  // conjunction of the two strategy constraints and the guarded body
  Formula a = nullptr, b = nullptr;
  REQUIRE(match_and(inner, a, b));
  CHECK_FALSE(contains_op(tr.formula, Op::StratMod));
}

TEST_CASE("quantifier counts: default |G|, log sum ceil(log2 |Act_i|), merged 1") {
  Cgm g3 = three_actions();
  AtlscTranslation plain = translate_atlsc(P("<<1,2>> X p"), g3);
  REQUIRE(plain.blocks.size() == 1);
  CHECK(plain.blocks[0].var_count == 2);

  AtlscTranslation logt = translate_atlsc(P("<<1,2>> X p"), g3, {.merge = false, .log_actions = true});
  REQUIRE(logt.blocks.size() == 1);
  CHECK(logt.blocks[0].var_count == 4);  // ceil(log2 3) = 2 per agent
  CHECK(logt.blocks[0].kind == QuantBlock::PerAgentLog);

  AtlscTranslation merged = translate_atlsc(P("<<1,2>> X p"), g3, {.merge = true, .log_actions = false});
  REQUIRE(merged.blocks.size() == 1);
  CHECK(merged.blocks[0].var_count == 1);
  CHECK(merged.blocks[0].kind == QuantBlock::Merged);
}

TEST_CASE("log mode with a non-power-of-two alphabet pins a range restriction") {
  Cgm g3 = three_actions();
  AtlscTranslation logt = translate_atlsc(P("<<1>> X p"), g3, {.merge = false, .log_actions = true});
  REQUIRE(logt.blocks.size() == 1);
  REQUIRE(logt.blocks[0].var_count == 2);
  // the in-range disjunction names exactly the three codes
  std::string text = print_formula(logt.formula);
  CHECK(text.find("!" + logt.blocks[0].units[0].second[0]) != std::string::npos);
}

TEST_CASE("merge falls back per agent when a subformula splits the coalition") {
  Cgm g = pennies();
  Formula f = P("<<1,2>> (X win & X <<1>> X win)");
  AtlscTranslation tr = translate_atlsc(f, g, {.merge = true, .log_actions = false});
  REQUIRE_FALSE(tr.notes.empty());
  REQUIRE(tr.blocks.size() == 2);
  CHECK(tr.blocks[0].var_count + tr.blocks[1].var_count == 3);
}

TEST_CASE("relax drops bindings by membership") {
  Cgm g = pennies();
  // the relax strips agent 1's binding, so the inner empty-coalition modality
  // ranges over agent-1-free plays again
  Formula f = P("<<1>> X ]1[ <<>> X win");
  AtlscTranslation tr = translate_atlsc(f, g);
  CHECK_FALSE(contains_op(tr.formula, Op::Relax));
  // inner universal must not be guarded by agent 1's variable: the guard
  // appears once (the outer one)
  std::string text = print_formula(tr.formula);
  std::string qvar = tr.blocks[0].units[0].second[0];
  size_t first = text.find("X G " + qvar);
  CHECK(first != std::string::npos);
  CHECK(text.find("X G " + qvar, first + 1) == std::string::npos);
}

TEST_CASE("coalition members must be agents of the model") {
  Cgm g = pennies();
  CHECK_THROWS_AS(translate_atlsc(P("<<3>> X win"), g), ModelError);
}

TEST_CASE("translation rejects untranslated preference and quantifiers") {
  Cgm g = pennies();
  CHECK_THROWS_AS(translate_atlsc(P("win <ff[1] win"), g), CheckError);
  CHECK_THROWS_AS(translate_atlsc(P("Es[1] ~c . E X ~c"), g), CheckError);
}

TEST_CASE("fresh variables avoid the model vocabulary and nested collisions") {
  Cgm g = pennies();
  AtlscTranslation tr = translate_atlsc(P("<<1>> X <<1>> X win"), g);
  REQUIRE(tr.blocks.size() == 2);
  std::set<std::string> used;
  for (auto& b : tr.blocks)
    for (auto& [agents, vars] : b.units)
      for (auto& v : vars) {
        CHECK_FALSE(g.props.count(v));
        CHECK_FALSE(used.count(v));
        used.insert(v);
        for (int agent : g.agents)
          for (auto& act : g.actions.at(agent)) CHECK(v != act);
      }
}

TEST_CASE("solution concept templates") {
  std::map<int, Formula> goals{{1, P("p")}, {2, P("q")}};
  Formula nash = solution_concept(SolutionTemplate::Nash, goals);
  Formula want = mk::strat_mod(
      {1, 2},
      mk::and_(
          mk::and_(mk::next(P("p")),
                   mk::forall_sim(1, "c",
                                  mk::implies(mk::pref(PrefVariant::EA, 1, P("p"),
                                                       mk::path_atom("c")),
                                              mk::strat_dual({1}, mk::next(mk::not_(
                                                                      mk::path_atom("c"))))))),
          mk::and_(mk::next(P("q")),
                   mk::forall_sim(2, "c",
                                  mk::implies(mk::pref(PrefVariant::EA, 2, P("q"),
                                                       mk::path_atom("c")),
                                              mk::strat_dual({2}, mk::next(mk::not_(
                                                                      mk::path_atom("c")))))))));
  CHECK(nash == want);

  Formula secure = solution_concept(SolutionTemplate::Secure, goals);
  bool has_ea = false, has_ae = false;
  for_each_node(secure, [&](Formula n) {
    if (n->op == Op::Pref && n->variant == PrefVariant::EA) has_ea = true;
    if (n->op == Op::Pref && n->variant == PrefVariant::AE) has_ae = true;
  });
  CHECK(has_ea);
  CHECK(has_ae);

  Formula one = solution_concept(SolutionTemplate::Nash, {{1, P("p")}});
  REQUIRE(one->op == Op::StratMod);
  CHECK(one->coalition == std::vector<int>{1});
}

TEST_CASE("bounded oracle: sole controller and matching pennies") {
  CHECK(atlsc_bounded_check(sole_controller(), P("<<1>> X p"), 0, true) == Verdict::True);
  CHECK(atlsc_bounded_check(sole_controller(), P("<<2>> X p"), 0, true) == Verdict::False);
  CHECK(atlsc_bounded_check(pennies(), P("<<1>> X win"), 0, true) == Verdict::False);
  CHECK(atlsc_bounded_check(pennies(), P("<<1,2>> X win"), 0, true) == Verdict::True);
  CHECK(atlsc_bounded_check(pennies(), P("<<>> X win"), 0, true) == Verdict::False);
  CHECK(atlsc_bounded_check(pennies(), P("[] X win"), 0, true) == Verdict::True);
}

TEST_CASE("strategy contexts persist into subformulas and relax clears them") {
  Cgm g = pennies();
  // with agent 1 bound to any strategy, agent 2 can still force a win:
  // against a fixed one-step choice of agent 1 there is a matching reply
  CHECK(atlsc_bounded_check(g, P("<<1>> X <<2>> X win"), 1, true) == Verdict::True);
  // but inside the context of 1's strategy, [2] means 2 cannot AVOID win only
  // if 1's fixed action pins the row; clearing 1's strategy restores symmetry
  CHECK(atlsc_bounded_check(g, P("<<1>> ]1[ <<2>> X win"), 1, true) == Verdict::False);
}

TEST_CASE("empty-coalition dual equals the CTL* path quantifier") {
  Rng rng(3112);
  std::vector<std::string> atoms{"p", "q"};
  for (int i = 0; i < 20; ++i) {
    Cgm g = random_cgm(rng, 3, 2, 2, atoms);
    Formula b = random_ltl(rng, atoms, 2);
    Formula dual = mk::strat_dual({}, b);
    bool via_game = atlsc_bounded_check(g, dual, 0, true) == Verdict::True;
    bool via_ctl = ctlstar_check(to_kripke(g), mk::exists_path(b));
    CHECK(via_game == via_ctl);
    bool force = atlsc_bounded_check(g, mk::strat_mod({}, b), 0, true) == Verdict::True;
    bool all = ctlstar_check(to_kripke(g), mk::forall_path(b));
    CHECK(force == all);
  }
}

TEST_CASE("existential verdicts are monotone in the bound") {
  Cgm g = pennies();
  for (auto text : {"<<1,2>> X win", "<<1,2>> F win", "<<1>> X win"}) {
    Verdict v0 = atlsc_bounded_check(g, P(text), 0, true);
    Verdict v1 = atlsc_bounded_check(g, P(text), 1, true);
    if (v0 == Verdict::True) CHECK(v1 == Verdict::True);
  }
}

TEST_CASE("unknown policy is honest without h-sufficiency") {
  Cgm g = pennies();
  CHECK(atlsc_bounded_check(g, P("<<1,2>> X win"), 0, false) == Verdict::True);
  CHECK(atlsc_bounded_check(g, P("<<1>> X win"), 0, false) == Verdict::Unknown);
  // under negations only a false bounded verdict is sound
  CHECK(atlsc_bounded_check(g, P("!<<1,2>> X win"), 0, false) == Verdict::False);
  CHECK(atlsc_bounded_check(g, P("!<<1>> X win"), 0, false) == Verdict::Unknown);
  CHECK(atlsc_bounded_check(g, P("win"), 0, false) == Verdict::False);
  CHECK(atlsc_bounded_check(g, P("<<>> F win"), 0, false) == Verdict::False);
}

TEST_CASE("translated formulas agree with the oracle under bounded strategies") {
  std::vector<std::pair<Cgm, std::string>> suite{
      {pennies(), "<<1,2>> X win"},
      {pennies(), "<<1>> X win"},
      {pennies(), "<<>> X win"},
      {pennies(), "[] X win"},
      {pennies(), "<<1,2>> F win"},
      {sole_controller(), "<<1>> X p"},
      {sole_controller(), "<<2>> X p"},
      {sole_controller(), "<<1>> G p -> <<1>> X p"},
      {three_actions(), "<<1>> X p"},
      {three_actions(), "<<2>> X p"},
  };
  for (auto& [g, text] : suite) {
    Formula f = P(text);
    Verdict direct = atlsc_bounded_check(g, f, 0, true);
    for (AtlscOptions opts :
         {AtlscOptions{}, AtlscOptions{.merge = true, .log_actions = false},
          AtlscOptions{.merge = false, .log_actions = true}}) {
      AtlscTranslation tr = translate_atlsc(f, g, opts);
      bool translated = qctl_strategy_eval(tr, 0);
      CAPTURE(text);
      CAPTURE(opts.merge);
      CAPTURE(opts.log_actions);
      CHECK((direct == Verdict::True) == translated);
    }
  }
}
