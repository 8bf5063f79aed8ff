#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "atlscpref/model.hpp"

using namespace atlscpref;

namespace {

Formula P(std::string const& s) { return parse_formula(s); }

std::string const kPennies = R"(
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
)";

Cgm pennies() { return *load_model(kPennies).cgm; }

Cgm random_cgm(std::mt19937_64& eng, int n_states, int n_agents, int n_actions) {
  auto below = [&](int n) { return static_cast<int>(eng() % static_cast<uint64_t>(n)); };
  Cgm g;
  for (int i = 0; i < n_states; ++i) {
    g.states.push_back("s" + std::to_string(i));
    std::set<std::string> lab;
    if (below(2)) lab.insert("p");
    if (below(2)) lab.insert("q");
    g.labels.push_back(lab);
  }
  g.props = {"p", "q"};
  for (int a = 1; a <= n_agents; ++a) {
    g.agents.push_back(a);
    std::vector<std::string> acts;
    for (int j = 0; j < n_actions; ++j)
      acts.push_back("m" + std::to_string(a) + std::to_string(j));
    g.actions[a] = acts;
  }
  g.initial = 0;
  g.outcome.assign(static_cast<size_t>(n_states),
                   std::vector<int>(g.move_count(), 0));
  for (int s = 0; s < n_states; ++s)
    for (size_t c = 0; c < g.move_count(); ++c)
      g.outcome[static_cast<size_t>(s)][c] = below(n_states);
  return g;
}

}  // namespace

TEST_CASE("loader round-trips a CGM through its text form") {
  Cgm g = pennies();
  Cgm g2 = *load_model(model_to_text(g)).cgm;
  CHECK(g2.states == g.states);
  CHECK(g2.outcome == g.outcome);
  CHECK(g2.labels == g.labels);
}

TEST_CASE("loader rejects partial outcome tables") {
  std::string bad = R"(
agents: 1
actions 1: a b
states: w0
init: w0
outcome w0 a -> w0
)";
  CHECK_THROWS_WITH_AS(load_model(bad), doctest::Contains("total"), ModelError);
}

TEST_CASE("loader rejects action names colliding with propositions") {
  std::string bad = R"(
agents: 1
actions 1: p
states: w0
init: w0
label w0: p
outcome w0 p -> w0
)";
  CHECK_THROWS_AS(load_model(bad), ModelError);
}

TEST_CASE("kripke loader enforces seriality") {
  std::string bad = R"(
states: w0 w1
init: w0
trans w0 -> w1
)";
  CHECK_THROWS_AS(load_model(bad), ModelError);
}

TEST_CASE("to_kripke on a one-state self-looping CGM") {
  std::string one = R"(
agents: 1
actions 1: a b
states: w0
init: w0
outcome w0 a -> w0
outcome w0 b -> w0
)";
  KripkeModel k = to_kripke(*load_model(one).cgm);
  CHECK(k.succ[0] == std::vector<int>{0});
}

TEST_CASE("to_kripke when agent 1 selects the successor") {
  std::string sel = R"(
agents: 1 2
actions 1: a b
actions 2: c
states: w0 w1
init: w0
outcome w0 a c -> w0
outcome w0 b c -> w1
outcome w1 a c -> w0
outcome w1 b c -> w1
)";
  KripkeModel k = to_kripke(*load_model(sel).cgm);
  CHECK(std::set<int>(k.succ[0].begin(), k.succ[0].end()) == std::set<int>{0, 1});
  CHECK(std::set<int>(k.succ[1].begin(), k.succ[1].end()) == std::set<int>{0, 1});
}

TEST_CASE("to_kripke matches exhaustive move enumeration on matching pennies") {
  Cgm g = pennies();
  KripkeModel k = to_kripke(g);
  // independent enumeration over all global moves
  for (size_t s = 0; s < g.states.size(); ++s) {
    std::set<int> expect;
    for (int a1 = 0; a1 < 2; ++a1)
      for (int a2 = 0; a2 < 2; ++a2)
        expect.insert(g.outcome[s][g.encode_move({a1, a2})]);
    CHECK(std::set<int>(k.succ[s].begin(), k.succ[s].end()) == expect);
  }
}

TEST_CASE("unfold1 has exactly 1 + |W| * prod |Act_i| states") {
  Cgm g = pennies();
  Cgm u = unfold1(g);
  CHECK(u.states.size() == 1 + 2 * 4);

  std::mt19937_64 eng(5);
  for (int i = 0; i < 10; ++i) {
    Cgm r = random_cgm(eng, 1 + static_cast<int>(eng() % 3), 2, 2);
    CHECK(unfold1(r).states.size() == 1 + r.states.size() * r.move_count());
  }
}

TEST_CASE("unfold1 initial state satisfies no action atom") {
  Cgm u = unfold1(pennies());
  for (std::string const a : {"h1", "t1", "h2", "t2"})
    CHECK_FALSE(u.labels[static_cast<size_t>(u.initial)].count(a));
}

TEST_CASE("unfold1 marks exactly one action atom per agent off the initial state") {
  std::mt19937_64 eng(11);
  Cgm g = random_cgm(eng, 3, 2, 2);
  Cgm u = unfold1(g);
  for (size_t s = 0; s < u.states.size(); ++s) {
    if (static_cast<int>(s) == u.initial) continue;
    for (int a : u.agents) {
      int marked = 0;
      for (auto& act : u.actions.at(a)) marked += u.labels[s].count(act);
      CHECK(marked == 1);
    }
  }
}

TEST_CASE("unfold1 projects valuations back to the base model") {
  std::mt19937_64 eng(13);
  Cgm g = random_cgm(eng, 4, 2, 2);
  Cgm u = unfold1(g);
  size_t moves = g.move_count();
  for (size_t w = 0; w < g.states.size(); ++w)
    for (size_t c = 0; c < moves; ++c) {
      size_t id = 1 + w * moves + c;
      std::set<std::string> projected;
      for (auto& p : u.labels[id])
        if (g.props.count(p)) projected.insert(p);
      CHECK(projected == g.labels[w]);
    }
}

TEST_CASE("unfold1 outcome follows o_flat((w,b),a) = (o(w,a),a)") {
  Cgm g = pennies();
  Cgm u = unfold1(g);
  size_t moves = g.move_count();
  for (size_t w = 0; w < g.states.size(); ++w)
    for (size_t b = 0; b < moves; ++b)
      for (size_t c = 0; c < moves; ++c) {
        size_t src = 1 + w * moves + b;
        size_t expect = 1 + static_cast<size_t>(g.outcome[w][c]) * moves + c;
        CHECK(u.outcome[src][c] == static_cast<int>(expect));
      }
}

namespace {
// two-state model: s0 {} can stay or move to s1 {p}; s1 returns to s0
KripkeModel alternating() {
  std::string txt = R"(
states: s0 s1
init: s0
label s1: p
trans s0 -> s0
trans s0 -> s1
trans s1 -> s0
)";
  return *load_model(txt).kripke;
}

PreferenceDescription example_desc() {
  PreferenceDescription d;
  d.objectives = {P("X (!p & X p)"), P("X X (!p & X p)"),
                  P("!(X (!p & X p)) & !(X X (!p & X p))")};
  d.better = {{2, 1}};
  return d;
}
}  // namespace

TEST_CASE("build_mb with K=1 and G p on an all-p model keeps a single label") {
  std::string txt = R"(
states: w0 w1
init: w0
label w0: p
label w1: p
trans w0 -> w1
trans w1 -> w0
)";
  KripkeModel k = *load_model(txt).kripke;
  PreferenceDescription d;
  d.objectives = {P("G p")};
  FreshVarSupply supply;
  KripkeModel mb = build_mb(k, d, supply);
  // closure of G p is {G p, false}; only the G p label is reachable, so the
  // product is the base model with one extra always-true atom
  REQUIRE(mb.states.size() == k.states.size());
  std::string q;
  for (auto& p : mb.labels[0])
    if (!k.props.count(p)) q = p;
  REQUIRE(!q.empty());
  for (auto& lab : mb.labels) CHECK(lab.count(q));
}

TEST_CASE("build_mb label trajectory follows the tail updates") {
  KripkeModel k = alternating();
  FreshVarSupply supply;
  PrefVocabulary v = make_pref_vocab({{1, example_desc()}}, supply);
  AnnotatedModel mb = build_mb_product(k, v, true);

  Formula b1 = ltl_canonical(P("X (!p & X p)"));
  Formula b2 = ltl_canonical(P("X X (!p & X p)"));
  Formula b1_after = ltl_canonical(P("!p & X p"));

  auto member = [&](int node, int slot) {
    return v.of(1).slots[static_cast<size_t>(slot)]
        .members[static_cast<size_t>(mb.member_at(node, 1, slot))];
  };

  // initial node carries the objectives themselves
  CHECK(member(0, 0) == b1);
  CHECK(member(0, 1) == b2);

  // step s0 -> s1 (a p-state): X-objectives shed one X each
  int n1 = -1;
  for (int t : mb.model.succ[0])
    if (mb.base_state[static_cast<size_t>(t)] == 1) n1 = t;
  REQUIRE(n1 >= 0);
  CHECK(member(n1, 0) == b1_after);
  CHECK(member(n1, 1) == b1);

  // step onward s1 -> s0 (a !p-state): !p & X p reduces to p
  int n2 = mb.model.succ[static_cast<size_t>(n1)][0];
  CHECK(member(n2, 0) == ltl_canonical(P("p")));
  CHECK(member(n2, 1) == b1_after);

  // and from there to s1 (p): p resolves to true, !p & X p dies
  int n3 = -1;
  for (int t : mb.model.succ[static_cast<size_t>(n2)])
    if (mb.base_state[static_cast<size_t>(t)] == 1) n3 = t;
  REQUIRE(n3 >= 0);
  CHECK(member(n3, 0) == mk::top());
  CHECK(member(n3, 1) == mk::bot());
}

TEST_CASE("build_mb reachable states carry exactly one q per slot") {
  std::mt19937_64 eng(23);
  for (int round = 0; round < 10; ++round) {
    Cgm g = random_cgm(eng, 4, 2, 2);
    KripkeModel k = to_kripke(g);
    PreferenceDescription d;
    d.objectives = {P("X p"), P("!(X p) & (p U q)"), P("!(X p) & !(p U q)")};
    d.better = {{1, 2}};
    FreshVarSupply supply;
    PrefVocabulary v = make_pref_vocab({{1, d}}, supply);
    AnnotatedModel mb = build_mb_product(k, v, true);
    for (size_t node = 0; node < mb.model.states.size(); ++node) {
      for (int slot = 0; slot < 3; ++slot) {
        int count = 0;
        for (auto& q : v.of(1).naming[static_cast<size_t>(slot)].q_names)
          count += mb.model.labels[node].count(q);
        CHECK(count == 1);
      }
    }
  }
}

TEST_CASE("pref_update_path: empty path returns the objectives") {
  KripkeModel k = alternating();
  PreferenceDescription d = example_desc();
  CHECK(pref_update_path(d, {}, k) == d.objectives);
}

TEST_CASE("pref_update_path follows the example's one-step update") {
  KripkeModel k = alternating();
  PreferenceDescription d = example_desc();
  auto after = pref_update_path(d, {"s0", "s0"}, k);  // move to a !p state
  CHECK(after[0] == ltl_canonical(P("!p & X p")));
  CHECK(after[1] == ltl_canonical(P("X (!p & X p)")));
}

TEST_CASE("pref_update_path rejects non-transitions and wrong starts") {
  KripkeModel k = alternating();
  PreferenceDescription d = example_desc();
  CHECK_THROWS_AS(pref_update_path(d, {"s1"}, k), ModelError);
  CHECK_THROWS_AS(pref_update_path(d, {"s0", "s0", "s1", "s1"}, k), ModelError);
}

TEST_CASE("pref_update_path is prefix-compositional") {
  KripkeModel k = alternating();
  PreferenceDescription d = example_desc();
  std::vector<std::string> whole{"s0", "s0", "s1", "s0", "s1"};
  auto direct = pref_update_path(d, whole, k);

  // update along the prefix, then continue with the updated description
  PreferenceDescription mid;
  mid.objectives = pref_update_path(d, {"s0", "s0", "s1"}, k);
  mid.better = d.better;
  // the tail segment starts where the prefix ended; re-anchor the model there
  KripkeModel k2 = k;
  k2.initial = k.index_of("s1");
  auto resumed = pref_update_path(mid, {"s1", "s0", "s1"}, k2);
  CHECK(resumed.size() == direct.size());
  for (size_t i = 0; i < direct.size(); ++i)
    CHECK(ltl_canonical(resumed[i]) == ltl_canonical(direct[i]));
}

TEST_CASE("preference lint flags reflexive and transitivity gaps") {
  PreferenceDescription d;
  d.objectives = {P("p"), P("!p & q"), P("!p & !q")};
  d.better = {{1, 1}};
  CHECK(!lint_preference(d).empty());
  d.better = {{1, 2}, {2, 3}};
  CHECK(!lint_preference(d).empty());
  d.better = {{1, 2}, {2, 3}, {1, 3}};
  CHECK(lint_preference(d).empty());
}
