#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "atlscpref/gnf.hpp"
#include "atlscpref/lasso.hpp"
#include "atlscpref/parser.hpp"
#include "atlscpref/printer.hpp"

using namespace atlscpref;

namespace {
Formula P(std::string const& s) { return parse_formula(s); }

std::set<std::string> L(std::initializer_list<char const*> xs) {
  std::set<std::string> r;
  for (auto x : xs) r.insert(x);
  return r;
}

Formula random_ltl(std::mt19937_64& eng, std::vector<std::string> const& atoms, int depth) {
  auto below = [&](int n) { return static_cast<int>(eng() % static_cast<uint64_t>(n)); };
  if (depth == 0) {
    int k = below(5);
    if (k == 0) return mk::bot();
    if (k == 4) return mk::top();
    return mk::atom(atoms[static_cast<size_t>(below(static_cast<int>(atoms.size())))]);
  }
  switch (below(7)) {
    case 0: return mk::next(random_ltl(eng, atoms, depth - 1));
    case 1: return mk::until(random_ltl(eng, atoms, depth - 1), random_ltl(eng, atoms, depth - 1));
    case 2: return mk::implies(random_ltl(eng, atoms, depth - 1), random_ltl(eng, atoms, depth - 1));
    case 3: return mk::and_(random_ltl(eng, atoms, depth - 1), random_ltl(eng, atoms, depth - 1));
    case 4: return mk::or_(random_ltl(eng, atoms, depth - 1), random_ltl(eng, atoms, depth - 1));
    case 5: return mk::not_(random_ltl(eng, atoms, depth - 1));
    default: return mk::finally_(random_ltl(eng, atoms, depth - 1));
  }
}
}  // namespace

TEST_CASE("gnf of p U q has the expected minterm/tail table") {
  Gnf g = gnf(P("p U q"));
  REQUIRE(g.atoms == std::vector<std::string>{"p", "q"});
  // mask bit 0 = p, bit 1 = q
  CHECK(g.tails[0b00] == mk::bot());            // !p & !q
  CHECK(g.tails[0b01] == normalize(P("p U q")));  // p & !q
  CHECK(g.tails[0b10] == mk::top());            // !p & q
  CHECK(g.tails[0b11] == mk::top());            // p & q
}

TEST_CASE("gnf of X p is guard-independent") {
  Gnf g = gnf(P("X p"));
  REQUIRE(g.tails.size() == 2);
  CHECK(g.tails[0] == P("p"));
  CHECK(g.tails[1] == P("p"));
}

TEST_CASE("gnf of false maps every minterm to false") {
  Gnf g = gnf(mk::bot());
  REQUIRE(g.tails.size() == 1);
  CHECK(g.tails[0] == mk::bot());
}

TEST_CASE("gnf rejects non-LTL input") {
  CHECK_THROWS_AS(gnf(P("E X p")), GnfError);
  CHECK_THROWS_AS(closure(P("exists q . q")), GnfError);
}

TEST_CASE("gnf guards are a propositional full system by construction") {
  Gnf g = gnf(P("p U (q & X p)"));
  auto guards_sat = [&](uint32_t valuation) {
    int sat = 0;
    for (size_t mask = 0; mask < g.tails.size(); ++mask) {
      LassoWord w;
      std::set<std::string> letter;
      for (size_t i = 0; i < g.atoms.size(); ++i)
        if (valuation >> i & 1) letter.insert(g.atoms[i]);
      w.loop.push_back(letter);
      if (ltl_eval(w, g.guard(mask))) ++sat;
    }
    return sat;
  };
  for (uint32_t v = 0; v < 4; ++v) CHECK(guards_sat(v) == 1);
}

TEST_CASE("closure examples") {
  auto members = [](std::vector<Formula> const& ms) {
    std::set<int> ids;
    for (Formula m : ms) ids.insert(m->id);
    return ids;
  };
  CHECK(members(closure(P("p U q"))) ==
        members({normalize(P("p U q")), mk::top(), mk::bot()}));
  CHECK(members(closure(P("X p"))) ==
        members({mk::next(P("p")), P("p"), mk::top(), mk::bot()}));
  CHECK(members(closure(P("p"))) == members({P("p"), mk::top(), mk::bot()}));
}

TEST_CASE("closures are tail-closed and never gain modal depth") {
  std::mt19937_64 eng(42);
  std::vector<std::string> atoms{"p", "q"};
  for (int i = 0; i < 120; ++i) {
    Formula b = random_ltl(eng, atoms, 3);
    ClosureTable t = make_closure_table(b);
    int d0 = modal_depth(normalize(b));
    for (size_t m = 0; m < t.members.size(); ++m) {
      CHECK(modal_depth(t.members[m]) <= d0);
      for (Formula tail : t.gnfs[m].tails) {
        CHECK(t.index.count(tail->id));  // tail-closed
      }
    }
  }
}

TEST_CASE("ltl_eval on lasso words") {
  LassoWord all_p{{}, {L({"p"})}};
  CHECK(ltl_eval(all_p, P("G p")));
  CHECK(ltl_eval(all_p, P("p U p")));

  LassoWord later_p{{L({})}, {L({"p"})}};
  CHECK(ltl_eval(later_p, P("F p")));
  CHECK_FALSE(ltl_eval(later_p, P("p")));

  LassoWord p_then_empty{{L({"p"})}, {L({})}};
  CHECK_FALSE(ltl_eval(p_then_empty, P("p U q")));
  CHECK(ltl_eval(p_then_empty, P("p")));
  CHECK_FALSE(ltl_eval(p_then_empty, P("X p")));
}

TEST_CASE("full_system_check") {
  auto r1 = full_system_check({P("p"), P("!p")}, {"p"}, 4);
  CHECK(r1.exact);
  CHECK(r1.ok);

  auto r2 = full_system_check({P("p U q"), P("!(p U q)")}, {"p", "q"}, 4);
  CHECK_FALSE(r2.exact);
  CHECK(r2.ok);

  auto r3 = full_system_check({P("p"), P("q")}, {"p", "q"}, 4);
  CHECK(r3.exact);
  CHECK_FALSE(r3.ok);
}

TEST_CASE("gnf agrees with the original on every short lasso") {
  // direct double-evaluation on a small sample; the generated corpus runs in
  // the acceptance suite via the compiled path
  std::mt19937_64 eng(7);
  std::vector<std::string> atoms{"p", "q"};
  for (int i = 0; i < 40; ++i) {
    Formula b = random_ltl(eng, atoms, 3);
    Formula gf = gnf_as_formula(gnf(b));
    int checked = 0;
    enumerate_lassos(2, 4, [&](std::vector<uint32_t> const& letters, int pre) {
      LassoWord w;
      for (size_t j = 0; j < letters.size(); ++j) {
        std::set<std::string> letter;
        if (letters[j] & 1) letter.insert("p");
        if (letters[j] & 2) letter.insert("q");
        if (j < static_cast<size_t>(pre))
          w.prefix.push_back(letter);
        else
          w.loop.push_back(letter);
      }
      if (ltl_eval(w, b) != ltl_eval(w, gf)) ++checked;
    });
    CHECK(checked == 0);
    CHECK(gnf_agrees_on_all_lassos(b, 4));
  }
}

TEST_CASE("closure member count stays within the subformula bound") {
  std::mt19937_64 eng(3);
  std::vector<std::string> atoms{"p", "q", "r"};
  for (int i = 0; i < 60; ++i) {
    Formula b = random_ltl(eng, atoms, 3);
    auto cl = closure(b);
    size_t subs = dag_size(b);
    if (subs < 12) CHECK(cl.size() <= (size_t{1} << subs));
    // the fixpoint converged: already implied by closure() returning
    CHECK(cl.size() <= 4096);
  }
}
