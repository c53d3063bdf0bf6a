#include <doctest.h>

#include <sstream>

#include "lbr/error.hpp"
#include "lbr/library.hpp"
#include "lbr/strategy.hpp"
#include "lbr/syntax.hpp"
#include "support.hpp"

using namespace lbr;
using namespace lbr::testing;

namespace {

Env test_env() {
  Env env;
  env.define_predicate("lt", lt_pred());
  env.define_predicate("leq", leq_pred());
  return env;
}

Play play_of(const Formula& root, const std::vector<Choice>& choices) {
  Play p(root);
  for (const Choice& c : choices) p = p.extended(c);
  return p;
}

std::string brief(const Event& e) {
  std::ostringstream os;
  switch (e.kind) {
    case Event::Kind::Extend: os << e.by << ":" << to_string(e.choice); break;
    case Event::Kind::Backtrack: os << "backtrack:" << e.to << ":" << print_state(e.state); break;
    case Event::Kind::Sigma: os << "sigma:" << print_state(e.state); break;
    case Event::Kind::OmegaClause:
      os << "omega:" << e.clause;
      if (e.j) os << ":j=" << *e.j;
      break;
    case Event::Kind::Result: os << "result:" << e.winner << ":" << e.backtracks << (e.forfeit ? ":forfeit" : ""); break;
  }
  return os.str();
}

std::vector<std::string> briefs(const std::vector<Event>& events) {
  std::vector<std::string> out;
  for (const Event& e : events) out.push_back(brief(e));
  return out;
}

// Eloise's move recomputed from scratch: rho by adapt, Sigma by sigma_of, and
// the clause-3 mismatch scan written out directly.
BtMove omega_reference(const Term& u, const std::vector<Play>& history) {
  const Play& p = history.back();
  KnowledgeState s = sigma_of(u, history);
  Term t = adapt(u, p);
  const Formula& last = p.last();
  if (last.kind() == FormulaKind::Exists) {
    return {BtMove::Kind::Extend, Choice::numeral(eval_numeral(approximate(Term::proj(0, t), s))), 0, 1};
  }
  if (last.kind() == FormulaKind::Or) {
    bool left = eval_bool(approximate(Term::proj(0, t), s));
    return {BtMove::Kind::Extend, left ? Choice::left() : Choice::right(), 0, 2};
  }
  KnowledgeState next = consistent_union(s, eval_state(approximate(t, s)));
  for (std::size_t j = 1; j < p.size(); ++j) {
    const Formula& aj = p.positions()[j - 1];
    const Choice& chosen = p.choices()[j - 1];
    Term w = adapt(u, p.prefix(j));
    if (aj.kind() == FormulaKind::Exists) {
      if (eval_numeral(approximate(Term::proj(0, w), next)) != chosen.n) return {BtMove::Kind::Backtrack, {}, j, 3};
    } else if (aj.kind() == FormulaKind::Or) {
      bool left = eval_bool(approximate(Term::proj(0, w), next));
      if (left != (chosen.kind == Choice::Kind::Left)) return {BtMove::Kind::Backtrack, {}, j, 3};
    }
  }
  return {BtMove::Kind::Backtrack, {}, p.size(), 3};
}

// Plays a game step by step, checking the memo, Sigma and omega against
// from-scratch recomputations at every Eloise turn.
void differential_game(const Formula& a, const Term& u, AbelardStrategy& ab, std::size_t fuel = 500) {
  Arena arena(a, u);
  while (arena.status() != ArenaStatus::Finished && arena.moves() < fuel) {
    for (std::size_t len = 1; len <= arena.play().size(); ++len) {
      REQUIRE(arena.adapted(len) == adapt(u, arena.play().prefix(len)));
    }
    REQUIRE(arena.state() == sigma_of(u, arena.history()));
    if (arena.status() == ArenaStatus::EloiseToMove) {
      BtMove expected = omega_reference(u, arena.history());
      BtMove actual = arena.omega();
      CHECK(actual.kind == expected.kind);
      CHECK(actual.clause == expected.clause);
      if (expected.kind == BtMove::Kind::Extend) {
        CHECK(actual.choice == expected.choice);
      } else {
        CHECK(actual.target == expected.target);
      }
      KnowledgeState before = arena.state();
      arena.eloise_step();
      CHECK(state_leq(before, arena.state()));
    } else {
      std::optional<Choice> c = ab.choose(arena.play());
      if (!c) {
        arena.forfeit();
        break;
      }
      arena.abelard_move(*c);
    }
  }
}

const std::vector<std::string> kEm1Trace = {
    "A:2",
    "omega:2",
    "E:R",
    "A:1",
    "omega:3:j=2",
    "backtrack:2:(state ((lt ((S (S 0))) (S 0))))",
    "sigma:(state ((lt ((S (S 0))) (S 0))))",
    "omega:2",
    "E:L",
    "omega:1",
    "E:1",
    "result:E:1",
};

}  // namespace

TEST_SUITE("strategy") {
  TEST_CASE("adapted realizers") {
    Formula em1 = em1_formula(lt_pred());
    Term u = em1_realizer(lt_pred());
    CHECK(adapt(u, Play(em1)) == u);
    CHECK(adapt(u, play_of(em1, {Choice::numeral(2)})) == Term::app(u, Term::num(2)));
    Term at_or = Term::app(u, Term::num(2));
    CHECK(adapt(u, play_of(em1, {Choice::numeral(2), Choice::right()})) == p2(at_or));
    CHECK(adapt(u, play_of(em1, {Choice::numeral(2), Choice::left()})) == p1(at_or));
    CHECK(adapt(u, play_of(em1, {Choice::numeral(2), Choice::left(), Choice::numeral(4)})) ==
          Term::proj(1, p1(at_or)));
  }

  TEST_CASE("sigma steps") {
    Term u = em1_realizer(lt_pred());
    KnowledgeState s = state_of({lt_atom(5, 0)});
    CHECK(sigma_step(s, false, Term::state({})) == s);
    Term abandoned = Term::app(p2(Term::app(u, Term::num(2))), Term::num(1));
    CHECK(sigma_step({}, true, abandoned) == state_of({lt_atom(2, 1)}));
    CHECK(sigma_step(s, true, Term::num(3)) == s);
  }

  TEST_CASE("omega at the disjunction and at the false atom") {
    Formula em1 = em1_formula(lt_pred());
    Term u = em1_realizer(lt_pred());
    Arena arena(em1, u);
    arena.abelard_move(Choice::numeral(2));
    BtMove m = arena.omega();
    CHECK(m.kind == BtMove::Kind::Extend);
    CHECK(m.choice == Choice::right());
    CHECK(m.clause == 2);
    arena.eloise_step();
    arena.abelard_move(Choice::numeral(1));
    BtMove b = arena.omega();
    CHECK(b.kind == BtMove::Kind::Backtrack);
    CHECK(b.target == 2);
    CHECK(b.clause == 3);
    arena.eloise_step();
    CHECK(arena.state() == state_of({lt_atom(2, 1)}));
    BtMove l = arena.omega();
    CHECK(l.choice == Choice::left());
    arena.eloise_step();
    BtMove w = arena.omega();
    CHECK(w.choice == Choice::numeral(1));
    arena.eloise_step();
    CHECK(arena.status() == ArenaStatus::Finished);
    CHECK(arena.winner() == "E");
    CHECK_THROWS_AS(arena.omega(), Error);
  }

  TEST_CASE("excluded-middle game reproduces the worked trace") {
    ScriptedAbelard ab({Choice::numeral(2), Choice::numeral(1)});
    GameResult r = run_game(em1_formula(lt_pred()), em1_realizer(lt_pred()), ab);
    CHECK(briefs(r.trace) == kEm1Trace);
    CHECK(r.winner == "E");
    CHECK(r.backtracks == 1);
    CHECK_FALSE(r.forfeit);
    CHECK(r.final_state == state_of({lt_atom(2, 1)}));
    CHECK(print_formula(r.final_play.last()) == "(atom lt (S (S 0)) (S 0))");
  }

  TEST_CASE("minimum principle with f(0) = 3 against random opponents") {
    Term f = table_term({3, 2, 1, 0, 0}, 0);
    MinimumPrinciple m = minimum_principle(f, "f");
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      RandomAbelard ab(seed);
      GameResult r = run_game(m.formula, m.realizer, ab);
      CHECK(r.winner == "E");
      CHECK(r.backtracks <= 3);
    }
  }

  TEST_CASE("true atom wins at once") {
    Env env = test_env();
    ScriptedAbelard ab({});
    GameResult r = run_game(parse_formula("(atom leq 0 0)", env), Term::state({}), ab);
    CHECK(r.winner == "E");
    CHECK(r.moves == 0);
    CHECK(briefs(r.trace) == std::vector<std::string>{"result:E:0"});
  }

  TEST_CASE("monitor along the worked game") {
    Formula em1 = em1_formula(lt_pred());
    Term u = em1_realizer(lt_pred());
    Arena arena(em1, u);
    CHECK(lemma38_monitor(arena, 10).is_holds());
    arena.abelard_move(Choice::numeral(2));
    CHECK(lemma38_monitor(arena, 10).is_holds());
    arena.eloise_step();
    arena.abelard_move(Choice::numeral(1));
    arena.eloise_step();
    Verdict v = lemma38_monitor(arena, 10);
    CHECK(v.is_holds());
    CHECK_FALSE(v.bounded);
  }

  TEST_CASE("monitor option records a verdict per Eloise turn") {
    ScriptedAbelard ab({Choice::numeral(2), Choice::numeral(1)});
    GameOptions opts;
    opts.arena.monitor_bound = 8;
    GameResult r = run_game(em1_formula(lt_pred()), em1_realizer(lt_pred()), ab, opts);
    CHECK(r.monitor.size() == 4);
    for (const Verdict& v : r.monitor) CHECK_FALSE(v.is_fails());
  }

  TEST_CASE("opponent errors and forfeits") {
    Formula em1 = em1_formula(lt_pred());
    Term u = em1_realizer(lt_pred());
    Arena arena(em1, u);
    CHECK_THROWS_AS(arena.abelard_move(Choice::left()), Error);
    arena.abelard_move(Choice::numeral(2));
    CHECK_THROWS_AS(arena.abelard_move(Choice::numeral(1)), Error);

    ScriptedAbelard ab({Choice::numeral(2)});
    GameResult r = run_game(em1, u, ab);
    CHECK(r.winner == "E");
    CHECK(r.forfeit);
    CHECK(briefs(r.trace).back() == "result:E:0:forfeit");
  }

  TEST_CASE("invalid inputs are rejected") {
    Env env = test_env();
    auto code = [](auto&& f) {
      try {
        f();
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::Io;
    };
    Formula imp = parse_formula("(imp (atom lt 1 0) (atom lt 1 0))", env);
    CHECK(code([&] { Arena(imp, Term::lam("s", Ty::state(), Term::bound(0))); }) == ErrorCode::NotImplFree);
    Formula atom = parse_formula("(atom lt 1 0)", env);
    CHECK(code([&] { Arena(atom, Term::num(0)); }) == ErrorCode::Type);
    CHECK(code([&] { Arena(atom, Term::state(state_of({lt_atom(1, 0)}))); }) == ErrorCode::NonEmptyState);
  }

  TEST_CASE("a non-learning realizer times out") {
    Env env = test_env();
    Formula f = parse_formula("(exists y (atom lt 0 y))", env);
    ScriptedAbelard ab({});
    GameResult r = run_game(f, Term::pair(Term::num(0), Term::state({})), ab);
    CHECK(r.winner == "timeout");
    CHECK_FALSE(r.error.empty());
    CHECK(briefs(r.trace).back() == "result:timeout:1");
  }

  TEST_CASE("move budget") {
    ScriptedAbelard ab({Choice::numeral(2), Choice::numeral(1)});
    GameOptions opts;
    opts.fuel = 2;
    GameResult r = run_game(em1_formula(lt_pred()), em1_realizer(lt_pred()), ab, opts);
    CHECK(r.winner == "timeout");
    CHECK(r.moves == 2);
  }

  TEST_CASE("traces are deterministic") {
    Term f = table_term({5, 3, 4, 1, 2, 6}, 7);
    MinimumPrinciple m = minimum_principle(f, "f");
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      RandomAbelard a1(seed), a2(seed);
      CHECK(briefs(run_game(m.formula, m.realizer, a1).trace) == briefs(run_game(m.formula, m.realizer, a2).trace));
    }
  }

  TEST_CASE("memo, Sigma and omega match from-scratch recomputation") {
    ScriptedAbelard em({Choice::numeral(2), Choice::numeral(1)});
    differential_game(em1_formula(lt_pred()), em1_realizer(lt_pred()), em);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      RandomAbelard ab(seed, 6);
      differential_game(em1_formula(lt_pred()), em1_realizer(lt_pred()), ab);
      RandomAbelard ab2(seed, 8);
      MinimumPrinciple m = minimum_principle(table_term({4, 6, 2, 3, 1, 5}, 9), "g");
      differential_game(m.formula, m.realizer, ab2);
      RefuterAbelard ref(8);
      differential_game(m.formula, m.realizer, ref);
      CoquandExample c = coquand_example(table_term({5, 3, 4, 1, 2, 0}, 0), "h");
      ScriptedAbelard ca({Choice::numeral(1 + seed % 5)});
      differential_game(c.formula, c.realizer, ca);
    }
  }

  TEST_CASE("backtracks land on Eloise prefixes or stay in place") {
    MinimumPrinciple m = minimum_principle(table_term({4, 6, 2, 3, 1, 5}, 9), "g");
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      RandomAbelard ab(seed, 8);
      GameResult r = run_game(m.formula, m.realizer, ab);
      Play play(m.formula);
      for (const Event& e : r.trace) {
        if (e.kind == Event::Kind::Extend) {
          play = play.extended(e.choice);
        } else if (e.kind == Event::Kind::Backtrack) {
          REQUIRE(play.complete());
          CHECK_FALSE(is_won(play));
          auto targets = legal_bt_moves(play).backtrack_targets;
          CHECK(std::find(targets.begin(), targets.end(), e.to) != targets.end());
          play = play.prefix(e.to);
        }
      }
      CHECK(play == r.final_play);
    }
  }

  TEST_CASE("opponent models") {
    auto r = parse_abelard("random:7:5");
    CHECK(r->describe() == "random:7:5");
    CHECK(parse_abelard("scripted:2,L,R")->describe() == "scripted:2,L,R");
    CHECK(parse_abelard("refuter")->describe() == "refuter:20");
    CHECK(parse_abelard("scripted")->choose(Play(em1_formula(lt_pred())))  == std::nullopt);
    for (const char* bad : {"random", "random:x", "scripted:2,Q", "nope", "refuter:0", "random:1:0", "refuter:1:2"}) {
      try {
        parse_abelard(bad);
        FAIL("accepted " << bad);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Usage);
      }
    }
    Formula em1 = em1_formula(lt_pred());
    RandomAbelard ra(3, 5);
    for (int i = 0; i < 50; ++i) {
      auto c = ra.choose(Play(em1));
      REQUIRE(c);
      CHECK(c->kind == Choice::Kind::Numeral);
      CHECK(c->n < 5);
    }
    int calls = 0;
    CallbackAbelard cb([&](const Play&) -> std::optional<Choice> {
      ++calls;
      return calls == 1 ? std::optional<Choice>(Choice::numeral(3)) : std::nullopt;
    });
    GameResult g = run_game(em1, em1_realizer(lt_pred()), cb);
    CHECK(calls == 2);
    CHECK(g.forfeit);
  }

  TEST_CASE("bounded truth and the refuter") {
    Env env = test_env();
    CHECK(bounded_truth(parse_formula("(forall x (exists y (atom leq x y)))", env), 5));
    CHECK_FALSE(bounded_truth(parse_formula("(forall x (exists y (atom lt x y)))", env), 5));
    RefuterAbelard ref(5);
    Formula f = parse_formula("(and (atom lt 2 1) (forall x (atom leq 2 x)))", env);
    CHECK(ref.choose(Play(f)) == Choice::right());
    CHECK(ref.choose(Play(f.right())) == Choice::numeral(3));
  }
}
