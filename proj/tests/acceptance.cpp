#include <chrono>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "lbr/library.hpp"
#include "lbr/realizability.hpp"
#include "lbr/strategy.hpp"
#include "lbr/syntax.hpp"
#include "lbr/typecheck.hpp"
#include "support.hpp"

using namespace lbr;
using namespace lbr::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Table {
  std::vector<Numeral> values;
  Numeral tail;
  Numeral operator()(Numeral x) const { return x < values.size() ? values[x] : tail; }
  Term term() const { return table_term(values, tail); }
};

const std::vector<Table> kMinimumTables = {
    {{1, 3, 0, 2}, 4},
    {{2, 1, 0}, 0},
    {{3, 2, 1, 0, 0}, 0},
    {{5, 3, 4, 1, 2, 6}, 7},
    {{8, 6, 7, 4, 5, 2, 3, 1, 9, 0}, 11},
};

const std::vector<Table> kCoquandTables = {
    {{3, 2, 1, 0, 0}, 0},
    {{5, 3, 4, 1, 2, 6}, 7},
    {{4, 6, 2, 3, 1, 5}, 9},
    {{9, 8, 7, 6, 5, 4, 3, 2, 1}, 0},
    {{2, 2, 2}, 2},
};

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
    case Event::Kind::Result: os << "result:" << e.winner << ":" << e.backtracks; break;
  }
  return os.str();
}

Outcome em1_trace() {
  const std::vector<std::string> expected = {
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
  ScriptedAbelard ab({Choice::numeral(2), Choice::numeral(1)});
  GameResult r = run_game(em1_formula(lt_pred()), em1_realizer(lt_pred()), ab);
  std::vector<std::string> got;
  for (const Event& e : r.trace) got.push_back(brief(e));
  if (got != expected) {
    std::string s;
    for (const auto& g : got) s += g + " ";
    return {false, "trace " + s};
  }
  if (r.backtracks != 1) return {false, "backtracks " + std::to_string(r.backtracks)};
  return {true, "12 events, 1 backtrack"};
}

Outcome minimum_bound() {
  std::size_t games = 0, worst = 0;
  for (const Table& f : kMinimumTables) {
    MinimumPrinciple m = minimum_principle(f.term(), "f");
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      RandomAbelard ab(seed, 16);
      GameResult r = run_game(m.formula, m.realizer, ab);
      ++games;
      if (r.winner != "E") return {false, "f(0)=" + std::to_string(f(0)) + " seed " + std::to_string(seed) + " winner " + r.winner};
      if (r.backtracks > f(0)) {
        return {false, "f(0)=" + std::to_string(f(0)) + " seed " + std::to_string(seed) + " backtracks " + std::to_string(r.backtracks)};
      }
      worst = std::max<std::size_t>(worst, r.backtracks);
    }
  }
  return {true, std::to_string(games) + " games, max backtracks " + std::to_string(worst)};
}

Outcome coquand_agreement() {
  std::size_t games = 0;
  for (const Table& f : kCoquandTables) {
    CoquandExample c = coquand_example(f.term(), "f");
    for (Numeral a = 1; a <= 5; ++a) {
      ScriptedAbelard ab({Choice::numeral(a)});
      GameResult r = run_game(c.formula, c.realizer, ab);
      ++games;
      if (r.winner != "E") return {false, "scripted a=" + std::to_string(a) + " winner " + r.winner};
      Numeral w = r.final_play.choices().back().n;
      if (w != coquand_oracle(f, a)) {
        return {false, "a=" + std::to_string(a) + " witness " + std::to_string(w) + " oracle " + std::to_string(coquand_oracle(f, a))};
      }
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      RandomAbelard ab(seed, 6);
      GameResult r = run_game(c.formula, c.realizer, ab);
      ++games;
      if (r.winner != "E") return {false, "random seed " + std::to_string(seed) + " winner " + r.winner};
      Numeral a = r.final_play.choices().front().n;
      Numeral w = r.final_play.choices().back().n;
      if (f(w) > f(w + a)) return {false, "random witness " + std::to_string(w) + " for a=" + std::to_string(a)};
    }
  }
  return {true, std::to_string(games) + " games"};
}

Outcome fixpoint_learning() {
  Gen g(86);
  std::size_t runs = 0;
  for (std::size_t k = 0; k <= 10; ++k) {
    for (int round = 0; round < 10; ++round) {
      Term t = Term::state({});
      std::vector<Atom> atoms;
      for (std::size_t i = 0; i < k; ++i) {
        Numeral n = 1 + i;
        Numeral m = g.below(n);
        atoms.push_back(lt_atom(n, m));
        Term add = Term::app(Term::app(Term::oracle(OracleKind::Add, lt_pred()), Term::num(n)), Term::num(m));
        t = round % 2 ? Term::cup(add, t) : Term::cup(t, add);
      }
      FixpointResult r = fixpoint_learn(t, {});
      ++runs;
      if (!r.trajectory.back().tau.empty()) return {false, "k=" + std::to_string(k) + " final tau not empty"};
      if (r.trajectory.size() > k + 1) return {false, "k=" + std::to_string(k) + " took " + std::to_string(r.trajectory.size()) + " iterations"};
      for (const Atom& a : atoms) {
        if (!r.state.contains(a)) return {false, "k=" + std::to_string(k) + " missing atom"};
      }
    }
  }
  return {true, std::to_string(runs) + " runs"};
}

std::vector<Term> probe_terms(std::vector<Atom>& pool) {
  std::vector<Term> probes;
  Term ep = em1_realizer(lt_pred());
  for (Numeral n = 0; n < 4; ++n) {
    probes.push_back(Term::proj(0, Term::app(ep, Term::num(n))));
    probes.push_back(Term::proj(0, Term::proj(0, Term::proj(1, Term::app(ep, Term::num(n))))));
    probes.push_back(Term::app(Term::proj(1, Term::proj(1, Term::app(ep, Term::num(n)))), Term::num(1)));
  }
  for (Numeral n = 1; n <= 3; ++n) pool.push_back(lt_atom(n, n - 1));

  Table down{{3, 2, 1, 0, 0}, 0};
  MinimumPrinciple m = minimum_principle(down.term(), "down");
  probes.push_back(Term::proj(0, m.realizer));
  probes.push_back(Term::proj(0, Term::proj(1, Term::proj(1, m.realizer))));
  probes.push_back(Term::app(Term::proj(0, Term::proj(1, m.realizer)), Term::num(4)));
  CoquandExample c = coquand_example(down.term(), "down");
  for (Numeral a = 1; a <= 3; ++a) {
    probes.push_back(Term::proj(0, Term::app(c.realizer, Term::num(a))));
    probes.push_back(Term::proj(1, Term::app(c.realizer, Term::num(a))));
  }
  for (Numeral y = 1; y <= 3; ++y) {
    for (Numeral x = 0; x < 5; ++x) {
      if (down(x) < y && pool.size() < 12 && (x == 4 - y || x == 3)) pool.push_back(Atom{m.below, {y}, x});
    }
  }
  return probes;
}

Outcome stability() {
  std::vector<Atom> pool;
  std::vector<Term> probes = probe_terms(pool);
  if (pool.size() > 12) return {false, "pool too large"};
  Gen g(87);
  std::size_t checked = 0;
  for (const Term& p : probes) {
    if (!typecheck(p).is_atomic()) return {false, "probe of non-atomic type " + print_term(p)};
    for (int i = 0; i < 100; ++i) {
      auto chain = g.chain(pool, 50, 40);
      if (!weakly_increasing(chain)) return {false, "generated chain not increasing"};
      if (!converges_on(p, chain).has_value()) return {false, "no stabilization for " + print_term(p)};
      ++checked;
    }
  }
  return {true, std::to_string(probes.size()) + " probes, " + std::to_string(checked) + " chains, pool " + std::to_string(pool.size())};
}

Outcome lemma38_monitoring() {
  GameOptions opts;
  opts.arena.monitor_bound = 8;
  std::size_t verdicts = 0, games = 0;
  auto monitor = [&](const Formula& a, const Term& u, AbelardStrategy& ab) -> std::optional<std::string> {
    GameResult r = run_game(a, u, ab, opts);
    ++games;
    for (const Verdict& v : r.monitor) {
      ++verdicts;
      if (v.is_fails()) return "Fails at " + v.path + ": " + v.reason;
      if (!v.is_holds() && v.reason.find("bound") == std::string::npos) return "Unknown: " + v.reason;
    }
    return std::nullopt;
  };
  {
    ScriptedAbelard ab({Choice::numeral(2), Choice::numeral(1)});
    if (auto e = monitor(em1_formula(lt_pred()), em1_realizer(lt_pred()), ab)) return {false, "EM1 " + *e};
  }
  for (const Table& f : kMinimumTables) {
    MinimumPrinciple m = minimum_principle(f.term(), "f");
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      RandomAbelard ab(seed, 16);
      if (auto e = monitor(m.formula, m.realizer, ab)) return {false, "minimum " + *e};
    }
  }
  for (const Table& f : kCoquandTables) {
    CoquandExample c = coquand_example(f.term(), "f");
    for (Numeral a = 1; a <= 5; ++a) {
      ScriptedAbelard ab({Choice::numeral(a)});
      if (auto e = monitor(c.formula, c.realizer, ab)) return {false, "Coquand " + *e};
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      RandomAbelard ab(seed, 6);
      if (auto e = monitor(c.formula, c.realizer, ab)) return {false, "Coquand " + *e};
    }
  }
  return {true, std::to_string(games) + " games, " + std::to_string(verdicts) + " verdicts"};
}

bool value_matches(const Value& v, const Ty& ty) {
  switch (ty.kind()) {
    case Ty::Kind::Nat: return v.kind() == Value::Kind::Num;
    case Ty::Kind::Bool: return v.kind() == Value::Kind::Bool;
    case Ty::Kind::State: return v.kind() == Value::Kind::State;
    default: return false;
  }
}

Outcome confluence() {
  Gen g(88);
  EvalOptions inner;
  inner.strategy = Strategy::Innermost;
  for (int i = 0; i < 1000; ++i) {
    Term t = g.atomic_term(5);
    Ty ty = typecheck(t);
    Term a = normalize(t);
    Term b = normalize(t, inner);
    if (!(a == b)) return {false, "strategies disagree on " + print_term(t)};
    if (!value_matches(read_value(a), ty)) return {false, "not a value: " + print_term(a)};
  }
  return {true, "1000 terms"};
}

Outcome state_laws() {
  Gen g(89);
  for (int i = 0; i < 10000; ++i) {
    KnowledgeState s1 = g.state(6, 5);
    KnowledgeState s2 = g.state(6, 5);
    KnowledgeState u = consistent_union(s1, s2);
    if (!(consistent_union(s1, s1) == s1)) return {false, "idempotence " + print_state(s1)};
    if (!(consistent_union(KnowledgeState{}, s1) == s1) || !(consistent_union(s1, KnowledgeState{}) == s1)) {
      return {false, "identity " + print_state(s1)};
    }
    for (const Atom& b : s2.atoms()) {
      auto w = lookup(s1, b.pred, b.args);
      if (w && lookup(u, b.pred, b.args) != w) return {false, "left bias " + print_state(s1) + " " + print_state(s2)};
    }
    if (!state_leq(s1, u)) return {false, "inclusion " + print_state(s1) + " " + print_state(s2)};
  }
  return {true, "10000 pairs"};
}

struct Criterion {
  std::string name;
  std::function<Outcome()> run;
  double limit_ms;  // 0: no time limit
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"em1-trace", em1_trace, 1000},
      {"minimum-bound", minimum_bound, 30000},
      {"coquand-oracle", coquand_agreement, 10000},
      {"fixpoint-learning", fixpoint_learning, 0},
      {"stability", stability, 0},
      {"lemma38-monitor", lemma38_monitoring, 0},
      {"confluence", confluence, 0},
      {"state-laws", state_laws, 0},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && c.limit_ms > 0 && ms >= c.limit_ms) {
      o = {false, o.detail + ", over the " + std::to_string(static_cast<int>(c.limit_ms)) + " ms limit"};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail << " (" << static_cast<long>(ms) << " ms)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
