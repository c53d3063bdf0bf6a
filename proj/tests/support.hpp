#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lbr/eval.hpp"
#include "lbr/library.hpp"
#include "lbr/predicate.hpp"
#include "lbr/state.hpp"
#include "lbr/syntax.hpp"
#include "lbr/term.hpp"
#include "lbr/type.hpp"

namespace lbr::testing {

// Independent arithmetic for the comparison predicates.
inline bool lt_holds(Numeral bound, Numeral y) { return y < bound; }
inline bool leq_holds(Numeral bound, Numeral y) { return y <= bound; }

inline Predicate lt_pred() { return lt_predicate(); }
inline Predicate leq_pred() { return Predicate::make("leq", 2, arith::leq()); }

inline Atom lt_atom(Numeral bound, Numeral y) { return Atom{lt_pred(), {bound}, y}; }

inline KnowledgeState state_of(std::vector<Atom> atoms) { return KnowledgeState::from_atoms(std::move(atoms)); }

// ---------------------------------------------------------------------------
// Reference big-step evaluator, written without the library's normalizer.

struct RVal;
using RPtr = std::shared_ptr<const RVal>;

struct RVal {
  enum Kind { Num, Bool, State, Pair, Closure, Prim } kind = Num;
  Numeral n = 0;
  bool b = false;
  std::vector<Atom> atoms;
  RPtr first, second;
  Term body;
  std::vector<RPtr> env;
  enum PrimKind { Chi, Phi, Add, Cup } prim = Chi;
  std::optional<Predicate> pred;
  std::vector<RPtr> args;
};

class RefEval {
 public:
  explicit RefEval(std::uint64_t budget = 2'000'000) : budget_(budget) {}

  RPtr eval(const Term& t, const std::vector<RPtr>& env) {
    tick();
    switch (t.kind()) {
      case TermKind::Bound: return env.at(env.size() - 1 - t.index());
      case TermKind::Num: return num(t.value());
      case TermKind::Succ: return num(eval(t.operand(), env)->n + 1);
      case TermKind::True: return boolean(true);
      case TermKind::False: return boolean(false);
      case TermKind::Pair: {
        auto v = std::make_shared<RVal>();
        v->kind = RVal::Pair;
        v->first = eval(t.child(0), env);
        v->second = eval(t.child(1), env);
        return v;
      }
      case TermKind::Proj: {
        RPtr p = eval(t.operand(), env);
        return t.proj_index() == 0 ? p->first : p->second;
      }
      case TermKind::If: return eval(t.child(0), env)->b ? eval(t.child(1), env) : eval(t.child(2), env);
      case TermKind::Rec: {
        RPtr r = eval(t.child(0), env);
        RPtr step = eval(t.child(1), env);
        Numeral k = eval(t.child(2), env)->n;
        for (Numeral i = 0; i < k; ++i) r = apply(apply(step, num(i)), r);
        return r;
      }
      case TermKind::Lam: {
        auto v = std::make_shared<RVal>();
        v->kind = RVal::Closure;
        v->body = t.body();
        v->env = env;
        return v;
      }
      case TermKind::App: return apply(eval(t.fn(), env), eval(t.arg(), env));
      case TermKind::StateConst: {
        auto v = std::make_shared<RVal>();
        v->kind = RVal::State;
        v->atoms = t.state().atoms();
        return v;
      }
      case TermKind::Learn: {
        auto v = std::make_shared<RVal>();
        v->kind = RVal::Prim;
        v->prim = t.learn_kind() == LearnKind::Chi ? RVal::Chi
                  : t.learn_kind() == LearnKind::Phi ? RVal::Phi
                                                     : RVal::Add;
        v->pred = t.pred();
        return v;
      }
      case TermKind::Cup: {
        auto v = std::make_shared<RVal>();
        v->kind = RVal::Prim;
        v->prim = RVal::Cup;
        return v;
      }
      case TermKind::Free:
      case TermKind::Oracle: throw std::runtime_error("reference evaluator: unsupported term");
    }
    throw std::runtime_error("reference evaluator: bad term");
  }

  Value eval_value(const Term& t) { return to_value(eval(t, {})); }

  static Value to_value(const RPtr& v) {
    switch (v->kind) {
      case RVal::Num: return Value::num(v->n);
      case RVal::Bool: return Value::boolean(v->b);
      case RVal::State: return Value::state(KnowledgeState::from_atoms(v->atoms));
      case RVal::Pair: return Value::pair(to_value(v->first), to_value(v->second));
      default: throw std::runtime_error("reference evaluator: not a value");
    }
  }

 private:
  void tick() {
    if (budget_-- == 0) throw std::runtime_error("reference evaluator: budget exhausted");
  }

  static RPtr num(Numeral n) {
    auto v = std::make_shared<RVal>();
    v->kind = RVal::Num;
    v->n = n;
    return v;
  }
  static RPtr boolean(bool b) {
    auto v = std::make_shared<RVal>();
    v->kind = RVal::Bool;
    v->b = b;
    return v;
  }
  static RPtr state(std::vector<Atom> atoms) {
    auto v = std::make_shared<RVal>();
    v->kind = RVal::State;
    v->atoms = std::move(atoms);
    return v;
  }

  static bool same_key(const Atom& a, const Predicate& p, const std::vector<Numeral>& args) {
    return a.pred == p && a.args == args;
  }

  RPtr apply(const RPtr& f, const RPtr& x) {
    tick();
    if (f->kind == RVal::Closure) {
      std::vector<RPtr> env = f->env;
      env.push_back(x);
      return eval(f->body, env);
    }
    auto v = std::make_shared<RVal>(*f);
    v->args.push_back(x);
    std::size_t need = v->prim == RVal::Cup ? 2 : v->prim == RVal::Add ? 1 + v->pred->arity() : v->pred->arity();
    if (v->args.size() < need) return v;
    return fire(*v);
  }

  RPtr fire(const RVal& p) {
    if (p.prim == RVal::Cup) {
      std::vector<Atom> out = p.args[0]->atoms;
      for (const Atom& b : p.args[1]->atoms) {
        bool ok = true;
        for (const Atom& a : p.args[0]->atoms) {
          if (a.pred == b.pred && a.args == b.args && a.witness != b.witness) ok = false;
        }
        if (ok) out.push_back(b);
      }
      return state(std::move(out));
    }
    const std::vector<Atom>& s = p.args[0]->atoms;
    std::vector<Numeral> args;
    for (std::size_t i = 1; i < p.pred->arity(); ++i) args.push_back(p.args[i]->n);
    const Atom* hit = nullptr;
    for (const Atom& a : s) {
      if (same_key(a, *p.pred, args)) hit = &a;
    }
    if (p.prim == RVal::Chi) return boolean(hit != nullptr);
    if (p.prim == RVal::Phi) return num(hit ? hit->witness : 0);
    Numeral m = p.args.back()->n;
    if (hit) return state({});
    RPtr truth = eval(p.pred->body(), {});
    for (Numeral a : args) truth = apply(truth, num(a));
    truth = apply(truth, num(m));
    if (!truth->b) return state({});
    return state({Atom{*p.pred, args, m}});
  }

  std::uint64_t budget_;
};

// ---------------------------------------------------------------------------
// Generators.

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  // Realizer mode: state leaves are empty and the state machinery uses oracle constants.
  bool realizer_mode = false;

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
  bool coin() { return below(2) == 0; }
  std::mt19937_64& rng() { return rng_; }

  // A true atom over lt or leq with small numbers.
  Atom atom(Numeral max = 6) {
    if (coin()) {
      Numeral bound = 1 + below(max);
      return Atom{lt_pred(), {bound}, below(bound)};
    }
    Numeral bound = below(max);
    return Atom{leq_pred(), {bound}, below(bound + 1)};
  }

  // A random state: atoms drawn from the pool, conflicting ones skipped.
  KnowledgeState state(std::size_t max_atoms = 5, Numeral max = 6) {
    std::vector<Atom> atoms;
    std::size_t count = below(max_atoms + 1);
    for (std::size_t i = 0; i < count; ++i) {
      Atom a = atom(max);
      bool ok = true;
      for (const Atom& b : atoms) ok = ok && (b.pred != a.pred || b.args != a.args || b.witness == a.witness);
      if (ok) atoms.push_back(a);
    }
    return KnowledgeState::from_atoms(atoms);
  }

  // A random weakly increasing chain over `pool`; growth happens only in the first `growth` steps.
  std::vector<KnowledgeState> chain(const std::vector<Atom>& pool, std::size_t length, std::size_t growth) {
    std::vector<KnowledgeState> out;
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < length; ++i) {
      if (i > 0 && i < growth && !pool.empty() && below(3) != 0) {
        const Atom& a = pool[below(pool.size())];
        bool ok = true;
        for (const Atom& b : atoms) ok = ok && (b.pred != a.pred || b.args != a.args);
        if (ok) atoms.push_back(a);
      }
      out.push_back(KnowledgeState::from_atoms(atoms));
    }
    return out;
  }

  // A closed, oracle-free term of type `ty` over T_Learn.
  Term term(const Ty& ty, int depth) { return term_in(ty, depth, {}); }

  // A closed term of atomic type.
  Term atomic_term(int depth) {
    switch (below(3)) {
      case 0: return term(Ty::nat(), depth);
      case 1: return term(Ty::boolean(), depth);
      default: return term(Ty::state(), depth);
    }
  }

  Ty small_type(int depth) {
    std::uint64_t r = below(depth > 0 ? 5 : 3);
    if (r == 0) return Ty::nat();
    if (r == 1) return Ty::boolean();
    if (r == 2) return Ty::state();
    if (r == 3) return Ty::prod(small_type(depth - 1), small_type(depth - 1));
    return Ty::arrow(small_type(depth - 1), small_type(depth - 1));
  }

 private:
  Predicate some_pred() { return coin() ? lt_pred() : leq_pred(); }

  Term var_of(const Ty& ty, const std::vector<Ty>& ctx) {
    std::vector<std::uint32_t> hits;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (ctx[ctx.size() - 1 - i] == ty) hits.push_back(static_cast<std::uint32_t>(i));
    }
    if (hits.empty()) return Term();
    return Term::bound(hits[below(hits.size())]);
  }

  Term leaf(const Ty& ty, const std::vector<Ty>& ctx) {
    if (below(3) == 0) {
      Term v = var_of(ty, ctx);
      if (v.valid()) return v;
    }
    switch (ty.kind()) {
      case Ty::Kind::Nat: return Term::num(below(4));
      case Ty::Kind::Bool: return Term::boolean(coin());
      case Ty::Kind::State: return Term::state(realizer_mode ? KnowledgeState{} : state(3, 5));
      case Ty::Kind::Prod: return Term::pair(leaf(ty.left(), ctx), leaf(ty.right(), ctx));
      case Ty::Kind::Arrow: {
        std::vector<Ty> inner = ctx;
        inner.push_back(ty.left());
        return Term::lam("x", ty.left(), leaf(ty.right(), inner));
      }
    }
    return Term::num(0);
  }

  Term term_in(const Ty& ty, int depth, const std::vector<Ty>& ctx) {
    if (depth <= 0) return leaf(ty, ctx);
    std::uint64_t r = below(10);
    if (r == 0) return leaf(ty, ctx);
    if (r == 1) {
      Ty a = small_type(1);
      std::vector<Ty> inner = ctx;
      inner.push_back(a);
      return Term::app(Term::lam("x", a, term_in(ty, depth - 1, inner)), term_in(a, depth - 1, ctx));
    }
    if (r == 2) {
      return Term::ite(term_in(Ty::boolean(), depth - 1, ctx), term_in(ty, depth - 1, ctx),
                       term_in(ty, depth - 1, ctx));
    }
    if (r == 3) {
      Ty other = small_type(0);
      return coin() ? Term::proj(0, Term::pair(term_in(ty, depth - 1, ctx), term_in(other, depth - 1, ctx)))
                    : Term::proj(1, Term::pair(term_in(other, depth - 1, ctx), term_in(ty, depth - 1, ctx)));
    }
    if (r == 4 && ty.is_atomic()) {
      std::vector<Ty> inner = ctx;
      inner.push_back(Ty::nat());
      inner.push_back(ty);
      Term step = Term::lam("n", Ty::nat(), Term::lam("r", ty, term_in(ty, depth - 2, inner)));
      return Term::rec(ty, term_in(ty, depth - 1, ctx), step, Term::num(below(4)));
    }
    switch (ty.kind()) {
      case Ty::Kind::Nat:
        if (coin()) return Term::succ(term_in(ty, depth - 1, ctx));
        if (realizer_mode) return Term::app(Term::oracle(OracleKind::Phi, some_pred()), term_in(Ty::nat(), depth - 2, ctx));
        return Term::app(Term::learn(LearnKind::Phi, some_pred()),
                         {term_in(Ty::state(), depth - 1, ctx), term_in(Ty::nat(), depth - 2, ctx)});
      case Ty::Kind::Bool:
        if (realizer_mode) return Term::app(Term::oracle(OracleKind::X, some_pred()), term_in(Ty::nat(), depth - 2, ctx));
        return Term::app(Term::learn(LearnKind::Chi, some_pred()),
                         {term_in(Ty::state(), depth - 1, ctx), term_in(Ty::nat(), depth - 2, ctx)});
      case Ty::Kind::State:
        if (coin()) return Term::cup(term_in(ty, depth - 1, ctx), term_in(ty, depth - 1, ctx));
        if (realizer_mode) {
          return Term::app(Term::oracle(OracleKind::Add, some_pred()),
                           {term_in(Ty::nat(), depth - 2, ctx), term_in(Ty::nat(), depth - 2, ctx)});
        }
        return Term::app(Term::learn(LearnKind::Add, some_pred()),
                         {term_in(Ty::state(), depth - 1, ctx), term_in(Ty::nat(), depth - 2, ctx),
                          term_in(Ty::nat(), depth - 2, ctx)});
      case Ty::Kind::Prod: return Term::pair(term_in(ty.left(), depth - 1, ctx), term_in(ty.right(), depth - 1, ctx));
      case Ty::Kind::Arrow: {
        std::vector<Ty> inner = ctx;
        inner.push_back(ty.left());
        return Term::lam(coin() ? "x" : "y", ty.left(), term_in(ty.right(), depth - 1, inner));
      }
    }
    return leaf(ty, ctx);
  }

  std::mt19937_64 rng_;
};

}  // namespace lbr::testing
