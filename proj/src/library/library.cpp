#include "lbr/library.hpp"

#include "lbr/env.hpp"
#include "lbr/error.hpp"
#include "lbr/syntax.hpp"
#include "lbr/typecheck.hpp"

namespace lbr {

namespace {

const Env& arith_env() {
  static const Env env = [] {
    Env e;
    auto def = [&e](const char* name, const char* src) { e.define_term(name, parse_term(src, e)); };
    def("pred", "(lam (x nat) (rec nat 0 (lam (n nat) (lam (r nat) n)) x))");
    def("sub", "(lam (x nat) (lam (y nat) (rec nat x (lam (n nat) (lam (r nat) (app pred r))) y)))");
    def("iszero", "(lam (x nat) (rec bool true (lam (n nat) (lam (r bool) false)) x))");
    def("not", "(lam (b bool) (if b false true))");
    def("plus", "(lam (x nat) (lam (y nat) (rec nat x (lam (n nat) (lam (r nat) (S r))) y)))");
    def("lt", "(lam (x nat) (lam (y nat) (app not (app iszero (app sub x y)))))");
    def("leq", "(lam (x nat) (lam (y nat) (app iszero (app sub y x))))");
    return e;
  }();
  return env;
}

const Term& arith_term(const char* name) { return *arith_env().find_term(name); }

// Environment holding the arithmetic plus f.
Env function_env(const Term& f) {
  Env e = arith_env();
  e.define_term("f", f);
  return e;
}

const char* const kHasminType = "(prod nat (prod (arrow nat state) (prod nat state)))";

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size())) {
    s.replace(at, from.size(), to);
  }
  return s;
}

}  // namespace

namespace arith {
Term pred() { return arith_term("pred"); }
Term sub() { return arith_term("sub"); }
Term iszero() { return arith_term("iszero"); }
Term bnot() { return arith_term("not"); }
Term plus() { return arith_term("plus"); }
Term lt() { return arith_term("lt"); }
Term leq() { return arith_term("leq"); }
}  // namespace arith

Predicate lt_predicate() {
  static const Predicate p = Predicate::make("lt", 2, arith::lt());
  return p;
}

Term table_term(const std::vector<Numeral>& values, Numeral tail) {
  // Built inside out: the innermost test looks at x - (size - 1).
  Term body = Term::num(tail);
  for (std::size_t i = values.size(); i-- > 0;) {
    Term probe = Term::bound(0);
    for (std::size_t k = 0; k < i; ++k) probe = Term::app(arith::pred(), probe);
    body = Term::ite(Term::app(arith::iszero(), probe), Term::num(values[i]), body);
  }
  return Term::lam("x", Ty::nat(), body);
}

void check_function(const Term& f) {
  if (!f.closed()) throw Error(ErrorCode::Type, "function term is not closed");
  if (f.has_oracle() || f.has_state_machinery()) throw Error(ErrorCode::Type, "function term is not a System T term");
  Ty ty = typecheck(f);
  Ty want = Ty::arrow(Ty::nat(), Ty::nat());
  if (!(ty == want)) throw Error(ErrorCode::Type, "function term has type " + to_string(ty) + ", expected " + to_string(want));
}

std::function<Numeral(Numeral)> as_function(const Term& f, EvalOptions opts) {
  return [f, opts](Numeral n) { return eval_numeral(Term::app(f, Term::num(n)), opts); };
}

Formula em1_formula(const Predicate& p) {
  Env e;
  e.define_predicate("P", p);
  return parse_formula("(forall x (or (exists y (atom P x y)) (forall y (atom (not P) x y))))", e);
}

Term em1_realizer(const Predicate& p) {
  if (p.arity() != 2) {
    throw Error(ErrorCode::Unsupported, "the excluded middle realizer needs a binary predicate, '" + p.name() +
                                            "' has arity " + std::to_string(p.arity()));
  }
  Env e;
  e.define_predicate("P", p);
  return parse_term(
      "(lam (a nat) (pair (app (X P) a) (pair (pair (app (Phi P) a) (state ())) (lam (m nat) (app (AddP P) a m)))))", e);
}

MinimumPrinciple minimum_principle(const Term& f, const std::string& name) {
  check_function(f);
  Env e = function_env(f);
  Predicate below = Predicate::make("below-" + name, 2, parse_term("(lam (y nat) (lam (x nat) (app lt y (app f x))))", e));
  Predicate atmost = Predicate::make("atmost-" + name, 2, parse_term("(lam (y nat) (lam (x nat) (app leq y (app f x))))", e));
  e.define_predicate("P", below);
  e.define_predicate("LE", atmost);

  Formula formula = parse_formula("(exists y (and (forall x (atom (not P) y x)) (exists x (atom LE y x))))", e);

  std::string h = kHasminType;
  std::string t = "(arrow (prod nat state) " + h + ")";
  std::string src =
      "(app (rec %T%"
      "   (lam (w (prod nat state)) (pair (app f (fst w)) (pair (lam (a nat) (snd w)) (pair (fst w) (state ())))))"
      "   (lam (n nat) (lam (w1 %T%) (lam (w2 (prod nat state))"
      "     (if (app (X P) (S n))"
      "         (app w1 (pair (app (Phi P) (S n)) (state ())))"
      "         (pair (S n) (pair (lam (b nat) (app (AddP P) (S n) b)) w2))))))"
      "   (app f 0))"
      " (pair 0 (state ())))";
  Term realizer = parse_term(replace_all(src, "%T%", t), e);
  return MinimumPrinciple{below, below.negated(), atmost, formula, realizer};
}

Term minimum_realizer(const Term& f) { return minimum_principle(f).realizer; }

CoquandExample coquand_example(const Term& f, const std::string& name) {
  MinimumPrinciple min = minimum_principle(f, name);
  Env e = function_env(f);
  Predicate q = Predicate::make("coq-" + name, 2,
                                parse_term("(lam (a nat) (lam (x nat) (app leq (app f (app plus x a)) (app f x))))", e));
  e.define_predicate("Q", q);
  e.define_term("M", min.realizer);
  Formula formula = parse_formula("(forall a (exists x (atom Q a x)))", e);
  Term realizer = parse_term(
      "(lam (a nat) (pair (fst (snd (snd M)))"
      "                   (app cup (app (fst (snd M)) (app plus (fst (snd (snd M))) a)) (snd (snd (snd M))))))",
      e);
  return CoquandExample{std::move(min), q, formula, realizer};
}

Term coquand_realizer(const Term& f) { return coquand_example(f).realizer; }

Numeral minimum_oracle(const std::function<Numeral(Numeral)>& f, Numeral search_bound) {
  if (search_bound == 0) throw Error(ErrorCode::Usage, "search bound must be positive");
  Numeral best = f(0);
  for (Numeral n = 1; n < search_bound; ++n) best = std::min(best, f(n));
  return best;
}

Numeral coquand_oracle(const std::function<Numeral(Numeral)>& f, Numeral a) {
  Numeral n = 0;
  while (f(n) > f(n + a)) n += a;
  return n;
}

}  // namespace lbr
