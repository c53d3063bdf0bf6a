#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lbr/eval.hpp"
#include "lbr/formula.hpp"
#include "lbr/predicate.hpp"
#include "lbr/term.hpp"

namespace lbr {

// Closed System T arithmetic.
namespace arith {
Term pred();    // x - 1 (truncated)
Term sub();     // sub x y = x - y (truncated)
Term iszero();
Term bnot();
Term plus();
Term lt();      // lt x y = (y < x)
Term leq();     // leq x y = (y <= x)
}  // namespace arith

// lt as a binary predicate: lt(n, y) holds iff y < n.
Predicate lt_predicate();

// lam x. values[x] for x < values.size(), tail otherwise; built with if, iszero and pred.
Term table_term(const std::vector<Numeral>& values, Numeral tail);

// Checks that f is a closed System T term of type nat -> nat. Throws Error(Type).
void check_function(const Term& f);

// Evaluates f on a numeral.
std::function<Numeral(Numeral)> as_function(const Term& f, EvalOptions opts = {});

// forall x. (exists y. P(x, y)) or (forall y. not P(x, y)) for a binary P.
Formula em1_formula(const Predicate& p);
// lam a. <X_P a, <<Phi_P a, {}>, lam m. Add_P a m>>. Throws Error(Unsupported) unless P is binary.
Term em1_realizer(const Predicate& p);

struct MinimumPrinciple {
  Predicate below;     // below(y, x): f(x) < y
  Predicate notbelow;  // its negation: f(x) >= y
  Predicate atmost;    // atmost(y, x): f(x) <= y
  Formula formula;     // exists y. (forall x. notbelow(y, x)) and (exists x. atmost(y, x))
  Term realizer;
};

// Predicates are named below-NAME, (not below-NAME) and atmost-NAME.
MinimumPrinciple minimum_principle(const Term& f, const std::string& name = "f");
Term minimum_realizer(const Term& f);

struct CoquandExample {
  MinimumPrinciple minimum;
  Predicate q;      // q(a, x): f(x) <= f(x + a), named coq-NAME
  Formula formula;  // forall a. exists x. q(a, x)
  Term realizer;
};

CoquandExample coquand_example(const Term& f, const std::string& name = "f");
Term coquand_realizer(const Term& f);

// The least value of f on 0..search_bound-1.
Numeral minimum_oracle(const std::function<Numeral(Numeral)>& f, Numeral search_bound);

// n := 0; while f(n) > f(n + a) do n := n + a; return n.
Numeral coquand_oracle(const std::function<Numeral(Numeral)>& f, Numeral a);

}  // namespace lbr
