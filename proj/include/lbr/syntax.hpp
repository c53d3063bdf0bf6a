#pragma once

#include <set>
#include <string>
#include <string_view>

#include "lbr/env.hpp"
#include "lbr/formula.hpp"
#include "lbr/sexp.hpp"
#include "lbr/state.hpp"
#include "lbr/term.hpp"
#include "lbr/type.hpp"

namespace lbr {

// Term grammar:
//   0 | (S t) | true | false | (lam (x ty) t) | (app t u) | (pair t u)
//   | (fst t) | (snd t) | (if c a b) | (rec ty base step arg)
//   | (state ((pred (n ...) m) ...)) | (X pred) | (Phi pred) | (AddP pred)
//   | (chi pred) | (phi pred) | (add pred) | cup | name
// A name resolves to a lambda-bound variable, then to an allowed free
// variable, then to a term or predicate body defined in the environment.
// Decimal literals are accepted as numerals; printing always uses S^k(0).
// A predicate reference is a registered name or (not pred).
Term parse_term(std::string_view text, const Env& env, const std::set<std::string>& free_vars = {});
Term term_from_sexp(const Sexp& e, const Env& env, const std::set<std::string>& free_vars = {});

Ty parse_type(std::string_view text);
Ty type_from_sexp(const Sexp& e);

// Formula grammar: (atom pred t ...) | (and A B) | (or A B) | (imp A B)
//   | (forall x A) | (exists x A)
Formula parse_formula(std::string_view text, const Env& env);
Formula formula_from_sexp(const Sexp& e, const Env& env, const std::set<std::string>& free_vars = {});

// (state ((pred (n ...) m) ...)); every atom is validated.
KnowledgeState parse_state(std::string_view text, const Env& env);
KnowledgeState state_from_sexp(const Sexp& e, const Env& env);

Predicate predicate_from_sexp(const Sexp& e, const Env& env);

std::string print_numeral(Numeral n);
std::string print_term(const Term& t);
std::string print_formula(const Formula& f);
std::string print_state(const KnowledgeState& s);
std::string print_type(const Ty& ty);

// Prints with binder names v0, v1, ... by depth; equal strings iff alpha-equivalent.
std::string canonical_print(const Term& t);

}  // namespace lbr
