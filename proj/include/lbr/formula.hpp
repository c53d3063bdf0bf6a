#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lbr/predicate.hpp"
#include "lbr/term.hpp"
#include "lbr/type.hpp"

namespace lbr {

enum class FormulaKind { Atom, And, Or, Imp, Forall, Exists };

// Arithmetical formulas. Atoms are a predicate applied to numeric System T
// terms whose free variables are the enclosing quantified variables.
class Formula {
 public:
  static Formula atom(Predicate pred, std::vector<Term> args);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  FormulaKind kind() const;
  bool is_atom() const { return kind() == FormulaKind::Atom; }
  bool is_quantifier() const { return kind() == FormulaKind::Forall || kind() == FormulaKind::Exists; }

  const Predicate& pred() const;          // Atom
  const std::vector<Term>& args() const;  // Atom
  const Formula& left() const;            // And, Or, Imp
  const Formula& right() const;           // And, Or, Imp
  const std::string& var() const;         // Forall, Exists
  const Formula& body() const;            // Forall, Exists

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Replaces free occurrences of `var` by numeral n. Atom arguments that become
// closed are normalized to numerals.
Formula subst(const Formula& f, const std::string& var, Numeral n);

// body[n/var] for a quantifier node.
Formula instantiate(const Formula& quantified, Numeral n);

std::set<std::string> free_vars(const Formula& f);
bool is_closed(const Formula& f);
bool is_impl_free(const Formula& f);

// Number of connectives and quantifiers on the longest branch.
std::size_t logical_depth(const Formula& f);

// The realizer type |A|.
Ty realizer_type(const Formula& f);

// Checks atom arities, that atom arguments are pure System T terms of type Nat
// over the enclosing quantified variables. Throws Error(Type).
void check_formula(const Formula& f);

}  // namespace lbr
