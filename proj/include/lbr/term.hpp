#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "lbr/predicate.hpp"
#include "lbr/state.hpp"
#include "lbr/type.hpp"

namespace lbr {

enum class TermKind {
  Bound,       // de Bruijn index
  Free,        // named free variable (numeric variables of formulas)
  Num,         // numeral S^k(0)
  Succ,        // S applied to a non-numeral
  True,
  False,
  Pair,
  Proj,
  If,
  Rec,         // rec T base step arg
  Lam,
  App,
  StateConst,
  Oracle,      // X_P, Phi_P, Add_P
  Learn,       // chi_P, phi_P, add_P
  Cup,
};

enum class OracleKind { X, Phi, Add };
enum class LearnKind { Chi, Phi, Add };

// Immutable term handle. Bound variables use de Bruijn indices; lambda nodes
// keep a name hint used only for printing. Numerals are stored as machine
// integers and observably behave as S^k(0): Succ never wraps a Num.
class Term {
 public:
  // An empty placeholder handle; only assignment and valid() are meaningful.
  Term() = default;
  bool valid() const { return node_ != nullptr; }

  static Term bound(std::uint32_t index);
  static Term free(std::string name);
  static Term num(Numeral value);
  static Term succ(Term t);
  static Term tt();
  static Term ff();
  static Term boolean(bool b) { return b ? tt() : ff(); }
  static Term pair(Term a, Term b);
  static Term proj(int index, Term t);
  static Term ite(Term cond, Term then_branch, Term else_branch);
  static Term rec(Ty result, Term base, Term step, Term arg);
  static Term lam(std::string hint, Ty domain, Term body);  // body already in de Bruijn form
  static Term app(Term fn, Term arg);
  static Term app(Term fn, std::initializer_list<Term> args);
  static Term app(Term fn, const std::vector<Term>& args);
  static Term state(KnowledgeState s);
  static Term oracle(OracleKind kind, Predicate pred);
  static Term learn(LearnKind kind, Predicate pred);
  static Term cup();
  static Term cup(Term a, Term b) { return app(cup(), {std::move(a), std::move(b)}); }

  // lam binding the free variable `name` in `body`.
  static Term lam_named(const std::string& name, Ty domain, const Term& body);

  TermKind kind() const;

  std::uint32_t index() const;        // Bound
  const std::string& name() const;    // Free name, Lam hint
  Numeral value() const;              // Num
  int proj_index() const;             // Proj
  const Ty& ty() const;               // Lam domain, Rec result type
  const Term& child(std::size_t i) const;
  const Predicate& pred() const;      // Oracle, Learn
  OracleKind oracle_kind() const;
  LearnKind learn_kind() const;
  const KnowledgeState& state() const;

  // Accessors by role.
  const Term& fn() const { return child(0); }      // App
  const Term& arg() const { return child(1); }     // App
  const Term& body() const { return child(0); }    // Lam
  const Term& operand() const { return child(0); } // Succ, Proj

  bool is_numeral() const { return kind() == TermKind::Num; }
  bool is_bool() const { return kind() == TermKind::True || kind() == TermKind::False; }

  // One more than the largest loose de Bruijn index; 0 when there are none.
  std::uint32_t loose() const;
  bool has_free() const;
  bool has_oracle() const;
  // Contains a state constant, learning constant or cup (not pure System T).
  bool has_state_machinery() const;
  bool has_nonempty_state() const;
  bool closed() const { return loose() == 0 && !has_free(); }

  std::size_t size() const;
  const void* identity() const { return node_.get(); }

  // Structural equality up to binder names.
  friend bool operator==(const Term& a, const Term& b);

  struct Node;

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Shifts loose bound indices >= cutoff by delta.
Term shift(const Term& t, std::int64_t delta, std::uint32_t cutoff = 0);

// Substitutes `value` for bound index 0 of a lambda body and lowers the rest.
Term open_body(const Term& body, const Term& value);

// Replaces the free variable `name` by bound index `depth`, shifting others.
Term abstract_free(const Term& t, const std::string& name, std::uint32_t depth = 0);

// Replaces free variable `name` by `value` (value must not have loose indices).
Term subst_free(const Term& t, const std::string& name, const Term& value);

// Applies t to numerals args[0], args[1], ...
Term apply_numerals(const Term& t, const std::vector<Numeral>& args);

// True iff every state constant in t denotes the empty state.
bool has_empty_state(const Term& t);

// Ternary projections for T = A x (B x C).
Term p0(const Term& t);
Term p1(const Term& t);
Term p2(const Term& t);

}  // namespace lbr
