#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>

#include "lbr/formula.hpp"
#include "lbr/state.hpp"
#include "lbr/term.hpp"

namespace lbr {

enum class Strategy {
  NormalOrder,  // leftmost-outermost: head reduction first, then subterms
  Innermost,    // subterms first, then the root
};

struct EvalOptions {
  std::uint64_t fuel = 10'000'000;  // reduction steps
  Strategy strategy = Strategy::NormalOrder;
};

// Normal form under beta, pi, if, R and the state rules (chi, phi, cup, add).
// State rules fire only on literal state constants and numerals.
// Throws Error(Fuel) when the step budget runs out and
// Error(OracleNotApproximated) when t contains X_P, Phi_P or Add_P.
// If `steps` is given it receives the number of contractions performed.
Term normalize(const Term& t, const EvalOptions& opts = {}, std::uint64_t* steps = nullptr);

// t[s]: X_P -> chi_P s, Phi_P -> phi_P s, Add_P -> add_P s.
Term approximate(const Term& t, const KnowledgeState& s);

// Closed normal forms of atomic or product type.
class Value {
 public:
  enum class Kind { Num, Bool, State, Pair };

  static Value num(Numeral n);
  static Value boolean(bool b);
  static Value state(KnowledgeState s);
  static Value pair(Value a, Value b);

  Kind kind() const { return kind_; }
  Numeral as_num() const;
  bool as_bool() const;
  const KnowledgeState& as_state() const;
  const Value& first() const;
  const Value& second() const;

  friend bool operator==(const Value& a, const Value& b);

 private:
  Kind kind_ = Kind::Num;
  Numeral num_ = 0;
  bool bool_ = false;
  KnowledgeState state_;
  std::shared_ptr<const std::pair<Value, Value>> pair_;
};

std::string to_string(const Value& v);
Term to_term(const Value& v);

// Reads a normal term back as a Value; throws Error(Type) if it is not one.
Value read_value(const Term& normal);

// normalize then read_value.
Value eval_closed(const Term& t, const EvalOptions& opts = {});

Numeral eval_numeral(const Term& t, const EvalOptions& opts = {});
bool eval_bool(const Term& t, const EvalOptions& opts = {});
KnowledgeState eval_state(const Term& t, const EvalOptions& opts = {});

// Truth of an atomic formula after substituting env for its free variables.
bool eval_atom(const Formula& atom, const std::map<std::string, Numeral>& env = {},
               const EvalOptions& opts = {});

// P(args) = True.
bool holds(const Predicate& pred, std::span<const Numeral> args, const EvalOptions& opts = {});

}  // namespace lbr
