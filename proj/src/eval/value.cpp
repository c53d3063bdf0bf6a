#include "lbr/error.hpp"
#include "lbr/eval.hpp"
#include "lbr/syntax.hpp"

namespace lbr {

Value Value::num(Numeral n) {
  Value v;
  v.kind_ = Kind::Num;
  v.num_ = n;
  return v;
}

Value Value::boolean(bool b) {
  Value v;
  v.kind_ = Kind::Bool;
  v.bool_ = b;
  return v;
}

Value Value::state(KnowledgeState s) {
  Value v;
  v.kind_ = Kind::State;
  v.state_ = std::move(s);
  return v;
}

Value Value::pair(Value a, Value b) {
  Value v;
  v.kind_ = Kind::Pair;
  v.pair_ = std::make_shared<const std::pair<Value, Value>>(std::move(a), std::move(b));
  return v;
}

Numeral Value::as_num() const {
  if (kind_ != Kind::Num) throw Error(ErrorCode::Type, "value " + to_string(*this) + " is not a numeral");
  return num_;
}

bool Value::as_bool() const {
  if (kind_ != Kind::Bool) throw Error(ErrorCode::Type, "value " + to_string(*this) + " is not a boolean");
  return bool_;
}

const KnowledgeState& Value::as_state() const {
  if (kind_ != Kind::State) throw Error(ErrorCode::Type, "value " + to_string(*this) + " is not a state");
  return state_;
}

const Value& Value::first() const {
  if (kind_ != Kind::Pair) throw Error(ErrorCode::Type, "value " + to_string(*this) + " is not a pair");
  return pair_->first;
}

const Value& Value::second() const {
  if (kind_ != Kind::Pair) throw Error(ErrorCode::Type, "value " + to_string(*this) + " is not a pair");
  return pair_->second;
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Value::Kind::Num: return a.num_ == b.num_;
    case Value::Kind::Bool: return a.bool_ == b.bool_;
    case Value::Kind::State: return a.state_ == b.state_;
    case Value::Kind::Pair: return a.pair_->first == b.pair_->first && a.pair_->second == b.pair_->second;
  }
  return false;
}

Term to_term(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Num: return Term::num(v.as_num());
    case Value::Kind::Bool: return Term::boolean(v.as_bool());
    case Value::Kind::State: return Term::state(v.as_state());
    case Value::Kind::Pair: return Term::pair(to_term(v.first()), to_term(v.second()));
  }
  return Term::num(0);
}

std::string to_string(const Value& v) { return print_term(to_term(v)); }

Value read_value(const Term& t) {
  switch (t.kind()) {
    case TermKind::Num: return Value::num(t.value());
    case TermKind::True: return Value::boolean(true);
    case TermKind::False: return Value::boolean(false);
    case TermKind::StateConst: return Value::state(t.state());
    case TermKind::Pair: return Value::pair(read_value(t.child(0)), read_value(t.child(1)));
    default: throw Error(ErrorCode::Type, "normal form " + print_term(t) + " is not a value");
  }
}

Value eval_closed(const Term& t, const EvalOptions& opts) { return read_value(normalize(t, opts)); }

Numeral eval_numeral(const Term& t, const EvalOptions& opts) { return eval_closed(t, opts).as_num(); }

bool eval_bool(const Term& t, const EvalOptions& opts) { return eval_closed(t, opts).as_bool(); }

KnowledgeState eval_state(const Term& t, const EvalOptions& opts) { return eval_closed(t, opts).as_state(); }

bool eval_atom(const Formula& atom, const std::map<std::string, Numeral>& env, const EvalOptions& opts) {
  if (!atom.is_atom()) throw Error(ErrorCode::Type, "eval_atom expects an atomic formula");
  std::vector<Numeral> args;
  for (Term a : atom.args()) {
    for (const auto& [name, n] : env) a = subst_free(a, name, Term::num(n));
    if (a.has_free()) throw Error(ErrorCode::Type, "atom argument " + print_term(a) + " is open");
    args.push_back(eval_numeral(a, opts));
  }
  return holds(atom.pred(), args, opts);
}

bool holds(const Predicate& pred, std::span<const Numeral> args, const EvalOptions& opts) {
  Term t = pred.body();
  for (Numeral n : args) t = Term::app(t, Term::num(n));
  Term r = normalize(t, opts);
  if (!r.is_bool()) throw Error(ErrorCode::Type, "predicate '" + pred.name() + "' did not normalize to a boolean");
  return r.kind() == TermKind::True;
}

}  // namespace lbr
