#pragma once

#include <compare>
#include <memory>
#include <string>

namespace lbr {

class Term;

// A closed normal System T term of type Nat^arity -> Bool.
//
// Predicates compare by a canonical key: the printed beta-normal form of the
// body with binder names erased. The display name is only used for printing.
class Predicate {
 public:
  // Type-checks, normalizes and keys `body`. Throws Error(Type) if the body is
  // not a closed pure System T term of type Nat^arity -> Bool.
  static Predicate make(std::string name, unsigned arity, const Term& body);

  const std::string& name() const;
  unsigned arity() const;
  const Term& body() const;
  const std::string& key() const;

  // Boolean negation: body' = lam x1..xk. if (body x1..xk) false true.
  // Displayed as "(not name)".
  Predicate negated() const;

  friend bool operator==(const Predicate& a, const Predicate& b);
  friend std::strong_ordering operator<=>(const Predicate& a, const Predicate& b);

 private:
  struct Data;
  explicit Predicate(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

}  // namespace lbr
