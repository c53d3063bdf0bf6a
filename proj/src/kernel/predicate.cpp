#include "lbr/predicate.hpp"

#include "lbr/error.hpp"
#include "lbr/eval.hpp"
#include "lbr/syntax.hpp"
#include "lbr/term.hpp"
#include "lbr/typecheck.hpp"

namespace lbr {

struct Predicate::Data {
  std::string name;
  unsigned arity;
  Term body;
  std::string key;
};

Predicate Predicate::make(std::string name, unsigned arity, const Term& body) {
  if (arity == 0) throw Error(ErrorCode::Type, "predicate '" + name + "' must have arity >= 1");
  if (!body.closed()) throw Error(ErrorCode::Type, "predicate '" + name + "' is not closed");
  if (body.has_oracle() || body.has_state_machinery()) {
    throw Error(ErrorCode::Type, "predicate '" + name + "' is not a System T term");
  }
  Ty expected = Ty::nat_arrows(arity, Ty::boolean());
  Ty actual = typecheck(body);
  if (!(actual == expected)) {
    throw Error(ErrorCode::Type, "predicate '" + name + "' has type " + to_string(actual) +
                                     ", expected " + to_string(expected));
  }
  Term normal = normalize(body);
  std::string key = canonical_print(normal);
  return Predicate(std::make_shared<const Data>(Data{std::move(name), arity, std::move(normal), std::move(key)}));
}

const std::string& Predicate::name() const { return data_->name; }
unsigned Predicate::arity() const { return data_->arity; }
const Term& Predicate::body() const { return data_->body; }
const std::string& Predicate::key() const { return data_->key; }

Predicate Predicate::negated() const {
  unsigned k = arity();
  Term applied = body();
  for (unsigned i = 0; i < k; ++i) applied = Term::app(applied, Term::bound(k - 1 - i));
  Term t = Term::ite(applied, Term::ff(), Term::tt());
  for (unsigned i = 0; i < k; ++i) t = Term::lam("x" + std::to_string(k - 1 - i), Ty::nat(), t);
  return make("(not " + name() + ")", k, t);
}

bool operator==(const Predicate& a, const Predicate& b) {
  return a.data_ == b.data_ || a.key() == b.key();
}

std::strong_ordering operator<=>(const Predicate& a, const Predicate& b) {
  if (a.data_ == b.data_) return std::strong_ordering::equal;
  return a.key() <=> b.key();
}

}  // namespace lbr
