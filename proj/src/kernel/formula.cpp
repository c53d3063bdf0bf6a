#include "lbr/formula.hpp"

#include <algorithm>

#include "lbr/error.hpp"
#include "lbr/eval.hpp"
#include "lbr/syntax.hpp"
#include "lbr/typecheck.hpp"

namespace lbr {

struct Formula::Node {
  FormulaKind kind;
  std::optional<Predicate> pred;
  std::vector<Term> args;
  std::optional<Formula> left;
  std::optional<Formula> right;
  std::string var;
};

Formula Formula::atom(Predicate pred, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->pred = std::move(pred);
  n->args = std::move(args);
  return Formula(n);
}

Formula Formula::conj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::And;
  n->left = std::move(a);
  n->right = std::move(b);
  return Formula(n);
}

Formula Formula::disj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Or;
  n->left = std::move(a);
  n->right = std::move(b);
  return Formula(n);
}

Formula Formula::imp(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Imp;
  n->left = std::move(a);
  n->right = std::move(b);
  return Formula(n);
}

Formula Formula::forall(std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Forall;
  n->var = std::move(var);
  n->left = std::move(body);
  return Formula(n);
}

Formula Formula::exists(std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Exists;
  n->var = std::move(var);
  n->left = std::move(body);
  return Formula(n);
}

FormulaKind Formula::kind() const { return node_->kind; }
const Predicate& Formula::pred() const { return *node_->pred; }
const std::vector<Term>& Formula::args() const { return node_->args; }
const Formula& Formula::left() const { return *node_->left; }
const Formula& Formula::right() const { return *node_->right; }
const std::string& Formula::var() const { return node_->var; }
const Formula& Formula::body() const { return *node_->left; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FormulaKind::Atom: return a.pred() == b.pred() && a.args() == b.args();
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp: return a.left() == b.left() && a.right() == b.right();
    case FormulaKind::Forall:
    case FormulaKind::Exists: return a.var() == b.var() && a.body() == b.body();
  }
  return false;
}

namespace {

void term_free_names(const Term& t, std::set<std::string>& out) {
  if (!t.has_free()) return;
  if (t.kind() == TermKind::Free) {
    out.insert(t.name());
    return;
  }
  for (std::size_t i = 0; i < 4 && t.child(i).valid(); ++i) term_free_names(t.child(i), out);
}

}  // namespace

Formula subst(const Formula& f, const std::string& var, Numeral n) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      std::vector<Term> args;
      args.reserve(f.args().size());
      for (const Term& a : f.args()) {
        Term r = subst_free(a, var, Term::num(n));
        if (r.closed() && !r.is_numeral()) r = normalize(r);
        args.push_back(std::move(r));
      }
      return Formula::atom(f.pred(), std::move(args));
    }
    case FormulaKind::And: return Formula::conj(subst(f.left(), var, n), subst(f.right(), var, n));
    case FormulaKind::Or: return Formula::disj(subst(f.left(), var, n), subst(f.right(), var, n));
    case FormulaKind::Imp: return Formula::imp(subst(f.left(), var, n), subst(f.right(), var, n));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      if (f.var() == var) return f;
      Formula body = subst(f.body(), var, n);
      return f.kind() == FormulaKind::Forall ? Formula::forall(f.var(), body) : Formula::exists(f.var(), body);
    }
  }
  return f;
}

Formula instantiate(const Formula& quantified, Numeral n) {
  if (!quantified.is_quantifier()) throw Error(ErrorCode::IllegalChoice, "not a quantifier");
  return subst(quantified.body(), quantified.var(), n);
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  switch (f.kind()) {
    case FormulaKind::Atom:
      for (const Term& a : f.args()) term_free_names(a, out);
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp: {
      out = free_vars(f.left());
      auto r = free_vars(f.right());
      out.insert(r.begin(), r.end());
      break;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out = free_vars(f.body());
      out.erase(f.var());
      break;
  }
  return out;
}

bool is_closed(const Formula& f) { return free_vars(f).empty(); }

bool is_impl_free(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom: return true;
    case FormulaKind::Imp: return false;
    case FormulaKind::And:
    case FormulaKind::Or: return is_impl_free(f.left()) && is_impl_free(f.right());
    case FormulaKind::Forall:
    case FormulaKind::Exists: return is_impl_free(f.body());
  }
  return true;
}

std::size_t logical_depth(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom: return 0;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp: return 1 + std::max(logical_depth(f.left()), logical_depth(f.right()));
    case FormulaKind::Forall:
    case FormulaKind::Exists: return 1 + logical_depth(f.body());
  }
  return 0;
}

Ty realizer_type(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom: return Ty::state();
    case FormulaKind::And: return Ty::prod(realizer_type(f.left()), realizer_type(f.right()));
    case FormulaKind::Or:
      return Ty::prod(Ty::boolean(), Ty::prod(realizer_type(f.left()), realizer_type(f.right())));
    case FormulaKind::Imp: return Ty::arrow(realizer_type(f.left()), realizer_type(f.right()));
    case FormulaKind::Forall: return Ty::arrow(Ty::nat(), realizer_type(f.body()));
    case FormulaKind::Exists: return Ty::prod(Ty::nat(), realizer_type(f.body()));
  }
  return Ty::state();
}

namespace {

void check_in(const Formula& f, TypeContext& ctx) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      if (f.args().size() != f.pred().arity()) {
        throw Error(ErrorCode::Type, "predicate '" + f.pred().name() + "' expects " +
                                         std::to_string(f.pred().arity()) + " argument(s)");
      }
      for (const Term& a : f.args()) {
        if (a.has_oracle() || a.has_state_machinery()) {
          throw Error(ErrorCode::Type, "atom argument " + print_term(a) + " is not a System T term");
        }
        Ty ty = typecheck(a, ctx);
        if (!(ty == Ty::nat())) {
          throw Error(ErrorCode::Type, "atom argument " + print_term(a) + " has type " + to_string(ty) +
                                           ", expected nat");
        }
      }
      return;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
      check_in(f.left(), ctx);
      check_in(f.right(), ctx);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      auto saved = ctx.find(f.var()) != ctx.end() ? std::optional<Ty>(ctx[f.var()]) : std::nullopt;
      ctx[f.var()] = Ty::nat();
      check_in(f.body(), ctx);
      if (saved) {
        ctx[f.var()] = *saved;
      } else {
        ctx.erase(f.var());
      }
      return;
    }
  }
}

}  // namespace

void check_formula(const Formula& f) {
  TypeContext ctx;
  check_in(f, ctx);
}

}  // namespace lbr
