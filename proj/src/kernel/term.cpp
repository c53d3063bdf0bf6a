#include "lbr/term.hpp"

#include <array>
#include <cassert>
#include <optional>

#include "lbr/error.hpp"

namespace lbr {

namespace {

enum Flag : std::uint8_t {
  kFree = 1,
  kOracle = 2,
  kMachinery = 4,
  kNonEmptyState = 8,
};

}  // namespace

struct Term::Node {
  TermKind kind;
  std::uint8_t flags = 0;
  std::uint32_t loose = 0;
  std::uint32_t index = 0;  // Bound index, Proj index, Oracle/Learn kind
  Numeral value = 0;
  std::size_t size = 1;
  std::string name;
  Ty ty;
  std::optional<Predicate> pred;
  KnowledgeState state;
  std::array<Term, 4> kids;
  std::uint8_t arity = 0;
};

namespace {

using NodePtr = std::shared_ptr<Term::Node>;

NodePtr blank(TermKind kind) {
  auto n = std::make_shared<Term::Node>();
  n->kind = kind;
  return n;
}

}  // namespace

// Combines child metadata. `binds` is true for lambda (the body sits under one binder).
static void absorb(Term::Node& n, const Term& child, bool binds) {
  std::uint32_t l = child.loose();
  if (binds) l = l > 0 ? l - 1 : 0;
  if (l > n.loose) n.loose = l;
  std::uint8_t f = 0;
  if (child.has_free()) f |= kFree;
  if (child.has_oracle()) f |= kOracle;
  if (child.has_state_machinery()) f |= kMachinery;
  if (child.has_nonempty_state()) f |= kNonEmptyState;
  n.flags |= f;
  n.size += child.size();
}

Term Term::bound(std::uint32_t index) {
  auto n = blank(TermKind::Bound);
  n->index = index;
  n->loose = index + 1;
  return Term(n);
}

Term Term::free(std::string name) {
  auto n = blank(TermKind::Free);
  n->name = std::move(name);
  n->flags = kFree;
  return Term(n);
}

Term Term::num(Numeral value) {
  static const std::vector<Term> small = [] {
    std::vector<Term> v;
    for (Numeral k = 0; k < 64; ++k) {
      auto n = std::make_shared<Node>();
      n->kind = TermKind::Num;
      n->value = k;
      v.push_back(Term(n));
    }
    return v;
  }();
  if (value < small.size()) return small[value];
  auto n = blank(TermKind::Num);
  n->value = value;
  return Term(n);
}

Term Term::succ(Term t) {
  if (t.is_numeral()) return num(t.value() + 1);
  auto n = blank(TermKind::Succ);
  absorb(*n, t, false);
  n->kids[0] = std::move(t);
  n->arity = 1;
  return Term(n);
}

Term Term::tt() {
  static const Term t(blank(TermKind::True));
  return t;
}

Term Term::ff() {
  static const Term t(blank(TermKind::False));
  return t;
}

Term Term::cup() {
  static const Term t = [] {
    auto n = blank(TermKind::Cup);
    n->flags = kMachinery;
    return Term(n);
  }();
  return t;
}

Term Term::pair(Term a, Term b) {
  auto n = blank(TermKind::Pair);
  absorb(*n, a, false);
  absorb(*n, b, false);
  n->kids[0] = std::move(a);
  n->kids[1] = std::move(b);
  n->arity = 2;
  return Term(n);
}

Term Term::proj(int index, Term t) {
  assert(index == 0 || index == 1);
  auto n = blank(TermKind::Proj);
  n->index = static_cast<std::uint32_t>(index);
  absorb(*n, t, false);
  n->kids[0] = std::move(t);
  n->arity = 1;
  return Term(n);
}

Term Term::ite(Term cond, Term then_branch, Term else_branch) {
  auto n = blank(TermKind::If);
  absorb(*n, cond, false);
  absorb(*n, then_branch, false);
  absorb(*n, else_branch, false);
  n->kids[0] = std::move(cond);
  n->kids[1] = std::move(then_branch);
  n->kids[2] = std::move(else_branch);
  n->arity = 3;
  return Term(n);
}

Term Term::rec(Ty result, Term base, Term step, Term arg) {
  auto n = blank(TermKind::Rec);
  n->ty = std::move(result);
  absorb(*n, base, false);
  absorb(*n, step, false);
  absorb(*n, arg, false);
  n->kids[0] = std::move(base);
  n->kids[1] = std::move(step);
  n->kids[2] = std::move(arg);
  n->arity = 3;
  return Term(n);
}

Term Term::lam(std::string hint, Ty domain, Term body) {
  auto n = blank(TermKind::Lam);
  n->name = std::move(hint);
  n->ty = std::move(domain);
  absorb(*n, body, true);
  n->kids[0] = std::move(body);
  n->arity = 1;
  return Term(n);
}

Term Term::app(Term fn, Term arg) {
  auto n = blank(TermKind::App);
  absorb(*n, fn, false);
  absorb(*n, arg, false);
  n->kids[0] = std::move(fn);
  n->kids[1] = std::move(arg);
  n->arity = 2;
  return Term(n);
}

Term Term::app(Term fn, std::initializer_list<Term> args) {
  for (const Term& a : args) fn = app(std::move(fn), a);
  return fn;
}

Term Term::app(Term fn, const std::vector<Term>& args) {
  for (const Term& a : args) fn = app(std::move(fn), a);
  return fn;
}

Term Term::state(KnowledgeState s) {
  auto n = blank(TermKind::StateConst);
  n->flags = kMachinery | (s.empty() ? 0 : kNonEmptyState);
  n->state = std::move(s);
  return Term(n);
}

Term Term::oracle(OracleKind kind, Predicate pred) {
  auto n = blank(TermKind::Oracle);
  n->index = static_cast<std::uint32_t>(kind);
  n->pred = std::move(pred);
  n->flags = kOracle;
  return Term(n);
}

Term Term::learn(LearnKind kind, Predicate pred) {
  auto n = blank(TermKind::Learn);
  n->index = static_cast<std::uint32_t>(kind);
  n->pred = std::move(pred);
  n->flags = kMachinery;
  return Term(n);
}

Term Term::lam_named(const std::string& name, Ty domain, const Term& body) {
  return lam(name, std::move(domain), abstract_free(body, name, 0));
}

TermKind Term::kind() const { return node_->kind; }
std::uint32_t Term::index() const { return node_->index; }
const std::string& Term::name() const { return node_->name; }
Numeral Term::value() const { return node_->value; }
int Term::proj_index() const { return static_cast<int>(node_->index); }
const Ty& Term::ty() const { return node_->ty; }
const Term& Term::child(std::size_t i) const { return node_->kids[i]; }
const Predicate& Term::pred() const { return *node_->pred; }
OracleKind Term::oracle_kind() const { return static_cast<OracleKind>(node_->index); }
LearnKind Term::learn_kind() const { return static_cast<LearnKind>(node_->index); }
const KnowledgeState& Term::state() const { return node_->state; }
std::uint32_t Term::loose() const { return node_->loose; }
bool Term::has_free() const { return node_->flags & kFree; }
bool Term::has_oracle() const { return node_->flags & kOracle; }
bool Term::has_state_machinery() const { return node_->flags & kMachinery; }
bool Term::has_nonempty_state() const { return node_->flags & kNonEmptyState; }
std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const Term::Node& x = *a.node_;
  const Term::Node& y = *b.node_;
  if (x.kind != y.kind || x.size != y.size || x.loose != y.loose || x.flags != y.flags) return false;
  switch (x.kind) {
    case TermKind::Bound: return x.index == y.index;
    case TermKind::Free: return x.name == y.name;
    case TermKind::Num: return x.value == y.value;
    case TermKind::True:
    case TermKind::False:
    case TermKind::Cup: return true;
    case TermKind::StateConst: return x.state == y.state;
    case TermKind::Oracle:
    case TermKind::Learn: return x.index == y.index && *x.pred == *y.pred;
    case TermKind::Proj:
      if (x.index != y.index) return false;
      break;
    case TermKind::Lam:
    case TermKind::Rec:
      if (!(x.ty == y.ty)) return false;
      break;
    default: break;
  }
  for (std::uint8_t i = 0; i < x.arity; ++i) {
    if (!(x.kids[i] == y.kids[i])) return false;
  }
  return true;
}

namespace {

// Rebuilds `t` with new children, keeping the node's own payload.
Term rebuild(const Term& t, const std::array<Term, 4>& kids) {
  switch (t.kind()) {
    case TermKind::Succ: return Term::succ(kids[0]);
    case TermKind::Pair: return Term::pair(kids[0], kids[1]);
    case TermKind::Proj: return Term::proj(t.proj_index(), kids[0]);
    case TermKind::If: return Term::ite(kids[0], kids[1], kids[2]);
    case TermKind::Rec: return Term::rec(t.ty(), kids[0], kids[1], kids[2]);
    case TermKind::Lam: return Term::lam(t.name(), t.ty(), kids[0]);
    case TermKind::App: return Term::app(kids[0], kids[1]);
    default: return t;
  }
}

std::size_t arity_of(const Term& t) {
  switch (t.kind()) {
    case TermKind::Succ:
    case TermKind::Proj:
    case TermKind::Lam: return 1;
    case TermKind::Pair:
    case TermKind::App: return 2;
    case TermKind::If:
    case TermKind::Rec: return 3;
    default: return 0;
  }
}

// Generic structural map with binder depth; `leaf` handles Bound/Free leaves and
// `skip` decides whether a subtree can be returned unchanged.
template <class Leaf, class Skip>
Term map_term(const Term& t, std::uint32_t depth, const Leaf& leaf, const Skip& skip) {
  if (skip(t, depth)) return t;
  if (t.kind() == TermKind::Bound || t.kind() == TermKind::Free) return leaf(t, depth);
  std::size_t n = arity_of(t);
  if (n == 0) return t;
  std::array<Term, 4> kids;
  bool changed = false;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t d = depth + (t.kind() == TermKind::Lam ? 1 : 0);
    kids[i] = map_term(t.child(i), d, leaf, skip);
    if (kids[i].identity() != t.child(i).identity()) changed = true;
  }
  return changed ? rebuild(t, kids) : t;
}

}  // namespace

Term shift(const Term& t, std::int64_t delta, std::uint32_t cutoff) {
  if (delta == 0) return t;
  return map_term(
      t, cutoff,
      [delta](const Term& leaf, std::uint32_t depth) {
        if (leaf.kind() == TermKind::Bound && leaf.index() >= depth) {
          return Term::bound(static_cast<std::uint32_t>(leaf.index() + delta));
        }
        return leaf;
      },
      [](const Term& sub, std::uint32_t depth) { return sub.loose() <= depth; });
}

Term open_body(const Term& body, const Term& value) {
  return map_term(
      body, 0,
      [&value](const Term& leaf, std::uint32_t depth) {
        if (leaf.kind() != TermKind::Bound) return leaf;
        if (leaf.index() == depth) return shift(value, depth, 0);
        if (leaf.index() > depth) return Term::bound(leaf.index() - 1);
        return leaf;
      },
      [](const Term& sub, std::uint32_t depth) { return sub.loose() <= depth; });
}

Term abstract_free(const Term& t, const std::string& name, std::uint32_t depth) {
  return map_term(
      t, depth,
      [&name](const Term& leaf, std::uint32_t d) {
        if (leaf.kind() == TermKind::Free && leaf.name() == name) return Term::bound(d);
        if (leaf.kind() == TermKind::Bound && leaf.index() >= d) return Term::bound(leaf.index() + 1);
        return leaf;
      },
      [](const Term& sub, std::uint32_t d) { return !sub.has_free() && sub.loose() <= d; });
}

Term subst_free(const Term& t, const std::string& name, const Term& value) {
  if (value.loose() != 0) throw Error(ErrorCode::Type, "subst_free: value has loose bound variables");
  return map_term(
      t, 0,
      [&](const Term& leaf, std::uint32_t) {
        if (leaf.kind() == TermKind::Free && leaf.name() == name) return value;
        return leaf;
      },
      [](const Term& sub, std::uint32_t) { return !sub.has_free(); });
}

Term apply_numerals(const Term& t, const std::vector<Numeral>& args) {
  Term r = t;
  for (Numeral n : args) r = Term::app(r, Term::num(n));
  return r;
}

bool has_empty_state(const Term& t) { return !t.has_nonempty_state(); }

Term p0(const Term& t) { return Term::proj(0, t); }
Term p1(const Term& t) { return Term::proj(0, Term::proj(1, t)); }
Term p2(const Term& t) { return Term::proj(1, Term::proj(1, t)); }

}  // namespace lbr
