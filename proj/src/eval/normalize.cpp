#include <algorithm>
#include <optional>
#include <vector>

#include "lbr/error.hpp"
#include "lbr/eval.hpp"

namespace lbr {

namespace {

bool is_constant(const Term& h) { return h.kind() == TermKind::Learn || h.kind() == TermKind::Cup; }

std::size_t needed_args(const Term& h) {
  if (h.kind() == TermKind::Cup) return 2;
  unsigned arity = h.pred().arity();
  return h.learn_kind() == LearnKind::Add ? arity + 1 : arity;
}

// Applies a state rule when every argument is a literal; nullopt if the redex must wait.
std::optional<Term> fire(const Term& h, std::span<const Term> args) {
  if (args[0].kind() != TermKind::StateConst) return std::nullopt;
  if (h.kind() == TermKind::Cup) {
    if (args[1].kind() != TermKind::StateConst) return std::nullopt;
    return Term::state(consistent_union(args[0].state(), args[1].state()));
  }
  std::vector<Numeral> nums;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (!args[i].is_numeral()) return std::nullopt;
    nums.push_back(args[i].value());
  }
  const KnowledgeState& s = args[0].state();
  const Predicate& p = h.pred();
  switch (h.learn_kind()) {
    case LearnKind::Chi: return Term::boolean(s.lookup(p, nums).has_value());
    case LearnKind::Phi: return Term::num(s.lookup(p, nums).value_or(0));
    case LearnKind::Add: {
      Numeral m = nums.back();
      nums.pop_back();
      return Term::state(add_semantics(s, p, nums, m));
    }
  }
  return std::nullopt;
}

Term spine(const Term& t, std::vector<Term>& args) {
  Term h = t;
  while (h.kind() == TermKind::App) {
    args.push_back(h.arg());
    h = h.fn();
  }
  std::reverse(args.begin(), args.end());
  return h;
}

Term apply_from(Term h, const std::vector<Term>& args, std::size_t from) {
  for (std::size_t i = from; i < args.size(); ++i) h = Term::app(h, args[i]);
  return h;
}

class Machine {
 public:
  explicit Machine(const EvalOptions& opts) : opts_(opts) {}

  std::uint64_t steps() const { return steps_; }

  Term run(const Term& t) {
    if (t.has_oracle()) {
      throw Error(ErrorCode::OracleNotApproximated, "cannot normalize a term containing X, Phi or AddP; approximate it first");
    }
    return opts_.strategy == Strategy::NormalOrder ? norm(t) : inner(t);
  }

 private:
  void tick() {
    if (++steps_ > opts_.fuel) {
      throw Error(ErrorCode::Fuel, "normalization exceeded " + std::to_string(opts_.fuel) + " steps");
    }
  }

  // Normal order ------------------------------------------------------------

  Term whnf(Term t) {
    for (;;) {
      switch (t.kind()) {
        case TermKind::App: {
          std::vector<Term> args;
          Term h = whnf(spine(t, args));
          if (h.kind() == TermKind::Lam) {
            tick();
            t = apply_from(open_body(h.body(), args[0]), args, 1);
            continue;
          }
          if (is_constant(h) && args.size() >= needed_args(h)) {
            std::size_t n = needed_args(h);
            for (std::size_t i = 0; i < n; ++i) args[i] = norm(args[i]);
            if (auto r = fire(h, std::span<const Term>(args.data(), n))) {
              tick();
              t = apply_from(*r, args, n);
              continue;
            }
          }
          return apply_from(h, args, 0);
        }
        case TermKind::Proj: {
          Term p = whnf(t.operand());
          if (p.kind() == TermKind::Pair) {
            tick();
            t = p.child(static_cast<std::size_t>(t.proj_index()));
            continue;
          }
          return Term::proj(t.proj_index(), p);
        }
        case TermKind::If: {
          Term c = whnf(t.child(0));
          if (c.is_bool()) {
            tick();
            t = c.kind() == TermKind::True ? t.child(1) : t.child(2);
            continue;
          }
          return Term::ite(c, t.child(1), t.child(2));
        }
        case TermKind::Rec: {
          Term n = whnf(t.child(2));
          if (n.is_numeral()) {
            tick();
            if (n.value() == 0) {
              t = t.child(0);
            } else {
              Term prev = Term::num(n.value() - 1);
              t = Term::app(t.child(1), {prev, Term::rec(t.ty(), t.child(0), t.child(1), prev)});
            }
            continue;
          }
          if (n.kind() == TermKind::Succ) {
            tick();
            Term m = n.operand();
            t = Term::app(t.child(1), {m, Term::rec(t.ty(), t.child(0), t.child(1), m)});
            continue;
          }
          return Term::rec(t.ty(), t.child(0), t.child(1), n);
        }
        default: return t;
      }
    }
  }

  Term norm(const Term& t) {
    Term w = whnf(t);
    switch (w.kind()) {
      case TermKind::Lam: return Term::lam(w.name(), w.ty(), norm(w.body()));
      case TermKind::Pair: return Term::pair(norm(w.child(0)), norm(w.child(1)));
      case TermKind::Succ: return Term::succ(norm(w.operand()));
      case TermKind::App: {
        std::vector<Term> args;
        Term h = norm(spine(w, args));
        for (Term& a : args) a = norm(a);
        return apply_from(h, args, 0);
      }
      case TermKind::Proj: return Term::proj(w.proj_index(), norm(w.operand()));
      case TermKind::If: return Term::ite(norm(w.child(0)), norm(w.child(1)), norm(w.child(2)));
      case TermKind::Rec: return Term::rec(w.ty(), norm(w.child(0)), norm(w.child(1)), norm(w.child(2)));
      default: return w;
    }
  }

  // Innermost ---------------------------------------------------------------

  Term inner(const Term& t) {
    switch (t.kind()) {
      case TermKind::Succ: return Term::succ(inner(t.operand()));
      case TermKind::Lam: return Term::lam(t.name(), t.ty(), inner(t.body()));
      case TermKind::Pair: return Term::pair(inner(t.child(0)), inner(t.child(1)));
      case TermKind::App: return inner_app(inner(t.fn()), inner(t.arg()));
      case TermKind::Proj: {
        Term p = inner(t.operand());
        if (p.kind() == TermKind::Pair) {
          tick();
          return p.child(static_cast<std::size_t>(t.proj_index()));
        }
        return Term::proj(t.proj_index(), p);
      }
      case TermKind::If: {
        Term c = inner(t.child(0));
        Term a = inner(t.child(1));
        Term b = inner(t.child(2));
        if (c.is_bool()) {
          tick();
          return c.kind() == TermKind::True ? a : b;
        }
        return Term::ite(c, a, b);
      }
      case TermKind::Rec:
        return inner_rec(t.ty(), inner(t.child(0)), inner(t.child(1)), inner(t.child(2)));
      default: return t;
    }
  }

  // f and a are normal.
  Term inner_app(const Term& f, const Term& a) {
    if (f.kind() == TermKind::Lam) {
      tick();
      return inner(open_body(f.body(), a));
    }
    Term t = Term::app(f, a);
    std::vector<Term> args;
    Term h = spine(t, args);
    if (is_constant(h) && args.size() == needed_args(h)) {
      if (auto r = fire(h, args)) {
        tick();
        return *r;
      }
    }
    return t;
  }

  Term inner_rec(const Ty& ty, const Term& base, const Term& step, const Term& n) {
    if (n.is_numeral()) {
      Term acc = base;
      for (Numeral i = 0; i < n.value(); ++i) {
        tick();
        acc = inner_app(inner_app(step, Term::num(i)), acc);
      }
      if (n.value() == 0) tick();
      return acc;
    }
    if (n.kind() == TermKind::Succ) {
      tick();
      const Term& m = n.operand();
      return inner_app(inner_app(step, m), inner_rec(ty, base, step, m));
    }
    return Term::rec(ty, base, step, n);
  }

  EvalOptions opts_;
  std::uint64_t steps_ = 0;
};

Term approx_rec(const Term& t, const Term& state) {
  if (!t.has_oracle()) return t;
  switch (t.kind()) {
    case TermKind::Oracle: {
      LearnKind k = t.oracle_kind() == OracleKind::X     ? LearnKind::Chi
                    : t.oracle_kind() == OracleKind::Phi ? LearnKind::Phi
                                                         : LearnKind::Add;
      return Term::app(Term::learn(k, t.pred()), state);
    }
    case TermKind::Succ: return Term::succ(approx_rec(t.operand(), state));
    case TermKind::Pair: return Term::pair(approx_rec(t.child(0), state), approx_rec(t.child(1), state));
    case TermKind::Proj: return Term::proj(t.proj_index(), approx_rec(t.operand(), state));
    case TermKind::If:
      return Term::ite(approx_rec(t.child(0), state), approx_rec(t.child(1), state), approx_rec(t.child(2), state));
    case TermKind::Rec:
      return Term::rec(t.ty(), approx_rec(t.child(0), state), approx_rec(t.child(1), state),
                       approx_rec(t.child(2), state));
    case TermKind::Lam: return Term::lam(t.name(), t.ty(), approx_rec(t.body(), state));
    case TermKind::App: return Term::app(approx_rec(t.fn(), state), approx_rec(t.arg(), state));
    default: return t;
  }
}

}  // namespace

Term normalize(const Term& t, const EvalOptions& opts, std::uint64_t* steps) {
  Machine m(opts);
  Term r = m.run(t);
  if (steps) *steps = m.steps();
  return r;
}

Term approximate(const Term& t, const KnowledgeState& s) { return approx_rec(t, Term::state(s)); }

}  // namespace lbr
