#include "lbr/realizability.hpp"

#include "lbr/error.hpp"
#include "lbr/syntax.hpp"
#include "lbr/typecheck.hpp"

namespace lbr {

std::string to_string(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::Holds: return v.bounded ? "Holds (bounded)" : "Holds";
    case Verdict::Kind::Fails: return "Fails at " + v.path + ": " + v.reason;
    case Verdict::Kind::Unknown: return "Unknown: " + v.reason;
  }
  return "?";
}

namespace {

class Checker {
 public:
  Checker(const KnowledgeState& s, const RealizeOptions& opts) : s_(s), opts_(opts) {}

  Verdict check(const Term& t, const Formula& a, const std::string& path) {
    switch (a.kind()) {
      case FormulaKind::Atom: {
        KnowledgeState v = eval_state(approximate(t, s_), opts_.eval);
        if (!v.empty()) return Verdict::holds();
        if (eval_atom(a, {}, opts_.eval)) return Verdict::holds();
        return Verdict::fails(join(path, "atom " + print_formula(a)), "realizer is empty at this state but the atom is false");
      }
      case FormulaKind::And: {
        Verdict l = check(Term::proj(0, t), a.left(), join(path, "and:left"));
        if (l.is_fails()) return l;
        Verdict r = check(Term::proj(1, t), a.right(), join(path, "and:right"));
        return combine(l, r);
      }
      case FormulaKind::Or: {
        bool left = eval_bool(approximate(p0(t), s_), opts_.eval);
        if (left) return check(p1(t), a.left(), join(path, "or:left"));
        return check(p2(t), a.right(), join(path, "or:right"));
      }
      case FormulaKind::Imp: {
        if (opts_.candidates.empty()) return Verdict::unknown("implication not checkable without candidates");
        Ty ante = realizer_type(a.left());
        Verdict acc = Verdict::holds();
        std::size_t tested = 0;
        for (const Term& u : opts_.candidates) {
          if (!u.closed() || !(typecheck(u) == ante)) continue;
          Verdict pre = check(u, a.left(), join(path, "imp:antecedent"));
          if (!pre.is_holds()) continue;
          ++tested;
          Verdict post = check(Term::app(t, u), a.right(), join(path, "imp:consequent"));
          if (post.is_fails()) return post;
          acc = combine(acc, post);
        }
        if (tested == 0) return Verdict::unknown("no candidate realizes the antecedent");
        return acc;
      }
      case FormulaKind::Forall: {
        Verdict acc = Verdict::holds();
        for (std::size_t n = 0; n < opts_.bound; ++n) {
          Verdict v = check(Term::app(t, Term::num(n)), instantiate(a, n),
                            join(path, "forall " + a.var() + "=" + std::to_string(n)));
          if (v.is_fails()) return v;
          acc = combine(acc, v);
        }
        if (opts_.strict && !acc.is_fails()) {
          return Verdict::unknown("quantifier bound " + std::to_string(opts_.bound) + " reached");
        }
        if (acc.is_holds()) acc.bounded = true;
        return acc;
      }
      case FormulaKind::Exists: {
        Numeral n = eval_numeral(approximate(Term::proj(0, t), s_), opts_.eval);
        return check(Term::proj(1, t), instantiate(a, n), join(path, "exists " + a.var() + "=" + std::to_string(n)));
      }
    }
    return Verdict::unknown("malformed formula");
  }

 private:
  static std::string join(const std::string& path, const std::string& step) {
    return path.empty() ? step : path + " / " + step;
  }

  static Verdict combine(const Verdict& a, const Verdict& b) {
    if (a.is_fails()) return a;
    if (b.is_fails()) return b;
    if (a.is_unknown()) return a;
    if (b.is_unknown()) return b;
    return Verdict::holds(a.bounded || b.bounded);
  }

  const KnowledgeState& s_;
  const RealizeOptions& opts_;
};

}  // namespace

Verdict realizes(const Term& t, const KnowledgeState& s, const Formula& a, const RealizeOptions& opts) {
  if (!is_closed(a)) throw Error(ErrorCode::Type, "formula " + print_formula(a) + " is not closed");
  if (!t.closed()) throw Error(ErrorCode::Type, "realizer is not closed");
  if (!has_empty_state(t)) throw Error(ErrorCode::NonEmptyState, "realizer contains a non-empty state constant");
  Ty actual = typecheck(t);
  Ty expected = realizer_type(a);
  if (!(actual == expected)) {
    throw Error(ErrorCode::Type, "realizer has type " + to_string(actual) + ", formula needs " + to_string(expected));
  }
  return Checker(s, opts).check(t, a, "");
}

bool weakly_increasing(std::span<const KnowledgeState> chain) {
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (!state_leq(chain[i - 1], chain[i])) return false;
  }
  return true;
}

std::optional<std::size_t> converges_on(const Term& t, std::span<const KnowledgeState> chain, const EvalOptions& opts) {
  if (!t.closed()) throw Error(ErrorCode::Type, "term is not closed");
  if (!typecheck(t).is_atomic()) throw Error(ErrorCode::Type, "convergence is defined for atomic types only");
  if (!weakly_increasing(chain)) throw Error(ErrorCode::InconsistentState, "chain is not weakly increasing");
  if (chain.empty()) return std::nullopt;
  std::vector<Value> values;
  values.reserve(chain.size());
  for (const KnowledgeState& s : chain) values.push_back(eval_closed(approximate(t, s), opts));
  std::size_t n = values.size();
  if (n >= 2 && !(values[n - 1] == values[n - 2])) return std::nullopt;
  std::size_t i = n - 1;
  while (i > 0 && values[i - 1] == values[n - 1]) --i;
  return i;
}

FixpointResult fixpoint_learn(const Term& t, const KnowledgeState& s0, const FixpointOptions& opts) {
  if (!t.closed()) throw Error(ErrorCode::Type, "term is not closed");
  if (!has_empty_state(t)) throw Error(ErrorCode::NonEmptyState, "term contains a non-empty state constant");
  Ty ty = typecheck(t);
  if (!(ty == Ty::state())) throw Error(ErrorCode::Type, "term has type " + to_string(ty) + ", expected state");

  FixpointResult r;
  r.state = s0;
  for (std::size_t iter = 0;; ++iter) {
    KnowledgeState tau = eval_state(approximate(t, r.state), opts.eval);
    if (tau.empty()) {
      r.trajectory.push_back({iter, tau, r.state});
      return r;
    }
    if (r.iterations >= opts.max_iterations) {
      throw Error(ErrorCode::Fuel, "fixpoint learning exceeded " + std::to_string(opts.max_iterations) + " iterations");
    }
    KnowledgeState next;
    try {
      next = plain_union(r.state, tau);
    } catch (const Error&) {
      throw Error(ErrorCode::InconsistentState, "inconsistent update: " + print_state(tau) +
                                                    " conflicts with " + print_state(r.state));
    }
    if (!(next == consistent_union(r.state, tau))) {
      throw Error(ErrorCode::InconsistentState, "plain and consistent union disagree");
    }
    if (next == r.state) {
      throw Error(ErrorCode::Fuel, "fixpoint learning stalled: update " + print_state(tau) + " adds nothing");
    }
    r.state = std::move(next);
    ++r.iterations;
    r.trajectory.push_back({iter, tau, r.state});
  }
}

}  // namespace lbr
