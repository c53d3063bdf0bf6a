#include "lbr/error.hpp"
#include "lbr/strategy.hpp"
#include "lbr/syntax.hpp"
#include "lbr/typecheck.hpp"

namespace lbr {

namespace {

Term step_rho(const Term& t, const Formula& from, const Choice& c) {
  switch (from.kind()) {
    case FormulaKind::Exists: return Term::proj(1, t);
    case FormulaKind::Forall: return Term::app(t, Term::num(c.n));
    case FormulaKind::And: return Term::proj(c.kind == Choice::Kind::Left ? 0 : 1, t);
    case FormulaKind::Or: return c.kind == Choice::Kind::Left ? p1(t) : p2(t);
    default: break;
  }
  throw Error(ErrorCode::IllegalChoice, "no move from " + print_formula(from));
}

}  // namespace

Term adapt(const Term& u, const Play& p) {
  Term t = u;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) t = step_rho(t, p.positions()[i], p.choices()[i]);
  return t;
}

KnowledgeState sigma_step(const KnowledgeState& s, bool backtrack, const Term& abandoned, const EvalOptions& opts) {
  if (!backtrack) return s;
  if (!(typecheck(abandoned) == Ty::state())) return s;
  return consistent_union(s, eval_state(approximate(abandoned, s), opts));
}

KnowledgeState sigma_of(const Term& u, const std::vector<Play>& history, const EvalOptions& opts) {
  KnowledgeState s;
  for (std::size_t k = 1; k < history.size(); ++k) {
    const Play& prev = history[k - 1];
    const Play& next = history[k];
    bool extension = next.size() == prev.size() + 1 && next.prefix(prev.size()) == prev;
    s = sigma_step(s, !extension, extension ? u : adapt(u, prev), opts);
  }
  return s;
}

Arena::Arena(Formula root, Term realizer, ArenaOptions opts) : opts_(opts), play_(root) {
  if (!is_impl_free(root)) throw Error(ErrorCode::NotImplFree, "Tarski games need an implication-free formula");
  if (!is_closed(root)) throw Error(ErrorCode::Type, "formula " + print_formula(root) + " is not closed");
  check_formula(root);
  if (!realizer.closed()) throw Error(ErrorCode::Type, "realizer is not closed");
  if (!has_empty_state(realizer)) throw Error(ErrorCode::NonEmptyState, "realizer contains a non-empty state constant");
  Ty actual = typecheck(realizer);
  Ty expected = realizer_type(root);
  if (!(actual == expected)) {
    throw Error(ErrorCode::Type, "realizer has type " + to_string(actual) + ", formula needs " + to_string(expected));
  }
  rho_.push_back(std::move(realizer));
  history_.push_back(play_);
  finish_if_won();
}

ArenaStatus Arena::status() const {
  if (!winner_.empty()) return ArenaStatus::Finished;
  Mover m = mover_of(play_.last(), opts_.eval);
  if (m.kind == MoverKind::Abelard) return ArenaStatus::AbelardToMove;
  return ArenaStatus::EloiseToMove;
}

BtMove Arena::omega() const {
  if (status() != ArenaStatus::EloiseToMove) throw Error(ErrorCode::NotEloiseTurn, "it is not Eloise's turn");
  const Term& t = rho_.back();
  const Formula& last = play_.last();
  switch (last.kind()) {
    case FormulaKind::Exists: {
      Numeral n = eval_numeral(approximate(Term::proj(0, t), state_), opts_.eval);
      return {BtMove::Kind::Extend, Choice::numeral(n), 0, 1};
    }
    case FormulaKind::Or: {
      bool left = eval_bool(approximate(p0(t), state_), opts_.eval);
      return {BtMove::Kind::Extend, left ? Choice::left() : Choice::right(), 0, 2};
    }
    case FormulaKind::Atom: {
      KnowledgeState next = consistent_union(state_, eval_state(approximate(t, state_), opts_.eval));
      std::size_t n = play_.size();
      for (std::size_t j = 1; j < n; ++j) {
        const Formula& aj = play_.positions()[j - 1];
        const Choice& c = play_.choices()[j - 1];
        const Term& w = rho_[j - 1];
        if (aj.kind() == FormulaKind::Exists) {
          Numeral m = eval_numeral(approximate(Term::proj(0, w), next), opts_.eval);
          if (m != c.n) return {BtMove::Kind::Backtrack, {}, j, 3};
        } else if (aj.kind() == FormulaKind::Or) {
          bool left = eval_bool(approximate(p0(w), next), opts_.eval);
          if (left != (c.kind == Choice::Kind::Left)) return {BtMove::Kind::Backtrack, {}, j, 3};
        }
      }
      return {BtMove::Kind::Backtrack, {}, n, 3};
    }
    default: break;
  }
  throw Error(ErrorCode::NotEloiseTurn, "it is not Eloise's turn");
}

void Arena::eloise_step() {
  if (opts_.monitor_bound > 0 && status() == ArenaStatus::EloiseToMove) {
    monitor_.push_back(lemma38_monitor(*this, opts_.monitor_bound));
  }
  BtMove m = omega();
  Event clause;
  clause.kind = Event::Kind::OmegaClause;
  clause.clause = m.clause;
  if (m.kind == BtMove::Kind::Backtrack) clause.j = m.target;
  events_.push_back(clause);
  if (m.kind == BtMove::Kind::Extend) {
    extend('E', m.choice);
  } else {
    backtrack(m.target);
  }
}

void Arena::abelard_move(const Choice& c) {
  if (!winner_.empty()) throw Error(ErrorCode::Finished, "the game is over");
  if (status() != ArenaStatus::AbelardToMove) throw Error(ErrorCode::IllegalChoice, "it is not Abelard's turn");
  extend('A', c);
}

void Arena::extend(char by, const Choice& c) {
  const Formula from = play_.last();
  Play next = play_.extended(c);
  rho_.push_back(step_rho(rho_.back(), from, c));
  play_ = std::move(next);
  history_.push_back(play_);
  stalled_stays_ = 0;
  Event e;
  e.kind = Event::Kind::Extend;
  e.by = by;
  e.choice = c;
  e.pos = print_formula(play_.last());
  events_.push_back(std::move(e));
  finish_if_won();
}

void Arena::backtrack(std::size_t target) {
  KnowledgeState next = sigma_step(state_, true, rho_.back(), opts_.eval);
  if (target == play_.size()) {
    stalled_stays_ = next == state_ ? stalled_stays_ + 1 : 0;
    if (stalled_stays_ >= 2) {
      throw Error(ErrorCode::Fuel, "stay-in-place made no progress twice in a row");
    }
  } else {
    stalled_stays_ = 0;
  }
  play_ = play_.prefix(target);
  rho_.erase(rho_.begin() + static_cast<std::ptrdiff_t>(target), rho_.end());
  state_ = std::move(next);
  ++backtracks_;
  history_.push_back(play_);
  Event b;
  b.kind = Event::Kind::Backtrack;
  b.to = target;
  b.state = state_;
  events_.push_back(std::move(b));
  Event s;
  s.kind = Event::Kind::Sigma;
  s.state = state_;
  events_.push_back(std::move(s));
}

void Arena::finish_if_won() {
  if (play_.complete() && eval_atom(play_.last(), {}, opts_.eval)) finish("E", false);
}

void Arena::finish(const std::string& winner, bool forfeit) {
  winner_ = winner;
  Event r;
  r.kind = Event::Kind::Result;
  r.winner = winner;
  r.state = state_;
  r.backtracks = backtracks_;
  r.forfeit = forfeit;
  events_.push_back(std::move(r));
}

void Arena::forfeit() {
  if (!winner_.empty()) throw Error(ErrorCode::Finished, "the game is over");
  finish("E", true);
}

void Arena::time_out() {
  if (!winner_.empty()) throw Error(ErrorCode::Finished, "the game is over");
  finish("timeout", false);
}

Verdict lemma38_monitor(const Arena& arena, std::size_t bound) {
  RealizeOptions opts;
  opts.bound = bound;
  opts.eval = arena.options().eval;
  return realizes(arena.adapted(arena.play().size()), arena.state(), arena.play().last(), opts);
}

GameResult run_game(const Formula& a, const Term& u, AbelardStrategy& abelard, const GameOptions& opts) {
  Arena arena(a, u, opts.arena);
  std::string error;
  while (arena.status() != ArenaStatus::Finished) {
    if (arena.moves() >= opts.fuel) {
      error = "move budget of " + std::to_string(opts.fuel) + " exhausted";
      arena.time_out();
      break;
    }
    if (arena.status() == ArenaStatus::EloiseToMove) {
      try {
        arena.eloise_step();
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Fuel) throw;
        error = e.what();
        arena.time_out();
      }
      continue;
    }
    std::optional<Choice> c = abelard.choose(arena.play());
    if (!c) {
      arena.forfeit();
      break;
    }
    arena.abelard_move(*c);
  }
  return GameResult{arena.winner(),
                    !arena.events().empty() && arena.events().back().forfeit,
                    arena.events(),
                    arena.backtracks(),
                    arena.moves(),
                    arena.state(),
                    arena.play(),
                    arena.monitor_log(),
                    error};
}

}  // namespace lbr
