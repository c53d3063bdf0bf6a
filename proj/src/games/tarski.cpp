#include <charconv>

#include "lbr/error.hpp"
#include "lbr/games.hpp"
#include "lbr/syntax.hpp"

namespace lbr {

Mover mover_of(const Formula& pos, const EvalOptions& opts) {
  switch (pos.kind()) {
    case FormulaKind::Exists:
    case FormulaKind::Or: return {MoverKind::Eloise, false};
    case FormulaKind::Forall:
    case FormulaKind::And: return {MoverKind::Abelard, false};
    case FormulaKind::Atom: return {MoverKind::Terminal, eval_atom(pos, {}, opts)};
    case FormulaKind::Imp: break;
  }
  throw Error(ErrorCode::NotImplFree, "implications have no Tarski game position");
}

std::string to_string(const Choice& c) {
  switch (c.kind) {
    case Choice::Kind::Left: return "L";
    case Choice::Kind::Right: return "R";
    case Choice::Kind::Numeral: return std::to_string(c.n);
  }
  return "?";
}

Choice parse_choice(const std::string& text) {
  if (text == "L" || text == "l" || text == "left") return Choice::left();
  if (text == "R" || text == "r" || text == "right") return Choice::right();
  Numeral n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::IllegalChoice, "invalid choice '" + text + "': expected L, R or a numeral");
  }
  return Choice::numeral(n);
}

Formula tarski_child(const Formula& pos, const Choice& choice) {
  switch (pos.kind()) {
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      if (choice.kind != Choice::Kind::Numeral) {
        throw Error(ErrorCode::IllegalChoice, "a quantifier position needs a numeral choice");
      }
      return instantiate(pos, choice.n);
    case FormulaKind::And:
    case FormulaKind::Or:
      if (choice.kind == Choice::Kind::Numeral) {
        throw Error(ErrorCode::IllegalChoice, "a connective position needs L or R");
      }
      return choice.kind == Choice::Kind::Left ? pos.left() : pos.right();
    case FormulaKind::Atom: throw Error(ErrorCode::IllegalChoice, "no move from an atomic position");
    case FormulaKind::Imp: break;
  }
  throw Error(ErrorCode::NotImplFree, "implications have no Tarski game position");
}

Play::Play(Formula root) { positions_.push_back(std::move(root)); }

Play Play::extended(const Choice& c) const {
  Play p = *this;
  p.positions_.push_back(tarski_child(last(), c));
  p.choices_.push_back(c);
  return p;
}

Play Play::prefix(std::size_t length) const {
  if (length == 0 || length > size()) throw Error(ErrorCode::IllegalChoice, "invalid prefix length");
  Play p = *this;
  p.positions_.erase(p.positions_.begin() + static_cast<std::ptrdiff_t>(length), p.positions_.end());
  p.choices_.erase(p.choices_.begin() + static_cast<std::ptrdiff_t>(length - 1), p.choices_.end());
  return p;
}

bool is_won(const Play& play, const EvalOptions& opts) {
  return play.complete() && eval_atom(play.last(), {}, opts);
}

BtMoves legal_bt_moves(const Play& play, const EvalOptions& opts) {
  BtMoves moves;
  Mover m = mover_of(play.last(), opts);
  if (m.kind != MoverKind::Terminal) {
    moves.extend = m.kind;
    return moves;
  }
  if (m.win) return moves;
  for (std::size_t i = 0; i + 1 < play.size(); ++i) {
    if (mover_of(play.positions()[i], opts).kind == MoverKind::Eloise) moves.backtrack_targets.push_back(i + 1);
  }
  moves.backtrack_targets.push_back(play.size());
  return moves;
}

}  // namespace lbr
