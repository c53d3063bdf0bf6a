#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lbr/eval.hpp"
#include "lbr/formula.hpp"

namespace lbr {

enum class MoverKind { Eloise, Abelard, Terminal };

struct Mover {
  MoverKind kind = MoverKind::Terminal;
  bool win = false;  // Terminal only
};

// Eloise at exists/or, Abelard at forall/and, Terminal at atoms (decided by evaluation).
Mover mover_of(const Formula& pos, const EvalOptions& opts = {});

// A move in the Tarski game: a numeral at quantifiers, a branch at connectives.
struct Choice {
  enum class Kind { Numeral, Left, Right };
  Kind kind = Kind::Numeral;
  Numeral n = 0;

  static Choice numeral(Numeral n) { return {Kind::Numeral, n}; }
  static Choice left() { return {Kind::Left, 0}; }
  static Choice right() { return {Kind::Right, 0}; }

  friend bool operator==(const Choice&, const Choice&) = default;
};

// "L", "R" or a decimal numeral.
std::string to_string(const Choice& c);
Choice parse_choice(const std::string& text);

// The position reached from `pos` by `choice`. Throws Error(IllegalChoice).
Formula tarski_child(const Formula& pos, const Choice& choice);

// A finite play of the Tarski game, starting at its root.
class Play {
 public:
  explicit Play(Formula root);

  const std::vector<Formula>& positions() const { return positions_; }
  // choices()[i] leads from positions()[i] to positions()[i + 1].
  const std::vector<Choice>& choices() const { return choices_; }
  std::size_t size() const { return positions_.size(); }
  const Formula& root() const { return positions_.front(); }
  const Formula& last() const { return positions_.back(); }

  Play extended(const Choice& c) const;
  // The prefix with `length` positions, 1 <= length <= size().
  Play prefix(std::size_t length) const;

  // The last position is atomic.
  bool complete() const { return last().is_atom(); }

  friend bool operator==(const Play&, const Play&) = default;

 private:
  std::vector<Formula> positions_;
  std::vector<Choice> choices_;
};

bool is_won(const Play& play, const EvalOptions& opts = {});

// Moves available in 1Back(T_A) at a play. Extension moves are choice
// parameterized: `extend` names the player who picks the choice.
struct BtMoves {
  MoverKind extend = MoverKind::Terminal;  // Terminal: no extension
  // Prefix lengths Eloise may backtrack to; includes play.size() (stay in place)
  // when the play is complete and lost.
  std::vector<std::size_t> backtrack_targets;

  bool empty() const { return extend == MoverKind::Terminal && backtrack_targets.empty(); }
};

BtMoves legal_bt_moves(const Play& play, const EvalOptions& opts = {});

}  // namespace lbr
