#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lbr/eval.hpp"
#include "lbr/formula.hpp"
#include "lbr/games.hpp"
#include "lbr/realizability.hpp"
#include "lbr/state.hpp"
#include "lbr/term.hpp"

namespace lbr {

// One entry of a game trace.
struct Event {
  enum class Kind { Extend, Backtrack, Sigma, OmegaClause, Result };

  Kind kind = Kind::Extend;
  char by = 'E';                   // Extend: 'E' or 'A'
  Choice choice;                   // Extend
  std::string pos;                 // Extend: the position reached
  std::size_t to = 0;              // Backtrack: length of the retained prefix
  KnowledgeState state;            // Backtrack, Sigma, Result
  int clause = 0;                  // OmegaClause
  std::optional<std::size_t> j;    // OmegaClause 3: the backtrack target
  std::string winner;              // Result: "E", "A" or "timeout"
  std::size_t backtracks = 0;      // Result
  bool forfeit = false;            // Result: Abelard had no move to offer
};

// A move of Eloise in 1Back(T_A).
struct BtMove {
  enum class Kind { Extend, Backtrack };
  Kind kind = Kind::Extend;
  Choice choice;           // Extend
  std::size_t target = 0;  // Backtrack: prefix length; equal to the play length to stay in place
  int clause = 0;          // the clause of omega that produced the move
};

// rho: the realizer adapted to the play p.
Term adapt(const Term& u, const Play& p);

// One step of Sigma. On a backtrack `abandoned` is rho of the play being left.
KnowledgeState sigma_step(const KnowledgeState& s, bool backtrack, const Term& abandoned,
                          const EvalOptions& opts = {});

// Sigma of a whole 1Back play given as the sequence of Tarski plays it visited.
KnowledgeState sigma_of(const Term& u, const std::vector<Play>& history, const EvalOptions& opts = {});

struct ArenaOptions {
  EvalOptions eval;
  // When positive, the realizability checker runs at every Eloise turn with this bound.
  std::size_t monitor_bound = 0;
};

enum class ArenaStatus { EloiseToMove, AbelardToMove, Finished };

// A 1Back(T_A) game in progress, with Eloise playing the strategy induced by u.
class Arena {
 public:
  // Throws Error(NotImplFree), Error(Type) or Error(NonEmptyState) on invalid inputs.
  Arena(Formula root, Term realizer, ArenaOptions opts = {});

  const Formula& root() const { return play_.root(); }
  const Term& realizer() const { return rho_.front(); }
  const Play& play() const { return play_; }
  const KnowledgeState& state() const { return state_; }
  std::size_t backtracks() const { return backtracks_; }
  std::size_t moves() const { return history_.size() - 1; }
  const std::vector<Event>& events() const { return events_; }
  const std::vector<Play>& history() const { return history_; }
  const std::vector<Verdict>& monitor_log() const { return monitor_; }
  const ArenaOptions& options() const { return opts_; }

  // rho of the prefix with `length` positions of the current play.
  const Term& adapted(std::size_t length) const { return rho_.at(length - 1); }

  ArenaStatus status() const;
  // "E", "A", "timeout", or empty while the game runs.
  const std::string& winner() const { return winner_; }

  // The move omega prescribes now. Throws Error(NotEloiseTurn).
  BtMove omega() const;
  // Computes and plays omega. Throws Error(Fuel) when stay-in-place stops making progress.
  void eloise_step();
  // Throws Error(Finished) after the game ended and Error(IllegalChoice) when
  // it is not Abelard's turn or the choice does not fit the position.
  void abelard_move(const Choice& c);

  void forfeit();       // Abelard gives up: Eloise wins
  void time_out();      // the move budget ran out

 private:
  void extend(char by, const Choice& c);
  void backtrack(std::size_t target);
  void finish_if_won();
  void finish(const std::string& winner, bool forfeit);

  ArenaOptions opts_;
  Play play_;
  std::vector<Term> rho_;
  KnowledgeState state_;
  std::vector<Play> history_;
  std::vector<Event> events_;
  std::vector<Verdict> monitor_;
  std::size_t backtracks_ = 0;
  int stalled_stays_ = 0;
  std::string winner_;
};

// Opponent models for Abelard.
class AbelardStrategy {
 public:
  virtual ~AbelardStrategy() = default;
  // A choice at the Abelard position play.last(); nullopt forfeits.
  virtual std::optional<Choice> choose(const Play& play) = 0;
  virtual std::string describe() const = 0;
};

// Uniform numerals in 0..range-1 and uniform branches, from a seeded mt19937_64.
class RandomAbelard : public AbelardStrategy {
 public:
  explicit RandomAbelard(std::uint64_t seed, Numeral range = 20);
  std::optional<Choice> choose(const Play& play) override;
  std::string describe() const override;

 private:
  std::uint64_t seed_;
  Numeral range_;
  std::mt19937_64 rng_;
};

// Plays the listed choices in order and forfeits once they run out.
class ScriptedAbelard : public AbelardStrategy {
 public:
  explicit ScriptedAbelard(std::vector<Choice> script);
  std::optional<Choice> choose(const Play& play) override;
  std::string describe() const override;

 private:
  std::vector<Choice> script_;
  std::size_t next_ = 0;
};

class CallbackAbelard : public AbelardStrategy {
 public:
  using Callback = std::function<std::optional<Choice>(const Play&)>;
  explicit CallbackAbelard(Callback cb, std::string name = "callback");
  std::optional<Choice> choose(const Play& play) override;
  std::string describe() const override;

 private:
  Callback cb_;
  std::string name_;
};

// Picks the least counterexample below `range` when one exists (judged by
// bounded_truth), and 0 / L otherwise.
class RefuterAbelard : public AbelardStrategy {
 public:
  explicit RefuterAbelard(Numeral range = 20, EvalOptions opts = {});
  std::optional<Choice> choose(const Play& play) override;
  std::string describe() const override;

 private:
  Numeral range_;
  EvalOptions opts_;
};

// Truth of a closed formula with every quantifier restricted to 0..range-1.
bool bounded_truth(const Formula& f, Numeral range, const EvalOptions& opts = {});

// "random:SEED[:RANGE]", "scripted:C,C,..." (C = numeral, L or R), "refuter[:RANGE]".
std::unique_ptr<AbelardStrategy> parse_abelard(const std::string& spec);

struct GameOptions {
  std::size_t fuel = 10000;  // 1Back moves
  ArenaOptions arena;
};

struct GameResult {
  std::string winner;  // "E", "A" or "timeout"
  bool forfeit = false;
  std::vector<Event> trace;
  std::size_t backtracks = 0;
  std::size_t moves = 0;
  KnowledgeState final_state;
  Play final_play;
  std::vector<Verdict> monitor;
  std::string error;  // set when the run ended in a timeout
};

GameResult run_game(const Formula& a, const Term& u, AbelardStrategy& abelard, const GameOptions& opts = {});

// Runs the realizability checker on rho and Sigma of the current play.
Verdict lemma38_monitor(const Arena& arena, std::size_t bound);

}  // namespace lbr
