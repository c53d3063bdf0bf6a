#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lbr/eval.hpp"
#include "lbr/formula.hpp"
#include "lbr/state.hpp"
#include "lbr/term.hpp"

namespace lbr {

struct Verdict {
  enum class Kind { Holds, Fails, Unknown };

  Kind kind = Kind::Holds;
  // Holds only: some universal quantifier was checked on 0..bound-1 only.
  bool bounded = false;
  // Fails: the clause path to the counterexample, e.g. "forall x=2 / or:right / forall y=1 / atom".
  std::string path;
  std::string reason;

  static Verdict holds(bool bounded = false) { return {Kind::Holds, bounded, {}, {}}; }
  static Verdict fails(std::string path, std::string reason) {
    return {Kind::Fails, false, std::move(path), std::move(reason)};
  }
  static Verdict unknown(std::string reason) { return {Kind::Unknown, false, {}, std::move(reason)}; }

  bool is_holds() const { return kind == Kind::Holds; }
  bool is_fails() const { return kind == Kind::Fails; }
  bool is_unknown() const { return kind == Kind::Unknown; }
};

std::string to_string(const Verdict& v);

struct RealizeOptions {
  std::size_t bound = 10;
  // Report Unknown instead of a bounded Holds when a universal range is truncated.
  bool strict = false;
  // Antecedent candidates for implications; an implication is Unknown without them.
  std::vector<Term> candidates;
  EvalOptions eval;
};

// Bounded decision procedure for t realizing A at state s.
// Throws Error(Type) when typecheck(t) != |A| or A is open, and
// Error(NonEmptyState) when t embeds a non-empty state constant.
Verdict realizes(const Term& t, const KnowledgeState& s, const Formula& a, const RealizeOptions& opts = {});

bool weakly_increasing(std::span<const KnowledgeState> chain);

// Smallest i such that t[s_j] has the same value for every j >= i; nullopt if
// the last two values differ. t must be closed and of atomic type.
std::optional<std::size_t> converges_on(const Term& t, std::span<const KnowledgeState> chain,
                                        const EvalOptions& opts = {});

struct FixpointStep {
  std::size_t iter = 0;
  KnowledgeState tau;
  KnowledgeState state;  // after the update
};

struct FixpointResult {
  KnowledgeState state;
  std::size_t iterations = 0;  // number of non-empty updates
  std::vector<FixpointStep> trajectory;
};

struct FixpointOptions {
  std::size_t max_iterations = 100000;
  EvalOptions eval;
};

// Iterates S <- S u tau(S) with tau(S) = t[S] until tau(S) is empty.
// Throws Error(InconsistentState) when tau(S) conflicts with S and
// Error(Fuel) when the iteration budget runs out or the state stops growing.
FixpointResult fixpoint_learn(const Term& t, const KnowledgeState& s0, const FixpointOptions& opts = {});

}  // namespace lbr
