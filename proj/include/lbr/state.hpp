#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lbr/predicate.hpp"

namespace lbr {

using Numeral = std::uint64_t;

// <P, args, witness>: a record that P(args, witness) holds.
struct Atom {
  Predicate pred;
  std::vector<Numeral> args;  // length pred.arity() - 1
  Numeral witness = 0;

  friend bool operator==(const Atom& a, const Atom& b) = default;
};

// Canonical order: predicate key, then args, then witness.
std::strong_ordering compare_atoms(const Atom& a, const Atom& b);

// Two atoms conflict when they bind the same (pred, args) to different witnesses.
bool consistent(const Atom& a, const Atom& b);

// Checks arity and that P(args, witness) normalizes to true.
// Throws Error(PredicateFalse) when it normalizes to false.
Atom atom_new(const Predicate& pred, std::vector<Numeral> args, Numeral witness);

// A finite set of pairwise consistent atoms, kept in canonical order.
class KnowledgeState {
 public:
  KnowledgeState() = default;

  // Sorts and deduplicates; throws Error(InconsistentState) on a conflict.
  // Atoms are assumed valid (built through atom_new or trusted code).
  static KnowledgeState from_atoms(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }

  // The witness bound to (pred, args), if any.
  std::optional<Numeral> lookup(const Predicate& pred, std::span<const Numeral> args) const;
  bool contains(const Atom& atom) const;

  // Pairwise-consistency and ordering validator.
  bool valid() const;

  friend bool operator==(const KnowledgeState& a, const KnowledgeState& b) = default;

 private:
  std::vector<Atom> atoms_;
};

// S1 together with the atoms of S2 consistent with every atom of S1 (left-biased).
KnowledgeState consistent_union(const KnowledgeState& s1, const KnowledgeState& s2);

// Plain set union; throws Error(InconsistentState) if the union is not a state.
KnowledgeState plain_union(const KnowledgeState& s1, const KnowledgeState& s2);

// Denotation of add_P s args m: empty if (P, args) is already bound in S or
// P(args, m) is false; the singleton {<P, args, m>} otherwise.
KnowledgeState add_semantics(const KnowledgeState& s, const Predicate& pred,
                             std::span<const Numeral> args, Numeral witness);

std::optional<Numeral> lookup(const KnowledgeState& s, const Predicate& pred,
                              std::span<const Numeral> args);

// S1 is a subset of S2.
bool state_leq(const KnowledgeState& s1, const KnowledgeState& s2);

}  // namespace lbr
