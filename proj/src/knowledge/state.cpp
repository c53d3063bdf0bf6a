#include "lbr/state.hpp"

#include <algorithm>

#include "lbr/error.hpp"
#include "lbr/eval.hpp"

namespace lbr {

namespace {

bool same_key(const Atom& a, const Atom& b) { return a.pred == b.pred && a.args == b.args; }

// Orders by (pred, args) only; atoms of a state are unique under this order.
bool key_less(const Atom& a, const Atom& b) {
  auto c = a.pred <=> b.pred;
  if (c != 0) return c < 0;
  return a.args < b.args;
}

}  // namespace

std::strong_ordering compare_atoms(const Atom& a, const Atom& b) {
  if (auto c = a.pred <=> b.pred; c != 0) return c;
  if (auto c = a.args <=> b.args; c != 0) return c;
  return a.witness <=> b.witness;
}

bool consistent(const Atom& a, const Atom& b) { return !same_key(a, b) || a.witness == b.witness; }

Atom atom_new(const Predicate& pred, std::vector<Numeral> args, Numeral witness) {
  if (args.size() + 1 != pred.arity()) {
    throw Error(ErrorCode::Type, "atom for '" + pred.name() + "' needs " + std::to_string(pred.arity() - 1) +
                                     " argument(s), got " + std::to_string(args.size()));
  }
  std::vector<Numeral> all = args;
  all.push_back(witness);
  if (!holds(pred, all)) {
    throw Error(ErrorCode::PredicateFalse, "atom <" + pred.name() + ", ..., " + std::to_string(witness) +
                                               "> is invalid: the predicate is false there");
  }
  return Atom{pred, std::move(args), witness};
}

KnowledgeState KnowledgeState::from_atoms(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return compare_atoms(a, b) < 0; });
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (same_key(atoms[i - 1], atoms[i])) {
      throw Error(ErrorCode::InconsistentState,
                  "inconsistent atoms for '" + atoms[i].pred.name() + "': witnesses " +
                      std::to_string(atoms[i - 1].witness) + " and " + std::to_string(atoms[i].witness));
    }
  }
  KnowledgeState s;
  s.atoms_ = std::move(atoms);
  return s;
}

std::optional<Numeral> KnowledgeState::lookup(const Predicate& pred, std::span<const Numeral> args) const {
  Atom probe{pred, std::vector<Numeral>(args.begin(), args.end()), 0};
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), probe, key_less);
  if (it != atoms_.end() && same_key(*it, probe)) return it->witness;
  return std::nullopt;
}

bool KnowledgeState::contains(const Atom& atom) const {
  auto w = lookup(atom.pred, atom.args);
  return w && *w == atom.witness;
}

bool KnowledgeState::valid() const {
  for (std::size_t i = 1; i < atoms_.size(); ++i) {
    if (!key_less(atoms_[i - 1], atoms_[i])) return false;
  }
  return true;
}

KnowledgeState consistent_union(const KnowledgeState& s1, const KnowledgeState& s2) {
  if (s2.empty()) return s1;
  if (s1.empty()) return s2;
  std::vector<Atom> atoms = s1.atoms();
  for (const Atom& a : s2.atoms()) {
    if (!s1.lookup(a.pred, a.args)) atoms.push_back(a);
  }
  return KnowledgeState::from_atoms(std::move(atoms));
}

KnowledgeState plain_union(const KnowledgeState& s1, const KnowledgeState& s2) {
  std::vector<Atom> atoms = s1.atoms();
  atoms.insert(atoms.end(), s2.atoms().begin(), s2.atoms().end());
  return KnowledgeState::from_atoms(std::move(atoms));
}

KnowledgeState add_semantics(const KnowledgeState& s, const Predicate& pred, std::span<const Numeral> args,
                             Numeral witness) {
  if (args.size() + 1 != pred.arity()) {
    throw Error(ErrorCode::Type, "add for '" + pred.name() + "' has the wrong number of arguments");
  }
  if (s.lookup(pred, args)) return {};
  std::vector<Numeral> all(args.begin(), args.end());
  all.push_back(witness);
  if (!holds(pred, all)) return {};
  return KnowledgeState::from_atoms({Atom{pred, std::vector<Numeral>(args.begin(), args.end()), witness}});
}

std::optional<Numeral> lookup(const KnowledgeState& s, const Predicate& pred, std::span<const Numeral> args) {
  return s.lookup(pred, args);
}

bool state_leq(const KnowledgeState& s1, const KnowledgeState& s2) {
  if (s1.size() > s2.size()) return false;
  for (const Atom& a : s1.atoms()) {
    if (!s2.contains(a)) return false;
  }
  return true;
}

}  // namespace lbr
