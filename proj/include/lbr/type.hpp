#pragma once

#include <memory>
#include <span>
#include <string>

namespace lbr {

// Simple types of System T extended with the atomic type State.
class Ty {
 public:
  enum class Kind { Nat, Bool, State, Prod, Arrow };

  Ty();  // Nat

  static Ty nat();
  static Ty boolean();
  static Ty state();
  static Ty prod(Ty left, Ty right);
  static Ty arrow(Ty from, Ty to);

  // Nat -> ... -> Nat -> result, with `count` copies of Nat.
  static Ty nat_arrows(unsigned count, Ty result);

  Kind kind() const;
  bool is_atomic() const;
  bool is_arrow() const { return kind() == Kind::Arrow; }
  bool is_prod() const { return kind() == Kind::Prod; }

  // Components of Prod / Arrow.
  const Ty& left() const;
  const Ty& right() const;

  friend bool operator==(const Ty& a, const Ty& b);

 private:
  struct Node;
  explicit Ty(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(const Ty& ty);

}  // namespace lbr
