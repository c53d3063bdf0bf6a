#include "lbr/type.hpp"

namespace lbr {

struct Ty::Node {
  Kind kind;
  Ty left;
  Ty right;
};

Ty::Ty() : Ty(nat()) {}

Ty Ty::nat() {
  static const Ty t(std::shared_ptr<const Node>(new Node{Kind::Nat, Ty(nullptr), Ty(nullptr)}));
  return t;
}

Ty Ty::boolean() {
  static const Ty t(std::shared_ptr<const Node>(new Node{Kind::Bool, Ty(nullptr), Ty(nullptr)}));
  return t;
}

Ty Ty::state() {
  static const Ty t(std::shared_ptr<const Node>(new Node{Kind::State, Ty(nullptr), Ty(nullptr)}));
  return t;
}

Ty Ty::prod(Ty left, Ty right) {
  return Ty(std::make_shared<const Node>(Node{Kind::Prod, std::move(left), std::move(right)}));
}

Ty Ty::arrow(Ty from, Ty to) {
  return Ty(std::make_shared<const Node>(Node{Kind::Arrow, std::move(from), std::move(to)}));
}

Ty Ty::nat_arrows(unsigned count, Ty result) {
  for (unsigned i = 0; i < count; ++i) result = arrow(nat(), std::move(result));
  return result;
}

Ty::Kind Ty::kind() const { return node_->kind; }

bool Ty::is_atomic() const {
  return kind() == Kind::Nat || kind() == Kind::Bool || kind() == Kind::State;
}

const Ty& Ty::left() const { return node_->left; }
const Ty& Ty::right() const { return node_->right; }

bool operator==(const Ty& a, const Ty& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_atomic()) return true;
  return a.left() == b.left() && a.right() == b.right();
}

std::string to_string(const Ty& ty) {
  switch (ty.kind()) {
    case Ty::Kind::Nat: return "nat";
    case Ty::Kind::Bool: return "bool";
    case Ty::Kind::State: return "state";
    case Ty::Kind::Prod: return "(prod " + to_string(ty.left()) + " " + to_string(ty.right()) + ")";
    case Ty::Kind::Arrow: return "(arrow " + to_string(ty.left()) + " " + to_string(ty.right()) + ")";
  }
  return "?";
}

}  // namespace lbr
