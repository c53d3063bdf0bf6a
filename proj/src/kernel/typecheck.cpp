#include "lbr/typecheck.hpp"

#include <vector>

#include "lbr/error.hpp"
#include "lbr/syntax.hpp"

namespace lbr {

namespace {

std::string excerpt(const Term& t) {
  std::string s = print_term(t);
  if (s.size() > 80) s = s.substr(0, 77) + "...";
  return s;
}

[[noreturn]] void mismatch(const Term& at, const Ty& expected, const Ty& actual) {
  throw Error(ErrorCode::Type, "type mismatch in " + excerpt(at) + ": expected " + to_string(expected) +
                                   ", got " + to_string(actual));
}

class Checker {
 public:
  explicit Checker(const TypeContext& ctx) : ctx_(ctx) {}

  Ty infer(const Term& t) {
    switch (t.kind()) {
      case TermKind::Bound: {
        if (t.index() >= scope_.size()) {
          throw Error(ErrorCode::Type, "unbound variable #" + std::to_string(t.index()));
        }
        return scope_[scope_.size() - 1 - t.index()];
      }
      case TermKind::Free: {
        auto it = ctx_.find(t.name());
        if (it == ctx_.end()) throw Error(ErrorCode::Type, "unbound variable '" + t.name() + "'");
        return it->second;
      }
      case TermKind::Num: return Ty::nat();
      case TermKind::Succ:
        expect(t.operand(), Ty::nat());
        return Ty::nat();
      case TermKind::True:
      case TermKind::False: return Ty::boolean();
      case TermKind::Pair: return Ty::prod(infer(t.child(0)), infer(t.child(1)));
      case TermKind::Proj: {
        Ty p = infer(t.operand());
        if (!p.is_prod()) {
          throw Error(ErrorCode::Type, "projection of non-product in " + excerpt(t) + ": got " + to_string(p));
        }
        return t.proj_index() == 0 ? p.left() : p.right();
      }
      case TermKind::If: {
        expect(t.child(0), Ty::boolean());
        Ty a = infer(t.child(1));
        expect(t.child(2), a);
        return a;
      }
      case TermKind::Rec: {
        const Ty& ty = t.ty();
        expect(t.child(0), ty);
        expect(t.child(1), Ty::arrow(Ty::nat(), Ty::arrow(ty, ty)));
        expect(t.child(2), Ty::nat());
        return ty;
      }
      case TermKind::Lam: {
        scope_.push_back(t.ty());
        Ty body = infer(t.body());
        scope_.pop_back();
        return Ty::arrow(t.ty(), body);
      }
      case TermKind::App: {
        Ty f = infer(t.fn());
        if (!f.is_arrow()) {
          throw Error(ErrorCode::Type, "application of non-function in " + excerpt(t) + ": got " + to_string(f));
        }
        expect(t.arg(), f.left());
        return f.right();
      }
      case TermKind::StateConst: return Ty::state();
      case TermKind::Oracle: return oracle_type(t.oracle_kind(), t.pred().arity());
      case TermKind::Learn: return learn_type(t.learn_kind(), t.pred().arity());
      case TermKind::Cup: return Ty::arrow(Ty::state(), Ty::arrow(Ty::state(), Ty::state()));
    }
    throw Error(ErrorCode::Type, "malformed term");
  }

 private:
  void expect(const Term& t, const Ty& ty) {
    Ty actual = infer(t);
    if (!(actual == ty)) mismatch(t, ty, actual);
  }

  const TypeContext& ctx_;
  std::vector<Ty> scope_;
};

}  // namespace

Ty typecheck(const Term& t, const TypeContext& ctx) { return Checker(ctx).infer(t); }

Ty oracle_type(OracleKind kind, unsigned arity) {
  unsigned k = arity - 1;
  switch (kind) {
    case OracleKind::X: return Ty::nat_arrows(k, Ty::boolean());
    case OracleKind::Phi: return Ty::nat_arrows(k, Ty::nat());
    case OracleKind::Add: return Ty::nat_arrows(k + 1, Ty::state());
  }
  return Ty::state();
}

Ty learn_type(LearnKind kind, unsigned arity) {
  unsigned k = arity - 1;
  switch (kind) {
    case LearnKind::Chi: return Ty::arrow(Ty::state(), Ty::nat_arrows(k, Ty::boolean()));
    case LearnKind::Phi: return Ty::arrow(Ty::state(), Ty::nat_arrows(k, Ty::nat()));
    case LearnKind::Add: return Ty::arrow(Ty::state(), Ty::nat_arrows(k + 1, Ty::state()));
  }
  return Ty::state();
}

}  // namespace lbr
