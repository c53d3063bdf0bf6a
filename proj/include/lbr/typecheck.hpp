#pragma once

#include <map>
#include <string>

#include "lbr/term.hpp"
#include "lbr/type.hpp"

namespace lbr {

using TypeContext = std::map<std::string, Ty>;

// The unique simple type of t. Free variables are looked up in ctx.
// Throws Error(Type) with the expected/actual types and the subterm location.
Ty typecheck(const Term& t, const TypeContext& ctx = {});

// Signatures of the oracle and learning constants for a (k+1)-ary predicate.
Ty oracle_type(OracleKind kind, unsigned arity);
Ty learn_type(LearnKind kind, unsigned arity);

}  // namespace lbr
