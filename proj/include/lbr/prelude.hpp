#pragma once

#include <string>
#include <string_view>

#include "lbr/env.hpp"

namespace lbr {

// Prelude forms:
//   (defterm name term)             a closed term
//   (defpred name arity term)       a predicate of type Nat^arity -> Bool
//   (deftable name (n ...) tail)    lam x. values[x], tail past the end
//   (defrealizer name (em1 pred))
//   (defrealizer name (minimum f))  f names a term of type nat -> nat
//   (defrealizer name (coquand f))
// The minimum and coquand builders also register below-f, atmost-f and coq-f.
// Throws Error(Parse), Error(UnknownName) or Error(Type) with the line:column of the form.
void load_prelude(std::string_view text, Env& env);

std::string_view builtin_prelude_text();

// An environment holding the built-in prelude.
Env builtin_env();

// The built-in prelude followed by the file at `path` when it is non-empty.
// Throws Error(Io) when the file cannot be read.
Env load_env(const std::string& path);

std::string read_file(const std::string& path);

// The file's contents when `arg` names a readable file, `arg` itself otherwise.
std::string file_or_literal(const std::string& arg);

}  // namespace lbr
