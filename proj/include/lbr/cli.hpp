#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lbr {

// lbr [--prelude FILE] <command> ...
//   normalize TERM [--strategy normal|innermost] [--fuel N]
//   typecheck TERM
//   approx TERM --state STATE [--normalize]
//   check --realizer R [--formula F] [--state STATE] [--bound N] [--strict] [--candidate T]...
//   fixpoint --term T [--state STATE] [--max-iterations N]
//   play [--formula F] --realizer R --abelard SPEC [--moves N] [--monitor N]
//   serve [--port N]
// TERM, R, F and T are read from a file when one exists at that path and used
// literally otherwise; R may also name a prelude realizer, whose formula is
// then the default for F.
// Exit status: 0 on success, 1 on a domain error or a failed check, 2 on a usage error.
// Errors are printed as "error[E_CODE]: message".
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lbr
