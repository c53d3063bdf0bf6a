#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lbr {

// Stable error codes; the CLI and the session protocol report these verbatim.
enum class ErrorCode {
  Parse,            // E_PARSE
  UnknownName,      // E_UNKNOWN
  Type,             // E_TYPE
  NonEmptyState,    // E_STATE
  NotImplFree,      // E_NOT_IMPLFREE
  PredicateFalse,   // E_PREDICATE_FALSE
  InconsistentState,// E_INCONSISTENT
  Fuel,             // E_FUEL
  OracleNotApproximated,  // E_ORACLE
  IllegalChoice,    // E_ILLEGAL_CHOICE
  NotEloiseTurn,    // E_NOT_ELOISE
  Finished,         // E_FINISHED
  NotFound,         // E_NOT_FOUND
  Unsupported,      // E_UNSUPPORTED
  Usage,            // E_USAGE
  Io,               // E_IO
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lbr
