#include "lbr/error.hpp"

namespace lbr {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "E_PARSE";
    case ErrorCode::UnknownName: return "E_UNKNOWN";
    case ErrorCode::Type: return "E_TYPE";
    case ErrorCode::NonEmptyState: return "E_STATE";
    case ErrorCode::NotImplFree: return "E_NOT_IMPLFREE";
    case ErrorCode::PredicateFalse: return "E_PREDICATE_FALSE";
    case ErrorCode::InconsistentState: return "E_INCONSISTENT";
    case ErrorCode::Fuel: return "E_FUEL";
    case ErrorCode::OracleNotApproximated: return "E_ORACLE";
    case ErrorCode::IllegalChoice: return "E_ILLEGAL_CHOICE";
    case ErrorCode::NotEloiseTurn: return "E_NOT_ELOISE";
    case ErrorCode::Finished: return "E_FINISHED";
    case ErrorCode::NotFound: return "E_NOT_FOUND";
    case ErrorCode::Unsupported: return "E_UNSUPPORTED";
    case ErrorCode::Usage: return "E_USAGE";
    case ErrorCode::Io: return "E_IO";
  }
  return "E_UNKNOWN_CODE";
}

}  // namespace lbr
