#include "howmany/error.hpp"

namespace howmany {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInsufficientImputations: return "insufficient imputations";
    case ErrorKind::kInvalidInput: return "invalid input";
    case ErrorKind::kInvalidQuantileRequest: return "invalid quantile request";
    case ErrorKind::kDomainError: return "domain error";
    case ErrorKind::kInvalidTarget: return "invalid target";
    case ErrorKind::kSingularDesign: return "singular design";
    case ErrorKind::kInsufficientCompleteCases: return "insufficient complete cases";
    case ErrorKind::kInsufficientData: return "insufficient data";
    case ErrorKind::kInsufficientReplications: return "insufficient replications";
    case ErrorKind::kSearchExhausted: return "search exhausted";
  }
  return "unknown error";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + (detail.empty() ? "" : ": " + detail)),
      kind_(kind) {}

}  // namespace howmany
