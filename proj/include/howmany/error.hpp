#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace howmany {

enum class ErrorKind {
  kInsufficientImputations,
  kInvalidInput,
  kInvalidQuantileRequest,
  kDomainError,
  kInvalidTarget,
  kSingularDesign,
  kInsufficientCompleteCases,
  kInsufficientData,
  kInsufficientReplications,
  kSearchExhausted,
};

/// Short, stable label for an error kind, e.g. "insufficient imputations".
std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. what() reads "<label>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace howmany
