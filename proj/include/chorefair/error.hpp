#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chorefair {

enum class ErrorKind {
  kValidation,
  kNegativeCost,
  kEmptyMatrix,
  kRaggedRows,
  kDimensionMismatch,
  kInfeasibleAllocation,
  kMalformedInput,
  kUnknownAlgorithm,
  kInstanceTooLarge,
  kBudgetExceeded,
};

std::string_view to_string(ErrorKind kind);

// Base class for every error raised by the library. The kind is stable and
// machine readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// True for errors that stem from a size limit or enumeration budget rather
// than from bad input.
inline bool is_limit_error(ErrorKind kind) {
  return kind == ErrorKind::kInstanceTooLarge ||
         kind == ErrorKind::kBudgetExceeded;
}

}  // namespace chorefair
