#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kdscope {

enum class ErrorCode {
  NotSquare,
  NotHermitian,
  NotUnitary,
  NotUnitModulus,
  NotNormalized,
  SizeMismatch,
  DimensionMismatch,
  DimensionTooSmall,
  DimensionTooLarge,
  IndexOutOfRange,
  InvalidSpin,
  SpinTooLarge,
  InvalidFactorization,
  DegenerateParameter,
  EmptySubspace,
  ParseError,
  IoError,
  InternalInconsistency,
};

std::string_view to_string(ErrorCode code);

/// All validation failures raised by the library carry one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kdscope
