#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cpaths {

enum class ErrorKind {
  UnknownSpace,
  UnknownPoint,
  UnknownGenerator,
  EndpointMismatch,
  NotALoop,
  StepNotEnabled,
  InvalidPosition,
  NotABasepointLoop,
  GroupTagMismatch,
  SpaceMismatch,
  Unreachable,
  InvalidPresentation,
  InvalidSpaceMap,
  ParseError,
  Internal,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every recoverable failure in the library is reported as a PathError
/// carrying a machine-readable kind.
class PathError : public std::runtime_error {
 public:
  PathError(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cpaths
