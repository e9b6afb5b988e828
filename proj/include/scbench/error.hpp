#pragma once

#include <stdexcept>
#include <string>

namespace scbench {

enum class ErrorKind {
  UnknownMarker,
  UnsupportedVersion,
  InvalidRegistry,
  InvalidInput,
  UnterminatedBlockComment,
  UnterminatedString,
  Io,
  MissingRecord,
  NotApplicable,
  EmptyMatrix,
  NoSupportedClasses,
  NoValidRuns,
  NotReciprocal,
  NonConvergence,
  DimensionMismatch,
  MissingMetadata,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (and the
// Python bindings) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace scbench
