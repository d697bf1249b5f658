#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flagsphere {

enum class ErrorKind {
  InvalidInput,
  Parse,
  Io,
  FaceNotPresent,
  EdgeNotPresent,
  VertexNotPresent,
  NotFlag,
  EdgeInSquare,
  TooSmall,
  OutOfRange,
  DimensionOverflow,
  DimensionMismatch,
  InvalidStep,
  TooLarge,
  NotSimplicial,
  NotPseudomanifold,
  NotOrientable,
  NotAlmostOmniscient,
  ExtensionNotSimplicial,
  InvalidReduction,
  NotASphere,
  NotPositive,
  InvalidWitness,
  AssertionFailed,
  Timeout,
};

std::string_view to_string(ErrorKind kind);

/// Structured failure raised by every library operation.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace flagsphere
