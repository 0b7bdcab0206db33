#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jladder {

enum class ErrorKind {
  PoleAtOne,
  HeightCapExceeded,
  ModulusOutOfRange,
  PoleProximity,
  StepTooCoarse,
  BelowValidityThreshold,
  TableExhausted,
  InadmissibleU,
  IndexOutOfRange,
  DegenerateWeight,
  EmptyLevelSet,
  SingularityInWindow,
  EmptyCurve,
  NotAttained,
  NonPositiveC3,
  LevelNotAttained,
  InvalidArgument,
  InvariantViolation,
  VersionMismatch,
  CorruptFile,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to an outcome class without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace jladder
