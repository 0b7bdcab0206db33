#include "jladder/error.hpp"

namespace jladder {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::HeightCapExceeded: return "HeightCapExceeded";
    case ErrorKind::ModulusOutOfRange: return "ModulusOutOfRange";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::StepTooCoarse: return "StepTooCoarse";
    case ErrorKind::BelowValidityThreshold: return "BelowValidityThreshold";
    case ErrorKind::TableExhausted: return "TableExhausted";
    case ErrorKind::InadmissibleU: return "InadmissibleU";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DegenerateWeight: return "DegenerateWeight";
    case ErrorKind::EmptyLevelSet: return "EmptyLevelSet";
    case ErrorKind::SingularityInWindow: return "SingularityInWindow";
    case ErrorKind::EmptyCurve: return "EmptyCurve";
    case ErrorKind::NotAttained: return "NotAttained";
    case ErrorKind::NonPositiveC3: return "NonPositiveC3";
    case ErrorKind::LevelNotAttained: return "LevelNotAttained";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::VersionMismatch: return "VersionMismatch";
    case ErrorKind::CorruptFile: return "CorruptFile";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace jladder
