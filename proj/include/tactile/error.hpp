#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tactile {

enum class ErrorKind {
  Empty,
  InconsistentFeatures,
  IndexOutOfRange,
  UnknownLabel,
  OutOfPlate,
  ConfigInvalid,
  TooShort,
  StaticPhaseTooShort,
  TooFewPoints,
  DimensionMismatch,
  SingleClass,
  NonFinite,
  TooFewPerClass,
  LengthMismatch,
  MixedTasks,
  Format,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::InconsistentFeatures: return "InconsistentFeatures";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::OutOfPlate: return "OutOfPlate";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::StaticPhaseTooShort: return "StaticPhaseTooShort";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingleClass: return "SingleClass";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::TooFewPerClass: return "TooFewPerClass";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::MixedTasks: return "MixedTasks";
    case ErrorKind::Format: return "Format";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind so
/// callers (the CLI in particular) can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tactile
