#pragma once

#include <stdexcept>
#include <string>

namespace orgevo {

enum class ErrorKind {
  EmptyGenome,
  DigitOutOfRange,
  IndexOutOfRange,
  LengthMismatch,
  MalformedTree,
  SpanMismatch,
  GenomeTooShort,
  WindowTooLarge,
  NonPositiveBest,
  FitnessExceedsBest,
  EmptyInput,
  SampleSizeOutOfRange,
  SpaceTooLarge,
  ConfigError,
  IoError,
};

// Single exception type for the whole library; `kind` tells callers (and the
// CLI exit-code mapping) what went wrong without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::EmptyGenome: return "EmptyGenome";
    case ErrorKind::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::MalformedTree: return "MalformedTree";
    case ErrorKind::SpanMismatch: return "SpanMismatch";
    case ErrorKind::GenomeTooShort: return "GenomeTooShort";
    case ErrorKind::WindowTooLarge: return "WindowTooLarge";
    case ErrorKind::NonPositiveBest: return "NonPositiveBest";
    case ErrorKind::FitnessExceedsBest: return "FitnessExceedsBest";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::SampleSizeOutOfRange: return "SampleSizeOutOfRange";
    case ErrorKind::SpaceTooLarge: return "SpaceTooLarge";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace orgevo
