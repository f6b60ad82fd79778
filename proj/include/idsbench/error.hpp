#pragma once

#include <stdexcept>
#include <string>

namespace idsbench {

enum class ErrorCode {
  // arff
  MalformedHeader,
  UndeclaredNominalValue,
  ArityMismatch,
  NonNumericToken,
  // preprocessing
  LabelNotFound,
  AllMissingColumn,
  SchemaMismatch,
  DegeneratePartition,
  // classifiers
  SingleClassData,
  BadHyperparameter,
  WidthMismatch,
  // evaluation / report
  EmptyEvaluation,
  MissingAlgorithm,
  // persistence
  BadModelFile,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::UndeclaredNominalValue: return "UndeclaredNominalValue";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NonNumericToken: return "NonNumericToken";
    case ErrorCode::LabelNotFound: return "LabelNotFound";
    case ErrorCode::AllMissingColumn: return "AllMissingColumn";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::DegeneratePartition: return "DegeneratePartition";
    case ErrorCode::SingleClassData: return "SingleClassData";
    case ErrorCode::BadHyperparameter: return "BadHyperparameter";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::EmptyEvaluation: return "EmptyEvaluation";
    case ErrorCode::MissingAlgorithm: return "MissingAlgorithm";
    case ErrorCode::BadModelFile: return "BadModelFile";
  }
  return "UnknownError";
}

/// Toolkit-wide exception. `line` is a 1-based input line number for parse
/// errors, 0 when not applicable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, int line = 0)
      : std::runtime_error(format_message(code, message, line)),
        code_(code),
        line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format_message(ErrorCode code, const std::string& message,
                                    int line) {
    std::string out = error_code_name(code);
    if (line > 0) out += " (line " + std::to_string(line) + ")";
    out += ": " + message;
    return out;
  }

  ErrorCode code_;
  int line_;
};

}  // namespace idsbench
