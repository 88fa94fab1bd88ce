#pragma once

#include <stdexcept>
#include <string>

namespace majorbn {

// Every failure the library reports, grouped by class. The CLI maps each
// class to one documented exit code (see error_exit_code).
enum class ErrorCode {
  // I/O
  IoError,
  // input parsing (native format, XDSL, CSV)
  SyntaxError,
  MalformedXml,
  UnsupportedElement,
  MalformedRow,
  EmptyFile,
  // model validation
  DuplicateName,
  InvalidVariable,
  CycleDetected,
  CptShapeMismatch,
  UnnormalizedRow,
  // name / domain lookups
  UnknownVariable,
  UnknownState,
  SchemaMismatch,
  ScoreOutOfRange,
  BadFrequencyVector,
  InvalidBinning,
  // inference
  StateSpaceTooLarge,
  ZeroProbabilityEvidence,
  NoAcceptedSamples,
  AllZeroWeights,
  // dataset shape
  NoObservations,
  DatasetTooSmall,
  EmptyTestSet,
};

const char* error_code_name(ErrorCode code);

// Exit code of the error's class: 3 io, 4 parse, 5 model validation,
// 6 domain lookup, 7 inference, 8 dataset. 0/1/2 are reserved for
// success, unexpected failures and usage errors.
int error_exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace majorbn
