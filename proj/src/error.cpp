#include "majorbn/error.hpp"

namespace majorbn {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::MalformedXml: return "MalformedXml";
    case ErrorCode::UnsupportedElement: return "UnsupportedElement";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::InvalidVariable: return "InvalidVariable";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::CptShapeMismatch: return "CptShapeMismatch";
    case ErrorCode::UnnormalizedRow: return "UnnormalizedRow";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::ScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::BadFrequencyVector: return "BadFrequencyVector";
    case ErrorCode::InvalidBinning: return "InvalidBinning";
    case ErrorCode::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::ZeroProbabilityEvidence: return "ZeroProbabilityEvidence";
    case ErrorCode::NoAcceptedSamples: return "NoAcceptedSamples";
    case ErrorCode::AllZeroWeights: return "AllZeroWeights";
    case ErrorCode::NoObservations: return "NoObservations";
    case ErrorCode::DatasetTooSmall: return "DatasetTooSmall";
    case ErrorCode::EmptyTestSet: return "EmptyTestSet";
  }
  return "Error";
}

int error_exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError:
      return 3;
    case ErrorCode::SyntaxError:
    case ErrorCode::MalformedXml:
    case ErrorCode::UnsupportedElement:
    case ErrorCode::MalformedRow:
    case ErrorCode::EmptyFile:
      return 4;
    case ErrorCode::DuplicateName:
    case ErrorCode::InvalidVariable:
    case ErrorCode::CycleDetected:
    case ErrorCode::CptShapeMismatch:
    case ErrorCode::UnnormalizedRow:
      return 5;
    case ErrorCode::UnknownVariable:
    case ErrorCode::UnknownState:
    case ErrorCode::SchemaMismatch:
    case ErrorCode::ScoreOutOfRange:
    case ErrorCode::BadFrequencyVector:
    case ErrorCode::InvalidBinning:
      return 6;
    case ErrorCode::StateSpaceTooLarge:
    case ErrorCode::ZeroProbabilityEvidence:
    case ErrorCode::NoAcceptedSamples:
    case ErrorCode::AllZeroWeights:
      return 7;
    case ErrorCode::NoObservations:
    case ErrorCode::DatasetTooSmall:
    case ErrorCode::EmptyTestSet:
      return 8;
  }
  return 1;
}

}  // namespace majorbn
