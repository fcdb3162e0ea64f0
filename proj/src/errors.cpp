#include "nbspectrum/errors.hpp"

namespace nbspectrum {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::NotANotebook: return "NotANotebook";
    case ErrorCode::UnknownFeature: return "UnknownFeature";
    case ErrorCode::UntrainedModel: return "UntrainedModel";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::TooFewExamples: return "TooFewExamples";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::RepoNotFound: return "RepoNotFound";
    case ErrorCode::PathNeverExisted: return "PathNeverExisted";
    case ErrorCode::UnreadableBlob: return "UnreadableBlob";
    case ErrorCode::MissingOwnerIdentity: return "MissingOwnerIdentity";
    case ErrorCode::NoParseableVersions: return "NoParseableVersions";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace nbspectrum
