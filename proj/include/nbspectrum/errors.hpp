#pragma once

#include <stdexcept>
#include <string>

namespace nbspectrum {

enum class ErrorCode {
  // notebook parsing
  MalformedJson,
  UnsupportedFormat,
  NotANotebook,
  // scoring / regression
  UnknownFeature,
  UntrainedModel,
  RankDeficient,
  TooFewExamples,
  LengthMismatch,
  EmptyInput,
  // repository history
  RepoNotFound,
  PathNeverExisted,
  UnreadableBlob,
  // filters
  MissingOwnerIdentity,
  // trajectory
  NoParseableVersions,
  TooFewPoints,
  // configuration / IO
  ConfigError,
  IoError,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Single exception type for all domain errors; `code()` identifies the kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }

  /// Detail text without the code-name prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace nbspectrum
