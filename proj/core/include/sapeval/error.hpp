// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_ERROR_HPP_
#define SAPEVAL_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sapeval {

enum class ErrorCode {
  kUnbalancedMarkup,
  kEmptyResult,
  kEmptyReference,
  kBothReferencesEmpty,
  kEmptyBatch,
  kNonAlphabetic,
  kBackendUnavailable,
  kBackendMalformedResponse,
  kRankDeficient,
  kTooFewSamples,
  kTooFewSpeakers,
  kDegenerateVariance,
  kMissingUtterances,
  kDuplicateUtterances,
  kMalformedFile,
  kRateLimited,
  kUnauthorized,
  kAlreadyConcluded,
  kChallengeClosed,
  kUnknownTeam,
  kNotFound,
  kIdMismatch,
  kInvalidArgument,
  kIo,
};

// Stable machine-readable name, e.g. "UnbalancedMarkup".
std::string_view error_name(ErrorCode code);

// Every failure raised by the library is an Error. Call sites that need
// detail beyond the message use `position()` (character offset or 1-based
// line number, depending on the code) and `ids()` (utterance ids for
// coverage errors).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, std::size_t position);
  Error(ErrorCode code, const std::string& message,
        std::vector<std::string> ids);

  ErrorCode code() const noexcept { return code_; }
  bool has_position() const noexcept { return has_position_; }
  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  // BackendUnavailable is the only transient failure.
  bool retryable() const noexcept {
    return code_ == ErrorCode::kBackendUnavailable;
  }

 private:
  ErrorCode code_;
  bool has_position_ = false;
  std::size_t position_ = 0;
  std::vector<std::string> ids_;
};

}  // namespace sapeval

#endif  // SAPEVAL_ERROR_HPP_
