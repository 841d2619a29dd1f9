// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "sapeval/error.hpp"

#include <utility>

namespace sapeval {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnbalancedMarkup: return "UnbalancedMarkup";
    case ErrorCode::kEmptyResult: return "EmptyResult";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kBothReferencesEmpty: return "BothReferencesEmpty";
    case ErrorCode::kEmptyBatch: return "EmptyBatch";
    case ErrorCode::kNonAlphabetic: return "NonAlphabetic";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
    case ErrorCode::kBackendMalformedResponse: return "BackendMalformedResponse";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kTooFewSpeakers: return "TooFewSpeakers";
    case ErrorCode::kDegenerateVariance: return "DegenerateVariance";
    case ErrorCode::kMissingUtterances: return "MissingUtterances";
    case ErrorCode::kDuplicateUtterances: return "DuplicateUtterances";
    case ErrorCode::kMalformedFile: return "MalformedFile";
    case ErrorCode::kRateLimited: return "RateLimited";
    case ErrorCode::kUnauthorized: return "Unauthorized";
    case ErrorCode::kAlreadyConcluded: return "AlreadyConcluded";
    case ErrorCode::kChallengeClosed: return "ChallengeClosed";
    case ErrorCode::kUnknownTeam: return "UnknownTeam";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kIdMismatch: return "IdMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, std::size_t position)
    : std::runtime_error(message),
      code_(code),
      has_position_(true),
      position_(position) {}

Error::Error(ErrorCode code, const std::string& message,
             std::vector<std::string> ids)
    : std::runtime_error(message), code_(code), ids_(std::move(ids)) {}

}  // namespace sapeval
