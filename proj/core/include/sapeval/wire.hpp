// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_WIRE_HPP_
#define SAPEVAL_WIRE_HPP_

#include <span>
#include <vector>

#include "json.hpp"
#include "sapeval/backend.hpp"

// JSON encoding of the scorer protocol:
//   POST /v1/score   {"pairs": [{"id", "reference", "hypothesis"}]}
//                 -> {"scores": [{"id", "nli", "bert"}]}
//   GET  /v1/health -> {"status", "model_info"}
namespace sapeval::wire {

nlohmann::json encode_score_request(std::span<const ScoreRequest> pairs);

// Throws Error(kMalformedFile) when the body does not follow the schema.
std::vector<ScoreRequest> decode_score_request(const nlohmann::json& body);

nlohmann::json encode_score_response(std::span<const ScoreResponse> scores);

// Validates a response against the request it answers: one finite entry per
// requested id, no extras or duplicates. Result is in request order.
// Throws Error(kBackendMalformedResponse).
std::vector<ScoreResponse> decode_score_response(
    const nlohmann::json& body, std::span<const ScoreRequest> request);

nlohmann::json encode_health(const BackendHealth& health);
BackendHealth decode_health(const nlohmann::json& body);

}  // namespace sapeval::wire

#endif  // SAPEVAL_WIRE_HPP_
