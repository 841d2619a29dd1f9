// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "sapeval/backend.hpp"

#include <algorithm>
#include <map>

#include "sapeval/error.hpp"
#include "sapeval/text.hpp"

namespace sapeval {

double token_f1(const std::string& reference, const std::string& hypothesis) {
  const Tokens ref = split_whitespace(reference);
  const Tokens hyp = split_whitespace(hypothesis);
  if (ref.empty() || hyp.empty()) return ref.empty() && hyp.empty() ? 1.0 : 0.0;
  std::map<std::string_view, std::size_t> remaining;
  for (const auto& t : ref) ++remaining[t];
  std::size_t common = 0;
  for (const auto& t : hyp) {
    auto it = remaining.find(t);
    if (it != remaining.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double precision = static_cast<double>(common) / static_cast<double>(hyp.size());
  const double recall = static_cast<double>(common) / static_cast<double>(ref.size());
  return 2.0 * precision * recall / (precision + recall);
}

std::vector<ScoreResponse> StubBackend::score(std::span<const ScoreRequest> pairs) {
  std::vector<ScoreResponse> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) {
    const double f1 = token_f1(pair.reference, pair.hypothesis);
    out.push_back({pair.id, f1, f1});
  }
  return out;
}

BackendHealth StubBackend::health() {
  return {"ok", R"({"nli_model_id":"stub-token-f1","embed_model_id":"stub-token-f1","device":"cpu"})"};
}

std::unique_ptr<ScorerBackend> make_backend(const std::string& target,
                                            RemoteBackendOptions options) {
  if (target.empty() || target == "stub") return std::make_unique<StubBackend>();
  if (target.rfind("http://", 0) == 0) {
    options.base_url = target;
    return std::make_unique<RemoteBackend>(std::move(options));
  }
  throw Error(ErrorCode::kInvalidArgument,
              "backend must be 'stub' or an http:// URL, got '" + target + "'");
}

}  // namespace sapeval
