// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_BACKEND_HPP_
#define SAPEVAL_BACKEND_HPP_

#include <chrono>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sapeval {

// One pair on the scorer wire protocol. Reference and hypothesis are
// normalized token strings joined by single spaces.
struct ScoreRequest {
  std::string id;
  std::string reference;
  std::string hypothesis;
};

struct ScoreResponse {
  std::string id;
  double nli = 0.0;
  double bert = 0.0;
};

struct BackendHealth {
  std::string status;
  std::string model_info;  // JSON text as reported by the backend
};

// Source of the neural component scores. Implementations return exactly one
// response per request, in request order, and throw Error with
// kBackendUnavailable or kBackendMalformedResponse on failure.
class ScorerBackend {
 public:
  virtual ~ScorerBackend() = default;
  virtual std::vector<ScoreResponse> score(std::span<const ScoreRequest> pairs) = 0;
  virtual BackendHealth health() = 0;
  // "stub" or the base URL; recorded so results stay attributable.
  virtual std::string describe() const = 0;
};

// Deterministic stand-in used without a sidecar: nli and bert are both the
// token-level F1 overlap of hypothesis and reference.
class StubBackend final : public ScorerBackend {
 public:
  std::vector<ScoreResponse> score(std::span<const ScoreRequest> pairs) override;
  BackendHealth health() override;
  std::string describe() const override { return "stub"; }
};

// Multiset token F1 between two space-separated token strings.
double token_f1(const std::string& reference, const std::string& hypothesis);

struct RemoteBackendOptions {
  std::string base_url;  // e.g. "http://127.0.0.1:8090"
  std::size_t batch_size = 32;
  std::size_t max_in_flight = 4;
  std::chrono::milliseconds timeout{30000};
  int retries = 3;
  std::chrono::milliseconds retry_backoff{200};
};

// HTTP+JSON client for a scorer sidecar (POST /v1/score, GET /v1/health).
// Large requests are split into batches of `batch_size` and sent with at
// most `max_in_flight` concurrent requests. Failed batches are retried,
// which is safe because scoring is idempotent.
class RemoteBackend final : public ScorerBackend {
 public:
  explicit RemoteBackend(RemoteBackendOptions options);

  std::vector<ScoreResponse> score(std::span<const ScoreRequest> pairs) override;
  BackendHealth health() override;
  std::string describe() const override { return options_.base_url; }

 private:
  std::vector<ScoreResponse> score_batch(std::span<const ScoreRequest> batch);

  RemoteBackendOptions options_;
  std::string host_;
  std::string prefix_;
};

// "stub" or an http:// URL.
std::unique_ptr<ScorerBackend> make_backend(const std::string& target,
                                            RemoteBackendOptions options = {});

}  // namespace sapeval

#endif  // SAPEVAL_BACKEND_HPP_
