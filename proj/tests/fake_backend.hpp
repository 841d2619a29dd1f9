// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_TESTS_FAKE_BACKEND_HPP_
#define SAPEVAL_TESTS_FAKE_BACKEND_HPP_

#include <functional>
#include <mutex>
#include <vector>

#include "sapeval/backend.hpp"

namespace sapeval::testing {

// Backend whose scores come from a callback; records every request.
class FakeBackend final : public ScorerBackend {
 public:
  using Fn = std::function<ScoreResponse(const ScoreRequest&)>;
  explicit FakeBackend(Fn fn) : fn_(std::move(fn)) {}

  std::vector<ScoreResponse> score(std::span<const ScoreRequest> pairs) override {
    std::lock_guard lock(mutex_);
    ++calls_;
    std::vector<ScoreResponse> out;
    for (const auto& p : pairs) {
      requests_.push_back(p);
      out.push_back(fn_(p));
    }
    return out;
  }
  BackendHealth health() override { return {"ok", "{}"}; }
  std::string describe() const override { return "fake"; }

  std::size_t calls() const { return calls_; }
  const std::vector<ScoreRequest>& requests() const { return requests_; }

 private:
  Fn fn_;
  std::mutex mutex_;
  std::size_t calls_ = 0;
  std::vector<ScoreRequest> requests_;
};

}  // namespace sapeval::testing

#endif  // SAPEVAL_TESTS_FAKE_BACKEND_HPP_
