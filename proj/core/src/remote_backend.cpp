// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

#include "httplib.h"
#include "sapeval/backend.hpp"
#include "sapeval/error.hpp"
#include "sapeval/wire.hpp"

namespace sapeval {
namespace wire {

using nlohmann::json;

json encode_score_request(std::span<const ScoreRequest> pairs) {
  json list = json::array();
  for (const auto& p : pairs) {
    list.push_back({{"id", p.id}, {"reference", p.reference}, {"hypothesis", p.hypothesis}});
  }
  return {{"pairs", std::move(list)}};
}

std::vector<ScoreRequest> decode_score_request(const json& body) {
  if (!body.is_object() || !body.contains("pairs") || !body["pairs"].is_array()) {
    throw Error(ErrorCode::kMalformedFile, "request must be {\"pairs\": [...]}");
  }
  std::vector<ScoreRequest> out;
  for (const auto& p : body["pairs"]) {
    if (!p.is_object() || !p.contains("id") || !p["id"].is_string() ||
        !p.contains("reference") || !p["reference"].is_string() ||
        !p.contains("hypothesis") || !p["hypothesis"].is_string()) {
      throw Error(ErrorCode::kMalformedFile,
                  "each pair needs string id, reference and hypothesis");
    }
    out.push_back({p["id"].get<std::string>(), p["reference"].get<std::string>(),
                   p["hypothesis"].get<std::string>()});
  }
  return out;
}

json encode_score_response(std::span<const ScoreResponse> scores) {
  json list = json::array();
  for (const auto& s : scores) {
    list.push_back({{"id", s.id}, {"nli", s.nli}, {"bert", s.bert}});
  }
  return {{"scores", std::move(list)}};
}

std::vector<ScoreResponse> decode_score_response(
    const json& body, std::span<const ScoreRequest> request) {
  auto malformed = [](const std::string& why) {
    return Error(ErrorCode::kBackendMalformedResponse, "scorer response: " + why);
  };
  if (!body.is_object() || !body.contains("scores") || !body["scores"].is_array()) {
    throw malformed("missing \"scores\" array");
  }
  std::unordered_map<std::string, ScoreResponse> by_id;
  for (const auto& s : body["scores"]) {
    if (!s.is_object() || !s.contains("id") || !s["id"].is_string()) {
      throw malformed("entry without string id");
    }
    for (const char* key : {"nli", "bert"}) {
      if (!s.contains(key) || !s[key].is_number() ||
          !std::isfinite(s[key].get<double>())) {
        throw malformed(std::string("entry without finite \"") + key + "\"");
      }
    }
    ScoreResponse r{s["id"].get<std::string>(), s["nli"].get<double>(),
                    s["bert"].get<double>()};
    const std::string id = r.id;
    if (!by_id.emplace(id, std::move(r)).second) {
      throw malformed("duplicate id '" + id + "'");
    }
  }
  if (by_id.size() != request.size()) {
    throw malformed(std::to_string(by_id.size()) + " scores for " +
                    std::to_string(request.size()) + " pairs");
  }
  std::vector<ScoreResponse> out;
  out.reserve(request.size());
  for (const auto& q : request) {
    auto it = by_id.find(q.id);
    if (it == by_id.end()) throw malformed("no score for id '" + q.id + "'");
    out.push_back(it->second);
  }
  return out;
}

json encode_health(const BackendHealth& health) {
  json info = json::parse(health.model_info, nullptr, false);
  if (info.is_discarded()) info = health.model_info;
  return {{"status", health.status}, {"model_info", std::move(info)}};
}

BackendHealth decode_health(const json& body) {
  if (!body.is_object() || !body.contains("status") || !body["status"].is_string() ||
      !body.contains("model_info")) {
    throw Error(ErrorCode::kBackendMalformedResponse,
                "health response needs status and model_info");
  }
  return {body["status"].get<std::string>(), body["model_info"].dump()};
}

}  // namespace wire

namespace {

bool transient_status(int status) {
  return status == 429 || status >= 500;
}

}  // namespace

RemoteBackend::RemoteBackend(RemoteBackendOptions options)
    : options_(std::move(options)) {
  const std::string scheme = "http://";
  if (options_.base_url.rfind(scheme, 0) != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "scorer URL must start with http://: " + options_.base_url);
  }
  const auto slash = options_.base_url.find('/', scheme.size());
  host_ = options_.base_url.substr(0, slash);
  if (slash != std::string::npos) {
    prefix_ = options_.base_url.substr(slash);
    while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
  }
  options_.batch_size = std::max<std::size_t>(1, options_.batch_size);
  options_.max_in_flight = std::max<std::size_t>(1, options_.max_in_flight);
}

std::vector<ScoreResponse> RemoteBackend::score_batch(
    std::span<const ScoreRequest> batch) {
  httplib::Client client(host_);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  client.set_write_timeout(options_.timeout);
  const std::string body = wire::encode_score_request(batch).dump();

  std::string last_failure;
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(options_.retry_backoff * attempt);
    auto res = client.Post(prefix_ + "/v1/score", body, "application/json");
    if (!res) {
      last_failure = "connection failed: " + httplib::to_string(res.error());
      continue;
    }
    if (transient_status(res->status)) {
      last_failure = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw Error(ErrorCode::kBackendMalformedResponse,
                  "scorer rejected request with HTTP " + std::to_string(res->status) +
                      ": " + res->body);
    }
    auto parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (parsed.is_discarded()) {
      throw Error(ErrorCode::kBackendMalformedResponse, "scorer response is not JSON");
    }
    return wire::decode_score_response(parsed, batch);
  }
  throw Error(ErrorCode::kBackendUnavailable,
              "scorer at " + options_.base_url + " unavailable after " +
                  std::to_string(options_.retries + 1) + " attempts (" +
                  last_failure + ")");
}

std::vector<ScoreResponse> RemoteBackend::score(std::span<const ScoreRequest> pairs) {
  const std::size_t batches = (pairs.size() + options_.batch_size - 1) / options_.batch_size;
  std::vector<std::vector<ScoreResponse>> results(batches);
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= batches) return;
      {
        std::lock_guard lock(failure_mutex);
        if (failure) return;
      }
      const std::size_t begin = b * options_.batch_size;
      const std::size_t count = std::min(options_.batch_size, pairs.size() - begin);
      try {
        results[b] = score_batch(pairs.subspan(begin, count));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t threads = std::min(options_.max_in_flight, batches);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ScoreResponse> out;
  out.reserve(pairs.size());
  for (auto& r : results) {
    std::move(r.begin(), r.end(), std::back_inserter(out));
  }
  return out;
}

BackendHealth RemoteBackend::health() {
  httplib::Client client(host_);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  auto res = client.Get(prefix_ + "/v1/health");
  if (!res) {
    throw Error(ErrorCode::kBackendUnavailable,
                "scorer health check failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::kBackendUnavailable,
                "scorer health returned HTTP " + std::to_string(res->status));
  }
  auto parsed = nlohmann::json::parse(res->body, nullptr, false);
  if (parsed.is_discarded()) {
    throw Error(ErrorCode::kBackendMalformedResponse, "health response is not JSON");
  }
  return wire::decode_health(parsed);
}

}  // namespace sapeval
