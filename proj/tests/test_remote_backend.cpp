// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <thread>

#include "fake_sidecar.hpp"
#include "json.hpp"
#include "sapeval/backend.hpp"
#include "sapeval/error.hpp"
#include "sapeval/semantic.hpp"
#include "sapeval/wire.hpp"

namespace sapeval {
namespace {

using Json = nlohmann::json;
using testing::FakeSidecar;

std::vector<ScoreRequest> requests(std::size_t n) {
  std::vector<ScoreRequest> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({"p" + std::to_string(i), "A B C", i % 2 ? "A B C" : "A X"});
  }
  return out;
}

// Scores like the stub, but answers in reverse order.
void reversed_stub(const httplib::Request& req, httplib::Response& res) {
  auto pairs = wire::decode_score_request(Json::parse(req.body));
  StubBackend stub;
  auto scores = stub.score(pairs);
  std::reverse(scores.begin(), scores.end());
  res.set_content(wire::encode_score_response(scores).dump(), "application/json");
}

RemoteBackendOptions fast(const std::string& url) {
  RemoteBackendOptions o;
  o.base_url = url;
  o.timeout = std::chrono::milliseconds(2000);
  o.retry_backoff = std::chrono::milliseconds(5);
  return o;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

TEST(Wire, RequestShape) {
  const auto reqs = requests(2);
  const Json j = wire::encode_score_request(reqs);
  EXPECT_EQ(j, Json::parse(R"({"pairs":[{"id":"p0","reference":"A B C","hypothesis":"A X"},)"
                           R"({"id":"p1","reference":"A B C","hypothesis":"A B C"}]})"));
  const auto back = wire::decode_score_request(j);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].hypothesis, "A B C");
  EXPECT_THROW(wire::decode_score_request(Json::parse(R"({"pairs":[{"id":"x"}]})")), Error);
  EXPECT_THROW(wire::decode_score_request(Json::parse(R"({"items":[]})")), Error);
}

TEST(Wire, ResponseValidation) {
  const auto reqs = requests(2);
  auto decode = [&](const char* body) { return wire::decode_score_response(Json::parse(body), reqs); };
  const auto ok = decode(R"({"scores":[{"id":"p1","nli":0.5,"bert":0.25},{"id":"p0","nli":1,"bert":0}]})");
  EXPECT_EQ(ok[0].id, "p0");
  EXPECT_EQ(ok[1].bert, 0.25);
  for (const char* bad : {
           R"({"scores":[{"id":"p0","nli":1,"bert":0}]})",
           R"({"scores":[{"id":"p0","nli":1,"bert":0},{"id":"p0","nli":1,"bert":0}]})",
           R"({"scores":[{"id":"p0","nli":1,"bert":0},{"id":"zz","nli":1,"bert":0}]})",
           R"({"scores":[{"id":"p0","nli":"high","bert":0},{"id":"p1","nli":1,"bert":0}]})",
           R"({"scores":[{"id":"p0","nli":1},{"id":"p1","nli":1,"bert":0}]})",
           R"({"result":[]})",
       }) {
    EXPECT_EQ(code_of([&] { decode(bad); }), ErrorCode::kBackendMalformedResponse) << bad;
  }
}

TEST(Wire, Health) {
  const auto h = wire::decode_health(Json::parse(R"({"status":"ok","model_info":{"nli_model_id":"m"}})"));
  EXPECT_EQ(h.status, "ok");
  EXPECT_EQ(Json::parse(h.model_info)["nli_model_id"], "m");
  EXPECT_EQ(wire::encode_health(h)["model_info"]["nli_model_id"], "m");
  EXPECT_THROW(wire::decode_health(Json::parse(R"({"model_info":{}})")), Error);
}

TEST(RemoteBackend, ResultsFollowRequestOrderAcrossBatches) {
  FakeSidecar sidecar(reversed_stub);
  auto o = fast(sidecar.url());
  o.batch_size = 7;
  o.max_in_flight = 3;
  RemoteBackend remote(o);
  StubBackend stub;
  const auto reqs = requests(50);
  const auto got = remote.score(reqs);
  const auto want = stub.score(reqs);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].id, want[i].id);
    EXPECT_EQ(got[i].nli, want[i].nli);
  }
  EXPECT_EQ(sidecar.requests(), 8);
  EXPECT_LE(sidecar.max_in_flight(), 3);
}

TEST(RemoteBackend, RetriesTransientFailures) {
  std::atomic<int> calls{0};
  FakeSidecar sidecar([&](const httplib::Request& req, httplib::Response& res) {
    if (calls++ < 2) {
      res.status = 503;
      res.set_content("loading", "text/plain");
      return;
    }
    reversed_stub(req, res);
  });
  RemoteBackend remote(fast(sidecar.url()));
  const auto got = remote.score(requests(3));
  EXPECT_EQ(got.size(), 3u);
  EXPECT_EQ(calls.load(), 3);
}

TEST(RemoteBackend, GivesUpAsUnavailable) {
  FakeSidecar sidecar([](const httplib::Request&, httplib::Response& res) { res.status = 503; });
  auto o = fast(sidecar.url());
  o.retries = 2;
  RemoteBackend remote(o);
  try {
    remote.score(requests(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBackendUnavailable);
    EXPECT_TRUE(e.retryable());
  }
  EXPECT_EQ(sidecar.requests(), 3);
}

TEST(RemoteBackend, MalformedAndRejectedResponses) {
  FakeSidecar garbage([](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"scores":[{"id":"nope","nli":1,"bert":1}]})", "application/json");
  });
  EXPECT_EQ(code_of([&] { RemoteBackend(fast(garbage.url())).score(requests(1)); }),
            ErrorCode::kBackendMalformedResponse);
  FakeSidecar not_json([](const httplib::Request&, httplib::Response& res) {
    res.set_content("<html>", "text/html");
  });
  EXPECT_EQ(code_of([&] { RemoteBackend(fast(not_json.url())).score(requests(1)); }),
            ErrorCode::kBackendMalformedResponse);
  FakeSidecar rejects([](const httplib::Request&, httplib::Response& res) { res.status = 400; });
  EXPECT_EQ(code_of([&] { RemoteBackend(fast(rejects.url())).score(requests(1)); }),
            ErrorCode::kBackendMalformedResponse);
  EXPECT_EQ(rejects.requests(), 1);
}

TEST(RemoteBackend, TimeoutCountsAsUnavailable) {
  FakeSidecar slow([](const httplib::Request& req, httplib::Response& res) {
    std::this_thread::sleep_for(std::chrono::milliseconds(600));
    reversed_stub(req, res);
  });
  auto o = fast(slow.url());
  o.timeout = std::chrono::milliseconds(150);
  o.retries = 0;
  EXPECT_EQ(code_of([&] { RemoteBackend(o).score(requests(1)); }), ErrorCode::kBackendUnavailable);
}

TEST(RemoteBackend, NobodyListening) {
  auto o = fast("http://127.0.0.1:1");
  o.retries = 1;
  EXPECT_EQ(code_of([&] { RemoteBackend(o).score(requests(1)); }), ErrorCode::kBackendUnavailable);
  EXPECT_EQ(code_of([&] { RemoteBackend(o).health(); }), ErrorCode::kBackendUnavailable);
}

TEST(RemoteBackend, HealthReportsModelInfo) {
  FakeSidecar sidecar(reversed_stub);
  RemoteBackend remote(fast(sidecar.url() + "/"));
  const auto h = remote.health();
  EXPECT_EQ(h.status, "ok");
  EXPECT_EQ(Json::parse(h.model_info)["embed_model_id"], "fake-embed");
}

TEST(RemoteBackend, DrivesTheSemanticScorer) {
  FakeSidecar sidecar(reversed_stub);
  RemoteBackend remote(fast(sidecar.url()));
  StubBackend stub;
  SemanticScorer via_remote(remote), local(stub);
  const ReferencePair refs{{"UM", "HOW", "ARE", "YOU"}, {"HOW", "ARE", "YOU"}};
  const Tokens hyp = {"HOW", "OUR", "YOU"};
  EXPECT_EQ(via_remote.score(refs, hyp).semscore, local.score(refs, hyp).semscore);
}

}  // namespace
}  // namespace sapeval
