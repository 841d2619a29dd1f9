// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "sapeval/http_server.hpp"

#include <string_view>

#include "httplib.h"
#include "json.hpp"

namespace sapeval {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

constexpr const char* kJson = "application/json";

std::string bearer_token(const httplib::Request& req) {
  const std::string header = req.get_header_value("Authorization");
  constexpr std::string_view kPrefix = "Bearer ";
  if (header.size() < kPrefix.size() || header.compare(0, kPrefix.size(), kPrefix) != 0) {
    return {};
  }
  return header.substr(kPrefix.size());
}

OrderedJson half_to_json(const std::optional<HalfScore>& h) {
  if (!h) return nullptr;
  return {{"wer", h->wer},
          {"semscore", h->semscore},
          {"utterances", h->utterances},
          {"total_n_star", h->total_n_star}};
}

OrderedJson board_to_json(std::string_view name, bool concluded,
                          const std::vector<LeaderboardEntry>& board) {
  OrderedJson entries = OrderedJson::array();
  for (const auto& e : board) {
    entries.push_back({{"rank", e.rank},
                       {"team_id", e.team_id},
                       {"best_wer", e.best_wer},
                       {"best_wer_submission_id", e.best_wer_submission_id},
                       {"best_semscore", e.best_semscore},
                       {"best_semscore_submission_id", e.best_semscore_submission_id},
                       {"scored_submissions", e.scored_submissions}});
  }
  return {{"leaderboard", name}, {"concluded", concluded}, {"entries", std::move(entries)}};
}

// Pulls the team id and the hypothesis file out of a submission request.
std::pair<std::string, std::string> parse_submission(const httplib::Request& req) {
  std::string team = req.get_header_value("X-Team-Id");
  std::string file;
  if (req.is_multipart_form_data()) {
    if (req.has_file("team_id")) team = req.get_file_value("team_id").content;
    if (!req.has_file("hypothesis_file")) {
      throw Error(ErrorCode::kMalformedFile, "multipart body lacks a hypothesis_file part");
    }
    file = req.get_file_value("hypothesis_file").content;
  } else {
    const Json body = Json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
      throw Error(ErrorCode::kMalformedFile, "request body is not a JSON object");
    }
    if (body.contains("team_id")) {
      if (!body["team_id"].is_string()) {
        throw Error(ErrorCode::kMalformedFile, "team_id must be a string");
      }
      team = body["team_id"].get<std::string>();
    }
    if (body.contains("hypothesis_file") && body["hypothesis_file"].is_string()) {
      file = body["hypothesis_file"].get<std::string>();
    } else if (body.contains("hypotheses") && body["hypotheses"].is_array()) {
      for (const auto& line : body["hypotheses"]) {
        file += line.dump();
        file += '\n';
      }
    } else {
      throw Error(ErrorCode::kMalformedFile,
                  "body needs a hypotheses array or a hypothesis_file string");
    }
  }
  if (team.empty()) throw Error(ErrorCode::kUnknownTeam, "no team_id given");
  return {team, file};
}

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedFile:
    case ErrorCode::kInvalidArgument:
      return 400;
    case ErrorCode::kUnauthorized:
      return 401;
    case ErrorCode::kUnknownTeam:
      return 403;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kAlreadyConcluded:
    case ErrorCode::kChallengeClosed:
      return 409;
    case ErrorCode::kMissingUtterances:
    case ErrorCode::kDuplicateUtterances:
    case ErrorCode::kIdMismatch:
      return 422;
    case ErrorCode::kRateLimited:
      return 429;
    case ErrorCode::kBackendUnavailable:
      return 503;
    default:
      return 500;
  }
}

std::string error_body(const Error& e) {
  OrderedJson body = {{"error", error_name(e.code())}, {"message", e.what()}};
  if (!e.ids().empty()) body["ids"] = e.ids();
  if (e.has_position()) body["line"] = e.position();
  return body.dump();
}

struct HttpServer::Impl {
  explicit Impl(Challenge& c) : challenge(c) {}

  Challenge& challenge;
  httplib::Server server;
  bool bound = false;
};

HttpServer::HttpServer(Challenge& challenge) : impl_(std::make_unique<Impl>(challenge)) {
  auto& srv = impl_->server;
  Challenge& ch = challenge;

  // httplib's defaults add SO_REUSEPORT, which would let a second server
  // share a port that is already in use.
  srv.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
  });

  srv.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                               std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const Error& e) {
      res.status = http_status(e.code());
      res.set_content(error_body(e), kJson);
    } catch (const std::exception& e) {
      res.status = 500;
      res.set_content(OrderedJson({{"error", "Internal"}, {"message", e.what()}}).dump(), kJson);
    }
  });

  srv.Post("/v1/submissions", [&ch](const httplib::Request& req, httplib::Response& res) {
    auto [team, file] = parse_submission(req);
    const std::string id = ch.submit(team, file);
    res.status = 202;
    res.set_content(OrderedJson({{"submission_id", id}, {"status", "queued"}}).dump(), kJson);
  });

  srv.Get(R"(/v1/submissions/([A-Za-z0-9_-]+))",
          [&ch](const httplib::Request& req, httplib::Response& res) {
            const std::string id = req.matches[1];
            const auto record = ch.find(id);
            if (!record) throw Error(ErrorCode::kNotFound, "no submission " + id);
            OrderedJson body = {{"submission_id", record->submission_id},
                                {"team_id", record->team_id},
                                {"created_at_ms", record->created_at_ms},
                                {"status", status_name(record->status)},
                                {"content_hash", record->content_hash}};
            if (record->status == SubmissionStatus::kFailed) {
              body["failure_reason"] = record->failure_reason;
            }
            body["test1"] = half_to_json(record->test1);
            if (ch.concluded() || ch.is_admin(bearer_token(req))) {
              body["test2"] = half_to_json(record->test2);
            }
            res.set_content(body.dump(), kJson);
          });

  srv.Get("/v1/leaderboard/public", [&ch](const httplib::Request&, httplib::Response& res) {
    res.set_content(board_to_json("public", ch.concluded(), ch.public_leaderboard()).dump(), kJson);
  });

  srv.Get("/v1/leaderboard/private", [&ch](const httplib::Request& req, httplib::Response& res) {
    const auto board = ch.private_leaderboard(bearer_token(req));
    res.set_content(board_to_json("private", ch.concluded(), board).dump(), kJson);
  });

  srv.Post("/v1/admin/conclude", [&ch](const httplib::Request& req, httplib::Response& res) {
    ch.conclude(bearer_token(req));
    res.set_content(OrderedJson({{"concluded", true}}).dump(), kJson);
  });

  srv.Get("/v1/health", [&ch](const httplib::Request&, httplib::Response& res) {
    OrderedJson body = {{"status", "ok"},
                        {"backend", ch.backend_name()},
                        {"concluded", ch.concluded()},
                        {"test_utterances", ch.test_utterances()}};
    res.set_content(body.dump(), kJson);
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound_port = port;
  if (port == 0) {
    bound_port = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound_port = -1;
  }
  if (bound_port <= 0) {
    throw Error(ErrorCode::kIo, "cannot listen on " + host + ":" + std::to_string(port));
  }
  impl_->bound = true;
  return bound_port;
}

void HttpServer::serve() {
  if (!impl_->bound) throw Error(ErrorCode::kInvalidArgument, "serve() before bind()");
  impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace sapeval
