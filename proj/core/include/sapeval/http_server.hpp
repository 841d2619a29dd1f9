// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_HTTP_SERVER_HPP_
#define SAPEVAL_HTTP_SERVER_HPP_

#include <memory>
#include <string>

#include "sapeval/error.hpp"
#include "sapeval/service.hpp"

namespace sapeval {

// HTTP status used for an Error raised while handling a request.
int http_status(ErrorCode code);

// JSON error body: {"error": <name>, "message": ..., "ids"?: [...], "line"?: n}.
std::string error_body(const Error& e);

// JSON front end for a Challenge.
//
//   POST /v1/submissions        JSON {team_id, hypotheses | hypothesis_file}
//                               or multipart (team_id, hypothesis_file)
//   GET  /v1/submissions/{id}
//   GET  /v1/leaderboard/public
//   GET  /v1/leaderboard/private   Authorization: Bearer <admin token>
//   POST /v1/admin/conclude        Authorization: Bearer <admin token>
//   GET  /v1/health
class HttpServer {
 public:
  explicit HttpServer(Challenge& challenge);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds the listening socket; port 0 picks a free port. Returns the bound
  // port. Throws Error(kIo) if the address is unavailable.
  int bind(const std::string& host, int port);
  // Serves until stop(). bind() must have succeeded.
  void serve();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sapeval

#endif  // SAPEVAL_HTTP_SERVER_HPP_
