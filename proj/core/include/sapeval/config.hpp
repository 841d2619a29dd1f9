// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_CONFIG_HPP_
#define SAPEVAL_CONFIG_HPP_

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sapeval/backend.hpp"
#include "sapeval/normalize.hpp"
#include "sapeval/semantic.hpp"

namespace sapeval {

struct ServiceConfig {
  std::string listen_host = "127.0.0.1";
  int listen_port = 8080;
  std::filesystem::path data_dir = "sapeval-data";
  std::filesystem::path refs;
  std::filesystem::path splits;
  std::vector<std::string> teams;
  std::string admin_token;
  std::size_t rate_limit_per_day = 5;
  std::size_t workers = 2;
};

struct Config {
  std::string backend = "stub";  // "stub" or a sidecar URL
  // Fail at startup unless a remote backend reports healthy.
  bool strict_backend = false;
  RemoteBackendOptions remote;
  ScorerWeights weights;
  NormalizeOptions normalize;
  std::size_t jobs = 1;
  ServiceConfig service;
};

// Lookup used for environment overrides; returns nullopt when unset.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
EnvLookup process_env();

inline constexpr const char* kEnvPrefix = "SAPEVAL_";

// Defaults, then the JSON file at `path` (if non-empty), then SAPEVAL_*
// environment variables. Unknown keys in the file are rejected.
// Throws Error(kIo) or Error(kInvalidArgument).
Config load_config(const std::filesystem::path& path, const EnvLookup& env = process_env());

// Applies a JSON document on top of `config`.
void apply_config_json(Config& config, const std::string& json_text);

// Applies SAPEVAL_BACKEND, SAPEVAL_STRICT_BACKEND, SAPEVAL_WEIGHTS ("a,b,g"),
// SAPEVAL_JOBS, SAPEVAL_BATCH_SIZE, SAPEVAL_TIMEOUT_MS, SAPEVAL_LISTEN
// ("host:port"), SAPEVAL_DATA_DIR, SAPEVAL_REFS, SAPEVAL_SPLITS,
// SAPEVAL_TEAMS (comma separated), SAPEVAL_ADMIN_TOKEN, SAPEVAL_RATE_LIMIT,
// SAPEVAL_WORKERS.
void apply_env(Config& config, const EnvLookup& env);

// Builds the configured backend. In strict mode a remote backend must answer
// its health check with status "ok" or Error(kBackendUnavailable) is thrown.
std::unique_ptr<ScorerBackend> open_backend(const Config& config);

}  // namespace sapeval

#endif  // SAPEVAL_CONFIG_HPP_
