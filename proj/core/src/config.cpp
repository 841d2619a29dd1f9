// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "sapeval/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sapeval/error.hpp"
#include "sapeval/text.hpp"

namespace sapeval {
namespace {

using Json = nlohmann::json;

void reject_unknown(const Json& obj, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) {
      throw Error(ErrorCode::kInvalidArgument, "unknown config key " + where + key);
    }
  }
}

template <typename T>
T parse_number(const std::string& name, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kInvalidArgument, name + ": not a number: '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& name, const std::string& value) {
  const std::string v = to_lower_ascii(value);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off" || v.empty()) return false;
  throw Error(ErrorCode::kInvalidArgument, name + ": not a boolean: '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first != std::string::npos) out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

void check_weights(const ScorerWeights& w) {
  for (double v : {w.alpha, w.beta, w.gamma}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "weights must be finite");
  }
}

}  // namespace

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  };
}

void apply_config_json(Config& config, const std::string& json_text) {
  const Json j = Json::parse(json_text, nullptr, false, /*ignore_comments=*/true);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "config is not a JSON object");
  }
  reject_unknown(j, {"backend", "strict_backend", "remote", "weights", "normalize", "jobs", "service"},
                 "");
  try {
    if (j.contains("backend")) config.backend = j["backend"].get<std::string>();
    if (j.contains("strict_backend")) config.strict_backend = j["strict_backend"].get<bool>();
    if (j.contains("jobs")) config.jobs = j["jobs"].get<std::size_t>();
    if (j.contains("remote")) {
      const Json& r = j["remote"];
      reject_unknown(r, {"batch_size", "max_in_flight", "timeout_ms", "retries", "retry_backoff_ms"},
                     "remote.");
      auto& o = config.remote;
      if (r.contains("batch_size")) o.batch_size = r["batch_size"].get<std::size_t>();
      if (r.contains("max_in_flight")) o.max_in_flight = r["max_in_flight"].get<std::size_t>();
      if (r.contains("timeout_ms")) o.timeout = std::chrono::milliseconds(r["timeout_ms"].get<long>());
      if (r.contains("retries")) o.retries = r["retries"].get<int>();
      if (r.contains("retry_backoff_ms")) {
        o.retry_backoff = std::chrono::milliseconds(r["retry_backoff_ms"].get<long>());
      }
    }
    if (j.contains("weights")) {
      const Json& w = j["weights"];
      reject_unknown(w, {"alpha", "beta", "gamma"}, "weights.");
      if (w.contains("alpha")) config.weights.alpha = w["alpha"].get<double>();
      if (w.contains("beta")) config.weights.beta = w["beta"].get<double>();
      if (w.contains("gamma")) config.weights.gamma = w["gamma"].get<double>();
    }
    if (j.contains("normalize")) {
      const Json& n = j["normalize"];
      reject_unknown(n, {"verbalize", "unknown_symbols"}, "normalize.");
      if (n.contains("verbalize")) config.normalize.verbalize = n["verbalize"].get<bool>();
      if (n.contains("unknown_symbols")) {
        config.normalize.unknown_symbols = n["unknown_symbols"].get<std::vector<std::string>>();
      }
    }
    if (j.contains("service")) {
      const Json& s = j["service"];
      reject_unknown(s,
                     {"listen_host", "listen_port", "data_dir", "refs", "splits", "teams",
                      "admin_token", "rate_limit_per_day", "workers"},
                     "service.");
      auto& sv = config.service;
      if (s.contains("listen_host")) sv.listen_host = s["listen_host"].get<std::string>();
      if (s.contains("listen_port")) sv.listen_port = s["listen_port"].get<int>();
      if (s.contains("data_dir")) sv.data_dir = s["data_dir"].get<std::string>();
      if (s.contains("refs")) sv.refs = s["refs"].get<std::string>();
      if (s.contains("splits")) sv.splits = s["splits"].get<std::string>();
      if (s.contains("teams")) sv.teams = s["teams"].get<std::vector<std::string>>();
      if (s.contains("admin_token")) sv.admin_token = s["admin_token"].get<std::string>();
      if (s.contains("rate_limit_per_day")) {
        sv.rate_limit_per_day = s["rate_limit_per_day"].get<std::size_t>();
      }
      if (s.contains("workers")) sv.workers = s["workers"].get<std::size_t>();
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("config: ") + e.what());
  }
  check_weights(config.weights);
}

void apply_env(Config& config, const EnvLookup& env) {
  auto get = [&](const char* suffix) { return env(std::string(kEnvPrefix) + suffix); };
  auto name = [](const char* suffix) { return std::string(kEnvPrefix) + suffix; };

  if (auto v = get("BACKEND")) config.backend = *v;
  if (auto v = get("STRICT_BACKEND")) config.strict_backend = parse_bool(name("STRICT_BACKEND"), *v);
  if (auto v = get("JOBS")) config.jobs = parse_number<std::size_t>(name("JOBS"), *v);
  if (auto v = get("BATCH_SIZE")) {
    config.remote.batch_size = parse_number<std::size_t>(name("BATCH_SIZE"), *v);
  }
  if (auto v = get("TIMEOUT_MS")) {
    config.remote.timeout = std::chrono::milliseconds(parse_number<long>(name("TIMEOUT_MS"), *v));
  }
  if (auto v = get("WEIGHTS")) {
    const auto parts = split_list(*v);
    if (parts.size() != 3) {
      throw Error(ErrorCode::kInvalidArgument, name("WEIGHTS") + " needs three comma separated values");
    }
    double w[3];
    for (int i = 0; i < 3; ++i) {
      try {
        std::size_t used = 0;
        w[i] = std::stod(parts[i], &used);
        if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
      } catch (const std::exception&) {
        throw Error(ErrorCode::kInvalidArgument, name("WEIGHTS") + ": not a number: '" + parts[i] + "'");
      }
    }
    config.weights = {w[0], w[1], w[2]};
    check_weights(config.weights);
  }
  if (auto v = get("LISTEN")) {
    const auto colon = v->rfind(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, name("LISTEN") + " must be host:port");
    }
    config.service.listen_host = v->substr(0, colon);
    config.service.listen_port = parse_number<int>(name("LISTEN"), v->substr(colon + 1));
  }
  if (auto v = get("DATA_DIR")) config.service.data_dir = *v;
  if (auto v = get("REFS")) config.service.refs = *v;
  if (auto v = get("SPLITS")) config.service.splits = *v;
  if (auto v = get("TEAMS")) config.service.teams = split_list(*v);
  if (auto v = get("ADMIN_TOKEN")) config.service.admin_token = *v;
  if (auto v = get("RATE_LIMIT")) {
    config.service.rate_limit_per_day = parse_number<std::size_t>(name("RATE_LIMIT"), *v);
  }
  if (auto v = get("WORKERS")) config.service.workers = parse_number<std::size_t>(name("WORKERS"), *v);
}

Config load_config(const std::filesystem::path& path, const EnvLookup& env) {
  Config config;
  if (!path.empty()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot read config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    apply_config_json(config, ss.str());
  }
  if (env) apply_env(config, env);
  return config;
}

std::unique_ptr<ScorerBackend> open_backend(const Config& config) {
  auto backend = make_backend(config.backend, config.remote);
  if (config.strict_backend && config.backend != "stub") {
    const BackendHealth health = backend->health();
    if (health.status != "ok") {
      throw Error(ErrorCode::kBackendUnavailable,
                  "scorer at " + config.backend + " reports status '" + health.status + "'");
    }
  }
  return backend;
}

}  // namespace sapeval
