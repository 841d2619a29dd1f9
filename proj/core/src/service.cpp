// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "sapeval/service.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sapeval/error.hpp"
#include "sapeval/io.hpp"

namespace sapeval {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr std::int64_t kDayMs = 24LL * 60 * 60 * 1000;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIo, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

void write_file_atomically(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot rename " + tmp.string() + ": " + ec.message());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

OrderedJson half_json(const std::optional<HalfScore>& h) {
  if (!h) return nullptr;
  return {{"wer", h->wer},
          {"semscore", h->semscore},
          {"utterances", h->utterances},
          {"total_n_star", h->total_n_star}};
}

std::optional<HalfScore> half_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return HalfScore{j.at("wer").get<double>(), j.at("semscore").get<double>(),
                   j.at("utterances").get<std::size_t>(),
                   j.at("total_n_star").get<std::size_t>()};
}

std::string submission_id_for(std::uint64_t sequence) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "sub-%06llu", static_cast<unsigned long long>(sequence));
  return buf;
}

bool constant_time_equal(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  unsigned char diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff |= static_cast<unsigned char>(a[i] ^ b[i]);
  }
  return diff == 0;
}

}  // namespace

std::string_view status_name(SubmissionStatus s) {
  switch (s) {
    case SubmissionStatus::kQueued: return "queued";
    case SubmissionStatus::kScoring: return "scoring";
    case SubmissionStatus::kDone: return "done";
    case SubmissionStatus::kFailed: return "failed";
  }
  return "queued";
}

TestSets select_test_sets(std::span<const ReferenceEntry> refs, const SplitMap& splits) {
  TestSets out;
  for (const auto& r : refs) {
    auto it = splits.find(r.utterance_id);
    if (it == splits.end() || !it->second.unshared) continue;
    if (it->second.split == Split::kTest1) out.test1.push_back(r);
    if (it->second.split == Split::kTest2) out.test2.push_back(r);
  }
  auto by_id = [](const ReferenceEntry& a, const ReferenceEntry& b) {
    return a.utterance_id < b.utterance_id;
  };
  std::sort(out.test1.begin(), out.test1.end(), by_id);
  std::sort(out.test2.begin(), out.test2.end(), by_id);
  return out;
}

std::vector<LeaderboardEntry> rank_teams(const std::vector<SubmissionRecord>& submissions,
                                         Split half) {
  std::map<std::string, LeaderboardEntry> best;
  // Earliest first, so strict comparisons keep the earliest among equals.
  std::vector<const SubmissionRecord*> ordered;
  for (const auto& s : submissions) {
    if (s.status == SubmissionStatus::kDone) ordered.push_back(&s);
  }
  std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    return std::tie(a->created_at_ms, a->sequence) < std::tie(b->created_at_ms, b->sequence);
  });
  for (const auto* s : ordered) {
    const auto& score = half == Split::kTest1 ? s->test1 : s->test2;
    if (!score) continue;
    auto [it, inserted] = best.try_emplace(s->team_id);
    LeaderboardEntry& e = it->second;
    if (inserted) {
      e.team_id = s->team_id;
      e.best_wer = score->wer;
      e.best_wer_submission_id = s->submission_id;
      e.best_wer_created_at_ms = s->created_at_ms;
      e.best_semscore = score->semscore;
      e.best_semscore_submission_id = s->submission_id;
    } else {
      if (score->wer < e.best_wer) {
        e.best_wer = score->wer;
        e.best_wer_submission_id = s->submission_id;
        e.best_wer_created_at_ms = s->created_at_ms;
      }
      if (score->semscore > e.best_semscore) {
        e.best_semscore = score->semscore;
        e.best_semscore_submission_id = s->submission_id;
      }
    }
    ++e.scored_submissions;
  }
  std::vector<LeaderboardEntry> board;
  for (auto& [team, e] : best) board.push_back(std::move(e));
  std::sort(board.begin(), board.end(), [](const LeaderboardEntry& a, const LeaderboardEntry& b) {
    if (a.best_wer != b.best_wer) return a.best_wer < b.best_wer;
    if (a.best_semscore != b.best_semscore) return a.best_semscore > b.best_semscore;
    if (a.best_wer_created_at_ms != b.best_wer_created_at_ms) {
      return a.best_wer_created_at_ms < b.best_wer_created_at_ms;
    }
    return a.team_id < b.team_id;
  });
  for (std::size_t i = 0; i < board.size(); ++i) board[i].rank = i + 1;
  return board;
}

Challenge::Challenge(ChallengeOptions options, TestSets tests,
                     std::unique_ptr<ScorerBackend> backend)
    : options_(std::move(options)),
      tests_(std::move(tests)),
      backend_(std::move(backend)) {
  if (!backend_) backend_ = std::make_unique<StubBackend>();
  backend_name_ = backend_->describe();
  scorer_ = std::make_unique<SemanticScorer>(*backend_, options_.weights);
  if (!options_.clock) {
    options_.clock = [] {
      return std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::system_clock::now().time_since_epoch())
          .count();
    };
  }
  std::error_code ec;
  for (const char* sub : {"blobs", "scores"}) {
    fs::create_directories(options_.data_dir / sub, ec);
    if (ec) {
      throw Error(ErrorCode::kIo, "cannot create " + (options_.data_dir / sub).string() +
                                      ": " + ec.message());
    }
  }
  snapshot_ = std::make_shared<State>();
  replay();

  const std::size_t workers = std::max<std::size_t>(1, options_.workers);
  for (std::size_t i = 0; i < workers; ++i) workers_.emplace_back([this] { worker_loop(); });
}

Challenge::~Challenge() {
  {
    std::lock_guard lock(queue_mutex_);
    stopping_ = true;
  }
  queue_cv_.notify_all();
  for (auto& t : workers_) t.join();
}

std::int64_t Challenge::now() const { return options_.clock(); }

std::shared_ptr<const Challenge::State> Challenge::snapshot() const {
  return std::atomic_load(&snapshot_);
}

void Challenge::publish(std::shared_ptr<State> next) {
  std::vector<SubmissionRecord> all;
  for (const auto& [id, s] : next->submissions) all.push_back(s);
  next->public_board = rank_teams(all, Split::kTest1);
  next->private_board = rank_teams(all, Split::kTest2);
  std::atomic_store(&snapshot_, std::shared_ptr<const State>(std::move(next)));
}

void Challenge::append_event(const std::string& line) {
  std::ofstream out(options_.data_dir / "events.jsonl", std::ios::app | std::ios::binary);
  out << line << '\n';
  if (!out.flush()) throw Error(ErrorCode::kIo, "cannot append to event log");
}

void Challenge::apply_event(State& state, const std::string& line, std::size_t line_number) {
  const Json e = Json::parse(line, nullptr, false);
  if (e.is_discarded() || !e.is_object() || !e.contains("type")) {
    throw Error(ErrorCode::kMalformedFile,
                "event log line " + std::to_string(line_number) + " is corrupt", line_number);
  }
  const std::string type = e["type"].get<std::string>();
  if (type == "init") {
    const std::string backend = e.value("backend", "");
    const ScorerWeights weights = io::weights_from_json(e.at("weights"));
    if (backend != backend_name_) {
      throw Error(ErrorCode::kInvalidArgument,
                  "challenge was created with scorer backend '" + backend +
                      "', refusing to continue with '" + backend_name_ + "'");
    }
    if (!(weights == options_.weights)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "challenge was created with different SemScore weights");
    }
  } else if (type == "submitted") {
    SubmissionRecord r;
    r.submission_id = e.at("submission_id").get<std::string>();
    r.team_id = e.at("team_id").get<std::string>();
    r.created_at_ms = e.at("created_at_ms").get<std::int64_t>();
    r.sequence = e.at("sequence").get<std::uint64_t>();
    r.content_hash = e.at("content_hash").get<std::string>();
    state.submissions[r.submission_id] = r;
  } else if (type == "scored" || type == "failed") {
    auto it = state.submissions.find(e.at("submission_id").get<std::string>());
    if (it == state.submissions.end()) return;
    SubmissionRecord& r = it->second;
    if (r.status == SubmissionStatus::kDone || r.status == SubmissionStatus::kFailed) return;
    if (type == "scored") {
      r.status = SubmissionStatus::kDone;
      r.test1 = half_from_json(e.at("test1"));
      r.test2 = half_from_json(e.at("test2"));
    } else {
      r.status = SubmissionStatus::kFailed;
      r.failure_reason = e.value("reason", "");
    }
  } else if (type == "concluded") {
    state.concluded = true;
  }
}

void Challenge::replay() {
  const fs::path log = options_.data_dir / "events.jsonl";
  auto state = std::make_shared<State>();
  if (!fs::exists(log)) {
    OrderedJson init = {{"type", "init"},
                        {"time_ms", now()},
                        {"backend", backend_name_},
                        {"weights", io::weights_to_json(options_.weights)}};
    append_event(init.dump());
  } else {
    std::ifstream in(log, std::ios::binary);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      if (line.empty()) continue;
      try {
        apply_event(*state, line, n);
      } catch (const Json::exception& ex) {
        throw Error(ErrorCode::kMalformedFile,
                    "event log line " + std::to_string(n) + ": " + ex.what(), n);
      }
    }
  }
  std::vector<std::string> pending;
  for (auto& [id, r] : state->submissions) {
    if (r.status == SubmissionStatus::kQueued || r.status == SubmissionStatus::kScoring) {
      r.status = SubmissionStatus::kQueued;
      pending.push_back(id);
    }
  }
  publish(state);
  std::sort(pending.begin(), pending.end());
  for (const auto& id : pending) enqueue(id);
}

std::string Challenge::submit(const std::string& team_id, const std::string& hypothesis_jsonl) {
  if (concluded()) {
    throw Error(ErrorCode::kChallengeClosed, "the challenge has concluded");
  }
  if (std::find(options_.teams.begin(), options_.teams.end(), team_id) == options_.teams.end()) {
    throw Error(ErrorCode::kUnknownTeam, "team '" + team_id + "' is not registered");
  }
  std::istringstream in(hypothesis_jsonl);
  const auto hyps = io::read_hypotheses(in);
  std::vector<std::string> missing;
  for (const auto* half : {&tests_.test1, &tests_.test2}) {
    for (const auto& r : *half) {
      if (!hyps.contains(r.utterance_id)) missing.push_back(r.utterance_id);
    }
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    throw Error(ErrorCode::kMissingUtterances,
                std::to_string(missing.size()) + " test utterances have no hypothesis",
                std::move(missing));
  }

  std::lock_guard writer(write_mutex_);
  const auto current = snapshot();
  if (current->concluded) {
    throw Error(ErrorCode::kChallengeClosed, "the challenge has concluded");
  }
  const std::int64_t created = now();
  std::size_t today = 0;
  for (const auto& [id, r] : current->submissions) {
    if (r.team_id == team_id && r.created_at_ms / kDayMs == created / kDayMs) ++today;
  }
  if (today >= options_.rate_limit_per_day) {
    throw Error(ErrorCode::kRateLimited,
                "team '" + team_id + "' reached " + std::to_string(options_.rate_limit_per_day) +
                    " submissions today");
  }

  const std::string hash = sha256_hex(hypothesis_jsonl);
  const fs::path blob = options_.data_dir / "blobs" / (hash + ".jsonl");
  if (!fs::exists(blob)) write_file_atomically(blob, hypothesis_jsonl);

  auto next = std::make_shared<State>(*current);
  SubmissionRecord r;
  r.sequence = current->submissions.size() + 1;
  r.submission_id = submission_id_for(r.sequence);
  r.team_id = team_id;
  r.created_at_ms = created;
  r.content_hash = hash;
  OrderedJson event = {{"type", "submitted"},
                       {"submission_id", r.submission_id},
                       {"team_id", r.team_id},
                       {"created_at_ms", r.created_at_ms},
                       {"sequence", r.sequence},
                       {"content_hash", r.content_hash}};
  append_event(event.dump());
  next->submissions[r.submission_id] = r;
  publish(next);
  enqueue(r.submission_id);
  return r.submission_id;
}

void Challenge::enqueue(const std::string& submission_id) {
  {
    std::lock_guard lock(queue_mutex_);
    queue_.push_back(submission_id);
  }
  queue_cv_.notify_one();
}

void Challenge::worker_loop() {
  for (;;) {
    std::string id;
    {
      std::unique_lock lock(queue_mutex_);
      queue_cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
      if (stopping_) return;
      id = queue_.front();
      queue_.pop_front();
      ++in_progress_;
    }
    score_submission(id);
    {
      std::lock_guard lock(queue_mutex_);
      --in_progress_;
    }
    idle_cv_.notify_all();
  }
}

void Challenge::score_submission(const std::string& submission_id) {
  SubmissionRecord record;
  {
    std::lock_guard writer(write_mutex_);
    const auto current = snapshot();
    auto it = current->submissions.find(submission_id);
    if (it == current->submissions.end() || it->second.status != SubmissionStatus::kQueued) {
      return;
    }
    auto next = std::make_shared<State>(*current);
    next->submissions[submission_id].status = SubmissionStatus::kScoring;
    record = next->submissions[submission_id];
    publish(next);
  }

  OrderedJson event;
  try {
    std::istringstream in(read_file(options_.data_dir / "blobs" / (record.content_hash + ".jsonl")));
    const auto hyps = io::read_hypotheses(in);
    StoredScores stored;
    auto score_half = [&](const std::vector<ReferenceEntry>& refs,
                          std::vector<StoredUtteranceScore>& per_utt) -> std::optional<HalfScore> {
      if (refs.empty()) return std::nullopt;
      const auto scored = score_utterances(refs, hyps, scorer_.get(), 1, /*allow_extra=*/true);
      std::vector<UtteranceWer> wers;
      std::vector<UtteranceSem> sems;
      for (const auto& s : scored) {
        wers.push_back(s.wer);
        sems.push_back(*s.sem);
        per_utt.push_back({s.utterance_id, s.wer.wer, s.wer.n_star, s.sem->semscore});
      }
      const CorpusWer cw = corpus_wer(wers);
      return HalfScore{cw.wer, corpus_semscore(sems), scored.size(), cw.total_n_star};
    };
    const auto test1 = score_half(tests_.test1, stored.test1);
    const auto test2 = score_half(tests_.test2, stored.test2);

    OrderedJson file = {{"submission_id", submission_id}};
    for (const auto& [name, list] : {std::pair{"test1", &stored.test1}, std::pair{"test2", &stored.test2}}) {
      OrderedJson arr = OrderedJson::array();
      for (const auto& u : *list) {
        arr.push_back({{"utterance_id", u.utterance_id},
                       {"wer", u.wer},
                       {"n_star", u.n_star},
                       {"semscore", u.semscore}});
      }
      file[name] = std::move(arr);
    }
    write_file_atomically(options_.data_dir / "scores" / (submission_id + ".json"), file.dump());
    event = {{"type", "scored"},
             {"submission_id", submission_id},
             {"time_ms", now()},
             {"test1", half_json(test1)},
             {"test2", half_json(test2)}};
  } catch (const std::exception& ex) {
    event = {{"type", "failed"},
             {"submission_id", submission_id},
             {"time_ms", now()},
             {"reason", ex.what()}};
  }

  std::lock_guard writer(write_mutex_);
  auto next = std::make_shared<State>(*snapshot());
  append_event(event.dump());
  apply_event(*next, event.dump(), 0);
  publish(next);
}

std::optional<SubmissionRecord> Challenge::find(const std::string& submission_id) const {
  const auto s = snapshot();
  auto it = s->submissions.find(submission_id);
  if (it == s->submissions.end()) return std::nullopt;
  return it->second;
}

std::vector<SubmissionRecord> Challenge::submissions() const {
  const auto s = snapshot();
  std::vector<SubmissionRecord> out;
  for (const auto& [id, r] : s->submissions) out.push_back(r);
  return out;
}

std::vector<LeaderboardEntry> Challenge::public_leaderboard() const {
  return snapshot()->public_board;
}

std::vector<LeaderboardEntry> Challenge::private_leaderboard(std::string_view admin_token) const {
  const auto s = snapshot();
  if (!s->concluded && !is_admin(admin_token)) {
    throw Error(ErrorCode::kUnauthorized,
                "the private leaderboard is hidden until the challenge concludes");
  }
  return s->private_board;
}

bool Challenge::is_admin(std::string_view token) const {
  return !options_.admin_token.empty() && constant_time_equal(token, options_.admin_token);
}

void Challenge::conclude(std::string_view admin_token) {
  if (!is_admin(admin_token)) throw Error(ErrorCode::kUnauthorized, "admin token required");
  std::lock_guard writer(write_mutex_);
  const auto current = snapshot();
  if (current->concluded) {
    throw Error(ErrorCode::kAlreadyConcluded, "the challenge has already concluded");
  }
  OrderedJson event = {{"type", "concluded"}, {"time_ms", now()}};
  append_event(event.dump());
  auto next = std::make_shared<State>(*current);
  next->concluded = true;
  publish(next);
}

bool Challenge::concluded() const { return snapshot()->concluded; }

std::optional<StoredScores> Challenge::stored_scores(const std::string& submission_id) const {
  const fs::path path = options_.data_dir / "scores" / (submission_id + ".json");
  if (!fs::exists(path)) return std::nullopt;
  const Json j = Json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kMalformedFile, "corrupt score file " + path.string());
  StoredScores out;
  for (const auto& [name, list] : {std::pair{"test1", &out.test1}, std::pair{"test2", &out.test2}}) {
    for (const auto& u : j.at(name)) {
      list->push_back({u.at("utterance_id").get<std::string>(), u.at("wer").get<double>(),
                       u.at("n_star").get<std::size_t>(), u.at("semscore").get<double>()});
    }
  }
  return out;
}

bool Challenge::wait_idle(std::chrono::milliseconds timeout) const {
  std::unique_lock lock(queue_mutex_);
  return idle_cv_.wait_for(lock, timeout, [&] { return queue_.empty() && in_progress_ == 0; });
}

}  // namespace sapeval
