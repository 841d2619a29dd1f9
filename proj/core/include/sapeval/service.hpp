// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_SERVICE_HPP_
#define SAPEVAL_SERVICE_HPP_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "sapeval/backend.hpp"
#include "sapeval/corpus.hpp"
#include "sapeval/scoring.hpp"
#include "sapeval/semantic.hpp"

namespace sapeval {

// The unshared halves of the test set that submissions are scored on.
struct TestSets {
  std::vector<ReferenceEntry> test1;
  std::vector<ReferenceEntry> test2;
};

// Keeps the unshared Test1/Test2 references, in utterance id order.
TestSets select_test_sets(std::span<const ReferenceEntry> refs, const SplitMap& splits);

enum class SubmissionStatus { kQueued, kScoring, kDone, kFailed };
std::string_view status_name(SubmissionStatus s);

struct HalfScore {
  double wer = 0.0;
  double semscore = 0.0;
  std::size_t utterances = 0;
  std::size_t total_n_star = 0;
};

struct SubmissionRecord {
  std::string submission_id;
  std::string team_id;
  std::int64_t created_at_ms = 0;
  std::uint64_t sequence = 0;
  std::string content_hash;  // sha256 of the hypothesis file, hex
  SubmissionStatus status = SubmissionStatus::kQueued;
  std::string failure_reason;
  std::optional<HalfScore> test1;
  std::optional<HalfScore> test2;
};

struct LeaderboardEntry {
  std::size_t rank = 0;
  std::string team_id;
  double best_wer = 0.0;
  std::string best_wer_submission_id;
  std::int64_t best_wer_created_at_ms = 0;
  double best_semscore = 0.0;
  std::string best_semscore_submission_id;
  std::size_t scored_submissions = 0;
};

// Best-per-team ranking on one test half: ascending best WER, then higher
// best SemScore, then the earlier best-WER submission. Only Done
// submissions count. A team's best WER and best SemScore may come from
// different submissions.
std::vector<LeaderboardEntry> rank_teams(const std::vector<SubmissionRecord>& submissions,
                                         Split half);

// Per-utterance scores persisted for one submission.
struct StoredUtteranceScore {
  std::string utterance_id;
  double wer = 0.0;
  std::size_t n_star = 0;
  double semscore = 0.0;
};
struct StoredScores {
  std::vector<StoredUtteranceScore> test1;
  std::vector<StoredUtteranceScore> test2;
};

struct ChallengeOptions {
  std::filesystem::path data_dir;
  std::vector<std::string> teams;
  std::string admin_token;
  std::size_t rate_limit_per_day = 5;
  std::size_t workers = 2;
  ScorerWeights weights;
  // Milliseconds since the Unix epoch; the system clock when unset.
  std::function<std::int64_t()> clock;
};

// A challenge instance: submission intake, asynchronous scoring against both
// test halves, and the public (Test1) and private (Test2) leaderboards.
//
// State lives in an append-only event log (data_dir/events.jsonl) plus
// hypothesis blobs and per-submission score files; the constructor replays
// the log, and submissions that never finished scoring are queued again.
// Mutations are serialized; readers see immutable snapshots.
class Challenge {
 public:
  // Throws Error(kInvalidArgument) if the log was written with a different
  // backend or weights, Error(kIo) on filesystem failures.
  Challenge(ChallengeOptions options, TestSets tests,
            std::unique_ptr<ScorerBackend> backend);
  ~Challenge();

  Challenge(const Challenge&) = delete;
  Challenge& operator=(const Challenge&) = delete;

  // Validates and queues a hypothesis file (JSON lines {utterance_id, text}).
  // Throws Error with kChallengeClosed, kUnknownTeam, kMalformedFile,
  // kDuplicateUtterances, kMissingUtterances or kRateLimited.
  std::string submit(const std::string& team_id, const std::string& hypothesis_jsonl);

  std::optional<SubmissionRecord> find(const std::string& submission_id) const;
  std::vector<SubmissionRecord> submissions() const;

  std::vector<LeaderboardEntry> public_leaderboard() const;
  // Throws Error(kUnauthorized) before conclusion unless `admin_token`
  // matches.
  std::vector<LeaderboardEntry> private_leaderboard(std::string_view admin_token = {}) const;

  // Closes submissions and publishes the private leaderboard, permanently.
  // Throws Error(kUnauthorized) or Error(kAlreadyConcluded).
  void conclude(std::string_view admin_token);
  bool concluded() const;
  bool is_admin(std::string_view token) const;

  std::optional<StoredScores> stored_scores(const std::string& submission_id) const;

  // Blocks until no submission is queued or being scored.
  bool wait_idle(std::chrono::milliseconds timeout) const;

  const std::string& backend_name() const { return backend_name_; }
  std::size_t test_utterances() const { return tests_.test1.size() + tests_.test2.size(); }

 private:
  struct State {
    std::map<std::string, SubmissionRecord> submissions;
    bool concluded = false;
    std::vector<LeaderboardEntry> public_board;
    std::vector<LeaderboardEntry> private_board;
  };

  std::shared_ptr<const State> snapshot() const;
  void publish(std::shared_ptr<State> next);
  void append_event(const std::string& line);
  void replay();
  void apply_event(State& state, const std::string& line, std::size_t line_number);
  void enqueue(const std::string& submission_id);
  void worker_loop();
  void score_submission(const std::string& submission_id);
  std::int64_t now() const;

  ChallengeOptions options_;
  TestSets tests_;
  std::unique_ptr<ScorerBackend> backend_;
  std::string backend_name_;
  std::unique_ptr<SemanticScorer> scorer_;

  // Accessed only through std::atomic_load/atomic_store.
  std::shared_ptr<const State> snapshot_;
  std::mutex write_mutex_;  // single writer: log appends and state updates

  mutable std::mutex queue_mutex_;
  mutable std::condition_variable queue_cv_;
  mutable std::condition_variable idle_cv_;
  std::deque<std::string> queue_;
  std::size_t in_progress_ = 0;
  bool stopping_ = false;
  std::vector<std::thread> workers_;
};

}  // namespace sapeval

#endif  // SAPEVAL_SERVICE_HPP_
