// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "sapeval/scoring.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "sapeval/error.hpp"

namespace sapeval {

Coverage check_coverage(std::span<const ReferenceEntry> refs,
                        const std::map<std::string, std::string>& hyps) {
  Coverage c;
  std::map<std::string_view, bool> known;
  for (const auto& r : refs) {
    known[r.utterance_id] = true;
    if (!hyps.contains(r.utterance_id)) c.missing.push_back(r.utterance_id);
  }
  for (const auto& [id, text] : hyps) {
    if (!known.contains(id)) c.extra.push_back(id);
  }
  std::sort(c.missing.begin(), c.missing.end());
  return c;
}

std::vector<ScoredUtterance> score_utterances(
    std::span<const ReferenceEntry> refs,
    const std::map<std::string, std::string>& hyps, SemanticScorer* scorer,
    std::size_t jobs, bool allow_extra) {
  const Coverage coverage = check_coverage(refs, hyps);
  if (!coverage.missing.empty()) {
    throw Error(ErrorCode::kIdMismatch,
                std::to_string(coverage.missing.size()) +
                    " reference utterances have no hypothesis",
                coverage.missing);
  }
  if (!allow_extra && !coverage.extra.empty()) {
    throw Error(ErrorCode::kIdMismatch,
                std::to_string(coverage.extra.size()) +
                    " hypotheses have no reference",
                coverage.extra);
  }

  std::vector<Tokens> hyp_tokens(refs.size());
  std::vector<ScoredUtterance> out(refs.size());
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < refs.size(); i = next.fetch_add(1)) {
      try {
        const ReferenceEntry& r = refs[i];
        hyp_tokens[i] = normalize_hypothesis(hyps.at(r.utterance_id));
        ScoredUtterance& s = out[i];
        s.utterance_id = r.utterance_id;
        s.speaker_id = r.speaker_id.empty() ? "unknown" : r.speaker_id;
        s.etiology = r.etiology;
        s.identical_references = r.refs.identical();
        s.wer = utterance_wer(r.refs, hyp_tokens[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, refs.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  if (scorer != nullptr && !refs.empty()) {
    std::vector<SemItem> items;
    items.reserve(refs.size());
    for (std::size_t i = 0; i < refs.size(); ++i) items.push_back({&refs[i].refs, &hyp_tokens[i]});
    auto sems = scorer->score_batch(items);
    for (std::size_t i = 0; i < refs.size(); ++i) out[i].sem = std::move(sems[i]);
  }
  return out;
}

}  // namespace sapeval
