// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_SCORING_HPP_
#define SAPEVAL_SCORING_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "sapeval/corpus.hpp"
#include "sapeval/normalize.hpp"
#include "sapeval/report.hpp"
#include "sapeval/semantic.hpp"

namespace sapeval {

struct ReferenceEntry {
  std::string utterance_id;
  ReferencePair refs;
  std::string speaker_id;
  Etiology etiology = Etiology::kUnknown;
};

struct Coverage {
  std::vector<std::string> missing;  // reference ids without a hypothesis
  std::vector<std::string> extra;    // hypothesis ids without a reference
};

Coverage check_coverage(std::span<const ReferenceEntry> refs,
                        const std::map<std::string, std::string>& hyps);

// Scores every reference against its hypothesis. WER is computed on up to
// `jobs` threads; SemScore (when `scorer` is non-null) goes to the backend
// as one batch. Output follows reference order.
// Throws Error(kIdMismatch) listing ids when the id sets differ and
// `allow_extra` is false; with `allow_extra`, unknown hypotheses are ignored
// but missing ones still throw.
std::vector<ScoredUtterance> score_utterances(
    std::span<const ReferenceEntry> refs,
    const std::map<std::string, std::string>& hyps, SemanticScorer* scorer,
    std::size_t jobs = 1, bool allow_extra = false);

}  // namespace sapeval

#endif  // SAPEVAL_SCORING_HPP_
