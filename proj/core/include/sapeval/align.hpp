// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_ALIGN_HPP_
#define SAPEVAL_ALIGN_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sapeval/normalize.hpp"

namespace sapeval {

struct AlignmentCounts {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t reference_words = 0;

  std::size_t errors() const { return substitutions + deletions + insertions; }
  // Uncapped (S + D + I) / N.
  double rate() const {
    return static_cast<double>(errors()) / static_cast<double>(reference_words);
  }

  friend bool operator==(const AlignmentCounts&, const AlignmentCounts&) = default;
};

enum class EditOp { kMatch, kSubstitution, kDeletion, kInsertion };

struct Alignment {
  AlignmentCounts counts;
  std::vector<EditOp> script;  // in reference order
};

// Unit-cost Levenshtein alignment over tokens. Among minimal scripts the
// backtrace prefers a diagonal step, then deletion, then insertion.
// Throws Error(kEmptyReference) for an empty reference.
Alignment align(std::span<const std::string> ref, std::span<const std::string> hyp);
AlignmentCounts align_words(std::span<const std::string> ref,
                            std::span<const std::string> hyp);

struct UtteranceWer {
  double wer = 0.0;      // min(1, best per-reference rate)
  int chosen_j = 1;      // minimizing reference; ties go to 1
  std::size_t n_star = 0;  // word count of the chosen reference
  // Counts against each reference; empty references are not scored.
  std::array<std::optional<AlignmentCounts>, 2> per_reference;
};

// Scores a hypothesis against both references and keeps the better one.
// The cap clamps the rate only; n_star stays the chosen reference's length.
// Throws Error(kBothReferencesEmpty).
UtteranceWer utterance_wer(const ReferencePair& refs,
                           std::span<const std::string> hyp);

struct CorpusWer {
  double wer = 0.0;
  std::size_t total_n_star = 0;
};

// n_star-weighted mean of utterance WERs. The reduction is carried out in a
// canonical order, so the result is bit-identical under any permutation of
// `items`. Throws Error(kEmptyBatch), or Error(kInvalidArgument) for an item
// with n_star == 0.
CorpusWer corpus_wer(std::span<const UtteranceWer> items);

}  // namespace sapeval

#endif  // SAPEVAL_ALIGN_HPP_
