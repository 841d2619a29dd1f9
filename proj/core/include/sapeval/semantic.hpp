// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_SEMANTIC_HPP_
#define SAPEVAL_SEMANTIC_HPP_

#include <array>
#include <atomic>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sapeval/backend.hpp"
#include "sapeval/normalize.hpp"

namespace sapeval {

struct ComponentScores {
  double nli = 0.0;      // entailment of the reference content by the hypothesis
  double bert = 0.0;     // contextual-embedding F1
  double soundex = 0.0;  // phonetic similarity, see score_soundex

  friend bool operator==(const ComponentScores&, const ComponentScores&) = default;
};

struct ScorerWeights {
  double alpha = 0.40;  // nli
  double beta = 0.28;   // bert
  double gamma = 0.32;  // soundex

  friend bool operator==(const ScorerWeights&, const ScorerWeights&) = default;
};

// alpha * nli + beta * bert + gamma * soundex
double combine(const ComponentScores& c, const ScorerWeights& w);

struct UtteranceSem {
  double semscore = 0.0;
  int chosen_j = 1;
  ComponentScores components;  // against the chosen reference
  std::array<std::optional<ComponentScores>, 2> per_reference_components;
  std::array<std::optional<double>, 2> per_reference;
};

// Keeps the reference with the higher combined score; ties go to j = 1.
// References that were not scored are nullopt.
// Throws Error(kBothReferencesEmpty) if neither was scored.
UtteranceSem select_reference(
    const std::array<std::optional<ComponentScores>, 2>& per_reference,
    const ScorerWeights& weights);

// Unweighted mean of utterance SemScores, reduced in a canonical order.
// Throws Error(kEmptyBatch).
double corpus_semscore(std::span<const UtteranceSem> items);

// One hypothesis to be scored against a reference pair. Both pointers must
// outlive the call that receives the item.
struct SemItem {
  const ReferencePair* refs;
  const Tokens* hyp;
};

// Routes NLI and embedding scoring through a backend and computes the
// phonetic component locally. Safe to share between threads as long as the
// backend is.
class SemanticScorer {
 public:
  explicit SemanticScorer(ScorerBackend& backend, ScorerWeights weights = {});

  const ScorerWeights& weights() const { return weights_; }

  // Component scores of one (reference, hypothesis) pair, each clamped to
  // [0, 1]. Throws Error(kEmptyReference) or any backend error.
  ComponentScores components(std::span<const std::string> ref,
                             std::span<const std::string> hyp);

  UtteranceSem score(const ReferencePair& refs, std::span<const std::string> hyp);

  // Batched form of score(): every backend pair of the batch is sent in one
  // backend call. Identical reference variants are scored once.
  std::vector<UtteranceSem> score_batch(std::span<const SemItem> items);

  // Backend values seen so far, and how many of them fell outside [0, 1].
  std::size_t backend_values() const { return backend_values_.load(); }
  std::size_t clamped_values() const { return clamped_values_.load(); }

 private:
  double clamp_counted(double value);

  ScorerBackend& backend_;
  ScorerWeights weights_;
  std::atomic<std::size_t> backend_values_{0};
  std::atomic<std::size_t> clamped_values_{0};
};

}  // namespace sapeval

#endif  // SAPEVAL_SEMANTIC_HPP_
