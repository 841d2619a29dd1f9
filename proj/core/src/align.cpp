// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "sapeval/align.hpp"

#include <algorithm>
#include <utility>

#include "sapeval/error.hpp"

namespace sapeval {

Alignment align(std::span<const std::string> ref,
                std::span<const std::string> hyp) {
  if (ref.empty()) {
    throw Error(ErrorCode::kEmptyReference, "reference has no words");
  }
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  const std::size_t width = m + 1;
  std::vector<std::size_t> cost((n + 1) * width);
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& {
    return cost[i * width + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diagonal =
          at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diagonal, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  Alignment result;
  result.counts.reference_words = n;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
        result.script.push_back(same ? EditOp::kMatch : EditOp::kSubstitution);
        if (!same) ++result.counts.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      result.script.push_back(EditOp::kDeletion);
      ++result.counts.deletions;
      --i;
    } else {
      result.script.push_back(EditOp::kInsertion);
      ++result.counts.insertions;
      --j;
    }
  }
  std::reverse(result.script.begin(), result.script.end());
  return result;
}

AlignmentCounts align_words(std::span<const std::string> ref,
                            std::span<const std::string> hyp) {
  return align(ref, hyp).counts;
}

UtteranceWer utterance_wer(const ReferencePair& refs,
                           std::span<const std::string> hyp) {
  if (refs.empty()) {
    throw Error(ErrorCode::kBothReferencesEmpty,
                "both reference variants are empty");
  }
  UtteranceWer out;
  std::optional<double> best;
  for (int j : {1, 0}) {
    const Tokens& ref = refs.variant(j);
    if (ref.empty()) continue;
    const AlignmentCounts counts = align_words(ref, hyp);
    out.per_reference[j] = counts;
    // j = 1 is visited first, so it keeps ties.
    if (!best || counts.rate() < *best) {
      best = counts.rate();
      out.chosen_j = j;
      out.n_star = counts.reference_words;
    }
  }
  out.wer = std::min(1.0, *best);
  return out;
}

CorpusWer corpus_wer(std::span<const UtteranceWer> items) {
  if (items.empty()) throw Error(ErrorCode::kEmptyBatch, "no utterances to score");
  std::vector<std::pair<double, std::size_t>> terms;
  terms.reserve(items.size());
  for (const auto& item : items) {
    if (item.n_star == 0) {
      throw Error(ErrorCode::kInvalidArgument, "utterance with n_star == 0");
    }
    terms.emplace_back(item.wer, item.n_star);
  }
  std::sort(terms.begin(), terms.end());
  double weighted = 0.0;
  std::size_t total = 0;
  for (const auto& [wer, n_star] : terms) {
    weighted += wer * static_cast<double>(n_star);
    total += n_star;
  }
  return {weighted / static_cast<double>(total), total};
}

}  // namespace sapeval
