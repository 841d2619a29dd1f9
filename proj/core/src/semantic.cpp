// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "sapeval/semantic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sapeval/error.hpp"
#include "sapeval/phonetic.hpp"

namespace sapeval {

double combine(const ComponentScores& c, const ScorerWeights& w) {
  return w.alpha * c.nli + w.beta * c.bert + w.gamma * c.soundex;
}

UtteranceSem select_reference(
    const std::array<std::optional<ComponentScores>, 2>& per_reference,
    const ScorerWeights& weights) {
  UtteranceSem out;
  out.per_reference_components = per_reference;
  bool found = false;
  for (int j : {1, 0}) {
    if (!per_reference[j]) continue;
    const double value = combine(*per_reference[j], weights);
    out.per_reference[j] = value;
    if (!found || value > out.semscore) {
      found = true;
      out.semscore = value;
      out.chosen_j = j;
      out.components = *per_reference[j];
    }
  }
  if (!found) {
    throw Error(ErrorCode::kBothReferencesEmpty,
                "both reference variants are empty");
  }
  return out;
}

double corpus_semscore(std::span<const UtteranceSem> items) {
  if (items.empty()) throw Error(ErrorCode::kEmptyBatch, "no utterances to score");
  std::vector<double> values;
  values.reserve(items.size());
  for (const auto& item : items) values.push_back(item.semscore);
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

SemanticScorer::SemanticScorer(ScorerBackend& backend, ScorerWeights weights)
    : backend_(backend), weights_(weights) {}

double SemanticScorer::clamp_counted(double value) {
  ++backend_values_;
  if (value < 0.0 || value > 1.0) {
    ++clamped_values_;
    return std::clamp(value, 0.0, 1.0);
  }
  return value;
}

ComponentScores SemanticScorer::components(std::span<const std::string> ref,
                                           std::span<const std::string> hyp) {
  if (ref.empty()) {
    throw Error(ErrorCode::kEmptyReference, "reference has no words");
  }
  const Tokens ref_tokens(ref.begin(), ref.end());
  const Tokens hyp_tokens(hyp.begin(), hyp.end());
  const ScoreRequest request{"0", join(ref_tokens), join(hyp_tokens)};
  const auto responses = backend_.score(std::span(&request, 1));
  if (responses.size() != 1) {
    throw Error(ErrorCode::kBackendMalformedResponse,
                "backend returned " + std::to_string(responses.size()) +
                    " scores for 1 pair");
  }
  return {clamp_counted(responses[0].nli), clamp_counted(responses[0].bert),
          score_soundex(ref, hyp)};
}

UtteranceSem SemanticScorer::score(const ReferencePair& refs,
                                   std::span<const std::string> hyp) {
  const Tokens hyp_tokens(hyp.begin(), hyp.end());
  const SemItem item{&refs, &hyp_tokens};
  return score_batch(std::span(&item, 1)).front();
}

std::vector<UtteranceSem> SemanticScorer::score_batch(
    std::span<const SemItem> items) {
  struct Slot {
    std::size_t item;
    int j;
  };
  std::vector<ScoreRequest> requests;
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const ReferencePair& refs = *items[i].refs;
    if (refs.empty()) {
      throw Error(ErrorCode::kBothReferencesEmpty,
                  "both reference variants are empty");
    }
    const std::string hyp = join(*items[i].hyp);
    for (int j : {0, 1}) {
      if (refs.variant(j).empty()) continue;
      if (j == 1 && refs.identical()) continue;
      requests.push_back({std::to_string(i) + ":" + std::to_string(j),
                          join(refs.variant(j)), hyp});
      slots.push_back({i, j});
    }
  }
  const auto responses = requests.empty()
                             ? std::vector<ScoreResponse>{}
                             : backend_.score(requests);
  if (responses.size() != requests.size()) {
    throw Error(ErrorCode::kBackendMalformedResponse,
                "backend returned " + std::to_string(responses.size()) +
                    " scores for " + std::to_string(requests.size()) + " pairs");
  }

  std::vector<std::array<std::optional<ComponentScores>, 2>> per_item(items.size());
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const auto [i, j] = slots[k];
    const ReferencePair& refs = *items[i].refs;
    ComponentScores c{clamp_counted(responses[k].nli),
                      clamp_counted(responses[k].bert),
                      score_soundex(refs.variant(j), *items[i].hyp)};
    per_item[i][j] = c;
    if (j == 0 && refs.identical()) per_item[i][1] = c;
  }

  std::vector<UtteranceSem> out;
  out.reserve(items.size());
  for (const auto& per_reference : per_item) {
    out.push_back(select_reference(per_reference, weights_));
  }
  return out;
}

}  // namespace sapeval
