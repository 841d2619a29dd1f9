// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_REPORT_HPP_
#define SAPEVAL_REPORT_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sapeval/align.hpp"
#include "sapeval/corpus.hpp"
#include "sapeval/semantic.hpp"

namespace sapeval {

struct ScoredUtterance {
  std::string utterance_id;
  std::string speaker_id;
  Etiology etiology = Etiology::kUnknown;
  bool identical_references = true;
  UtteranceWer wer;
  std::optional<UtteranceSem> sem;
};

// Which reference a hypothesis favours. Type 1 is the variant with
// disfluencies, Type 2 the one without.
enum class Preference { kNone, kType1, kType2 };

std::string_view preference_name(Preference p);  // "none", "type1", "type2"

// kNone when the references are identical, the scores tie, or only one
// variant could be scored. WER compares the uncapped per-reference rates.
Preference wer_preference(const UtteranceWer& wer, bool identical_references);
Preference sem_preference(const UtteranceSem& sem, bool identical_references);

struct PreferenceBreakdown {
  std::size_t type1_count = 0;
  std::size_t type2_count = 0;
  std::size_t none_count = 0;
  double type1 = 0.0;
  double type2 = 0.0;
  double none = 0.0;
};

struct SpeakerStats {
  Etiology etiology = Etiology::kUnknown;
  std::size_t utterances = 0;
  std::size_t n_star = 0;
  double wer = 0.0;  // n_star-weighted within the speaker
  std::optional<double> semscore;
};

struct EtiologyStats {
  std::size_t speakers = 0;
  std::size_t utterances = 0;
  double wer = 0.0;  // n_star-weighted over the group's utterances
  std::optional<double> semscore;
  double speaker_wer_mean = 0.0;
  double speaker_wer_std = 0.0;  // population
};

struct EvaluationReport {
  std::string system;
  CorpusWer corpus_wer;
  std::optional<double> corpus_semscore;
  std::vector<ScoredUtterance> per_utterance;  // sorted by utterance id
  PreferenceBreakdown wer_preference;
  std::optional<PreferenceBreakdown> sem_preference;
  std::map<std::string, SpeakerStats> per_speaker;
  std::map<std::string, EtiologyStats> per_etiology;  // keyed by etiology_name
  double speaker_wer_mean = 0.0;
  double speaker_wer_std = 0.0;  // population std over speakers
};

// Throws Error(kEmptyBatch). SemScore sections are present only when every
// utterance carries a SemScore.
EvaluationReport build_report(std::vector<ScoredUtterance> scores,
                              std::string system = {});

// Sample Pearson correlation, accumulated in extended precision and clamped
// to [-1, 1]. Throws Error(kDegenerateVariance) for fewer than two points or
// a constant series, Error(kInvalidArgument) for a length mismatch.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct SystemRow {
  std::string system;
  double wer = 0.0;
  double semscore = 0.0;
  std::size_t wer_rank = 0;  // 1 = lowest WER; ties share a rank
  std::size_t sem_rank = 0;  // 1 = highest SemScore
  long rank_difference = 0;  // sem_rank - wer_rank
};

struct SystemComparison {
  std::vector<SystemRow> rows;  // input order
  // nullopt when either metric is constant across systems.
  std::optional<double> pearson;
  // System pairs ordered differently by the two metrics.
  std::vector<std::pair<std::string, std::string>> discordant_pairs;
};

// Throws Error(kInvalidArgument) for fewer than two reports or a report
// without a corpus SemScore.
SystemComparison compare_systems(std::span<const EvaluationReport> reports);

}  // namespace sapeval

#endif  // SAPEVAL_REPORT_HPP_
