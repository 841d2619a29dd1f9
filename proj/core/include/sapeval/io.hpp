// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_IO_HPP_
#define SAPEVAL_IO_HPP_

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "sapeval/corpus.hpp"
#include "sapeval/fit.hpp"
#include "sapeval/normalize.hpp"
#include "sapeval/report.hpp"
#include "sapeval/scoring.hpp"

// File formats. Every line-oriented file is JSON Lines (one object per
// line, UTF-8); blank lines are skipped. Parse failures raise
// Error(kMalformedFile) whose position() is the 1-based line number.
namespace sapeval::io {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Calls `fn(line_number, object)` for each non-blank line.
void for_each_jsonl(std::istream& in,
                    const std::function<void(std::size_t, const Json&)>& fn);

// Manifest line: {utterance_id, speaker_id, raw_transcript, etiology?,
// duration_s?}. Duration defaults to 0 when absent; split_manifest rejects
// that, normalization does not care.
UtteranceRecord record_from_json(const Json& j, std::size_t line);
Manifest read_manifest(std::istream& in);

// Normalized reference line: {utterance_id, ref_with, ref_without}. Repeated
// ids raise Error(kDuplicateUtterances).
// Scoring also accepts optional speaker_id / etiology, or a raw_transcript
// in place of the two token arrays (normalized on load).
OrderedJson reference_to_json(const std::string& utterance_id, const ReferencePair& refs);
std::vector<ReferenceEntry> read_references(std::istream& in,
                                            const NormalizeOptions& options = {});

// Hypothesis line: {utterance_id, text}. Keyed by id; duplicated ids raise
// Error(kDuplicateUtterances) listing them.
std::map<std::string, std::string> read_hypotheses(std::istream& in);

// Split line: {utterance_id, split, unshared}.
OrderedJson split_to_json(const std::string& utterance_id, const SplitAssignment& a);
SplitMap read_splits(std::istream& in);

// Rated pair line: {reference, hypothesis, rating, nli?, bert?, soundex?}.
struct RatedLine {
  std::size_t line = 0;
  std::string reference;
  std::string hypothesis;
  double rating = 0.0;
  std::optional<double> nli;
  std::optional<double> bert;
  std::optional<double> soundex;
};
std::vector<RatedLine> read_ratings(std::istream& in);

OrderedJson weights_to_json(const ScorerWeights& w);
// Accepts {alpha, beta, gamma} or an object holding it under "weights".
ScorerWeights weights_from_json(const Json& j);

OrderedJson fit_to_json(const FitResult& fit);
OrderedJson report_to_json(const EvaluationReport& report);
// Reads back the system name and corpus-level metrics only.
EvaluationReport report_summary_from_json(const Json& j);
OrderedJson comparison_to_json(const SystemComparison& c);

}  // namespace sapeval::io

#endif  // SAPEVAL_IO_HPP_
