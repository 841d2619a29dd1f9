// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_CORPUS_HPP_
#define SAPEVAL_CORPUS_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sapeval/normalize.hpp"

namespace sapeval {

enum class Etiology { kPD, kDS, kALS, kCP, kStroke, kUnknown };

std::string_view etiology_name(Etiology e);
// Accepts the short names ("PD", "ALS", ...) case-insensitively; anything
// else, including the empty string, is Unknown.
Etiology parse_etiology(std::string_view name);

struct UtteranceRecord {
  std::string utterance_id;
  std::string speaker_id;
  Etiology etiology = Etiology::kUnknown;
  double duration_s = 0.0;
  std::string raw_transcript;
};

using Manifest = std::vector<UtteranceRecord>;

// Throws Error(kDuplicateUtterances) listing repeated ids, or
// Error(kInvalidArgument) for a non-positive duration or empty id.
void validate_manifest(const Manifest& manifest);

enum class Split { kTrain, kDev, kTest1, kTest2 };

std::string_view split_name(Split s);  // "train", "dev", "test1", "test2"
std::optional<Split> parse_split(std::string_view name);

struct SplitAssignment {
  Split split = Split::kTrain;
  bool unshared = false;  // only ever true for Test1/Test2

  friend bool operator==(const SplitAssignment&, const SplitAssignment&) = default;
};

// Keyed by utterance id.
using SplitMap = std::map<std::string, SplitAssignment>;

struct SplitRatios {
  double train = 0.70;
  double dev = 0.10;
  double test = 0.20;  // halved into Test1 and Test2
};

// Speaker-disjoint split by total speech duration. Speakers are visited in
// descending order of duration (the seed only orders speakers of equal
// duration) and each goes to the split furthest below its duration target.
// Test speakers are then dealt to whichever half has less duration so far.
// A split with a positive ratio that ends up without speakers (or a test
// part with fewer than two) receives the shortest speaker of the split with
// the most speakers to spare.
//
// Throws Error(kTooFewSpeakers) below four speakers and
// Error(kInvalidArgument) for ratios that do not sum to one.
SplitMap split_manifest(const Manifest& manifest, const SplitRatios& ratios = {},
                        std::uint64_t seed = 0);

// Flags each Test1/Test2 utterance whose disfluency-free normalized text
// never occurs in Train. Transcripts that normalize to nothing count as the
// empty text. Markup errors propagate.
SplitMap mark_unshared(const Manifest& manifest, SplitMap assignments,
                       const NormalizeOptions& options = {});

struct SplitStats {
  std::size_t speakers = 0;
  std::size_t utterances = 0;
  double duration_s = 0.0;
  std::size_t unshared_utterances = 0;
  double unshared_duration_s = 0.0;
};

// Per-split totals in Split order (Train, Dev, Test1, Test2).
std::array<SplitStats, 4> split_stats(const Manifest& manifest,
                                      const SplitMap& assignments);

}  // namespace sapeval

#endif  // SAPEVAL_CORPUS_HPP_
