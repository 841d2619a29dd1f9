// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "sapeval/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "sapeval/error.hpp"

namespace sapeval {

std::string_view etiology_name(Etiology e) {
  switch (e) {
    case Etiology::kPD: return "PD";
    case Etiology::kDS: return "DS";
    case Etiology::kALS: return "ALS";
    case Etiology::kCP: return "CP";
    case Etiology::kStroke: return "Stroke";
    case Etiology::kUnknown: return "Unknown";
  }
  return "Unknown";
}

Etiology parse_etiology(std::string_view name) {
  const std::string lower = to_lower_ascii(name);
  if (lower == "pd" || lower == "parkinson's disease") return Etiology::kPD;
  if (lower == "ds" || lower == "down syndrome") return Etiology::kDS;
  if (lower == "als") return Etiology::kALS;
  if (lower == "cp" || lower == "cerebral palsy") return Etiology::kCP;
  if (lower == "stroke") return Etiology::kStroke;
  return Etiology::kUnknown;
}

std::string_view split_name(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest1: return "test1";
    case Split::kTest2: return "test2";
  }
  return "train";
}

std::optional<Split> parse_split(std::string_view name) {
  const std::string lower = to_lower_ascii(name);
  if (lower == "train") return Split::kTrain;
  if (lower == "dev") return Split::kDev;
  if (lower == "test1") return Split::kTest1;
  if (lower == "test2") return Split::kTest2;
  return std::nullopt;
}

void validate_manifest(const Manifest& manifest) {
  std::unordered_set<std::string> seen;
  std::set<std::string> duplicates;
  for (const auto& r : manifest) {
    if (r.utterance_id.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "utterance with empty id");
    }
    if (r.speaker_id.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "utterance " + r.utterance_id + " has no speaker");
    }
    if (!(r.duration_s > 0.0) || !std::isfinite(r.duration_s)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "utterance " + r.utterance_id + " has non-positive duration");
    }
    if (!seen.insert(r.utterance_id).second) duplicates.insert(r.utterance_id);
  }
  if (!duplicates.empty()) {
    throw Error(ErrorCode::kDuplicateUtterances,
                std::to_string(duplicates.size()) + " duplicate utterance ids",
                std::vector<std::string>(duplicates.begin(), duplicates.end()));
  }
}

namespace {

struct Speaker {
  std::string id;
  double duration = 0.0;
};

// Buckets used while assigning: Train, Dev, Test (not yet halved).
constexpr std::size_t kBuckets = 3;

// Moves speakers into buckets holding fewer than `wanted[b]` of them, taking
// the shortest speaker of the bucket with the largest surplus.
void repair_counts(std::vector<std::vector<std::size_t>>& members,
                   const std::vector<std::size_t>& wanted) {
  for (std::size_t b = 0; b < members.size(); ++b) {
    while (members[b].size() < wanted[b]) {
      std::size_t donor = members.size();
      std::size_t best_surplus = 0;
      for (std::size_t d = 0; d < members.size(); ++d) {
        const std::size_t keep = std::max<std::size_t>(wanted[d], 1);
        if (d == b || members[d].size() <= keep) continue;
        const std::size_t surplus = members[d].size() - keep;
        if (surplus > best_surplus) {
          best_surplus = surplus;
          donor = d;
        }
      }
      if (donor == members.size()) return;
      // Members are kept in descending duration order; take the shortest.
      members[b].push_back(members[donor].back());
      members[donor].pop_back();
    }
  }
}

}  // namespace

SplitMap split_manifest(const Manifest& manifest, const SplitRatios& ratios,
                        std::uint64_t seed) {
  validate_manifest(manifest);
  const std::array<double, kBuckets> share{ratios.train, ratios.dev, ratios.test};
  for (double s : share) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::kInvalidArgument, "split ratios must be non-negative");
    }
  }
  if (std::abs(share[0] + share[1] + share[2] - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "split ratios must sum to 1");
  }

  std::vector<Speaker> speakers;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& r : manifest) {
    auto [it, inserted] = index.emplace(r.speaker_id, speakers.size());
    if (inserted) speakers.push_back({r.speaker_id, 0.0});
    speakers[it->second].duration += r.duration_s;
  }
  if (speakers.size() < 4) {
    throw Error(ErrorCode::kTooFewSpeakers,
                "need at least 4 speakers, got " + std::to_string(speakers.size()));
  }

  // Canonical order first so the seed alone decides ties.
  std::sort(speakers.begin(), speakers.end(),
            [](const Speaker& a, const Speaker& b) { return a.id < b.id; });
  std::mt19937_64 rng(seed);
  for (std::size_t i = speakers.size(); i > 1; --i) {
    std::swap(speakers[i - 1], speakers[rng() % i]);
  }
  std::stable_sort(speakers.begin(), speakers.end(),
                   [](const Speaker& a, const Speaker& b) {
                     return a.duration > b.duration;
                   });

  double total = 0.0;
  for (const auto& s : speakers) total += s.duration;
  std::array<double, kBuckets> assigned{};
  std::vector<std::vector<std::size_t>> buckets(kBuckets);
  for (std::size_t i = 0; i < speakers.size(); ++i) {
    std::size_t best = 0;
    double best_deficit = share[0] * total - assigned[0];
    for (std::size_t b = 1; b < kBuckets; ++b) {
      const double deficit = share[b] * total - assigned[b];
      if (deficit > best_deficit) {
        best = b;
        best_deficit = deficit;
      }
    }
    buckets[best].push_back(i);
    assigned[best] += speakers[i].duration;
  }
  // The test bucket needs two speakers so that both halves get one.
  repair_counts(buckets, {share[0] > 0 ? 1u : 0u, share[1] > 0 ? 1u : 0u, share[2] > 0 ? 2u : 0u});

  // Halve the test speakers by duration.
  std::vector<std::vector<std::size_t>> halves(2);
  std::array<double, 2> half_duration{};
  std::sort(buckets[2].begin(), buckets[2].end());
  for (std::size_t i : buckets[2]) {
    const std::size_t h = half_duration[1] < half_duration[0] ? 1 : 0;
    halves[h].push_back(i);
    half_duration[h] += speakers[i].duration;
  }
  if (share[2] > 0) repair_counts(halves, {1, 1});

  std::unordered_map<std::string, Split> speaker_split;
  auto put = [&](const std::vector<std::size_t>& members, Split split) {
    for (std::size_t i : members) speaker_split[speakers[i].id] = split;
  };
  put(buckets[0], Split::kTrain);
  put(buckets[1], Split::kDev);
  put(halves[0], Split::kTest1);
  put(halves[1], Split::kTest2);

  SplitMap out;
  for (const auto& r : manifest) {
    out[r.utterance_id] = {speaker_split.at(r.speaker_id), false};
  }
  return out;
}

namespace {

std::string canonical_text(const UtteranceRecord& r, const NormalizeOptions& options) {
  try {
    return join(normalize(r.raw_transcript, options).without_disfluencies);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kEmptyResult) return {};
    throw;
  }
}

}  // namespace

SplitMap mark_unshared(const Manifest& manifest, SplitMap assignments,
                       const NormalizeOptions& options) {
  std::unordered_set<std::string> training_texts;
  for (const auto& r : manifest) {
    auto it = assignments.find(r.utterance_id);
    if (it != assignments.end() && it->second.split == Split::kTrain) {
      training_texts.insert(canonical_text(r, options));
    }
  }
  for (const auto& r : manifest) {
    auto it = assignments.find(r.utterance_id);
    if (it == assignments.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "utterance " + r.utterance_id + " has no split assignment");
    }
    SplitAssignment& a = it->second;
    const bool test = a.split == Split::kTest1 || a.split == Split::kTest2;
    a.unshared = test && !training_texts.contains(canonical_text(r, options));
  }
  return assignments;
}

std::array<SplitStats, 4> split_stats(const Manifest& manifest,
                                      const SplitMap& assignments) {
  std::array<SplitStats, 4> stats{};
  std::array<std::set<std::string>, 4> speakers;
  for (const auto& r : manifest) {
    auto it = assignments.find(r.utterance_id);
    if (it == assignments.end()) continue;
    const auto k = static_cast<std::size_t>(it->second.split);
    speakers[k].insert(r.speaker_id);
    ++stats[k].utterances;
    stats[k].duration_s += r.duration_s;
    if (it->second.unshared) {
      ++stats[k].unshared_utterances;
      stats[k].unshared_duration_s += r.duration_s;
    }
  }
  for (std::size_t k = 0; k < 4; ++k) stats[k].speakers = speakers[k].size();
  return stats;
}

}  // namespace sapeval
