// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "sapeval/report.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sapeval/error.hpp"

namespace sapeval {
namespace {

template <typename T>
Preference compare_variants(const std::optional<T>& with, const std::optional<T>& without,
                            bool lower_is_better) {
  if (!with || !without || *with == *without) return Preference::kNone;
  const bool first_wins = lower_is_better ? *with < *without : *with > *without;
  return first_wins ? Preference::kType1 : Preference::kType2;
}

void tally(PreferenceBreakdown& b, Preference p) {
  switch (p) {
    case Preference::kType1: ++b.type1_count; break;
    case Preference::kType2: ++b.type2_count; break;
    case Preference::kNone: ++b.none_count; break;
  }
}

void finish(PreferenceBreakdown& b) {
  const double total =
      static_cast<double>(b.type1_count + b.type2_count + b.none_count);
  b.type1 = static_cast<double>(b.type1_count) / total;
  b.type2 = static_cast<double>(b.type2_count) / total;
  b.none = static_cast<double>(b.none_count) / total;
}

std::pair<double, double> mean_and_population_std(const std::vector<double>& values) {
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  double mean = 0.0;
  for (double v : sorted) mean += v;
  mean /= static_cast<double>(sorted.size());
  double var = 0.0;
  for (double v : sorted) var += (v - mean) * (v - mean);
  var /= static_cast<double>(sorted.size());
  return {mean, std::sqrt(var)};
}

std::vector<std::size_t> competition_ranks(const std::vector<double>& values,
                                           bool lower_is_better) {
  std::vector<std::size_t> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::size_t better = 0;
    for (double other : values) {
      if (lower_is_better ? other < values[i] : other > values[i]) ++better;
    }
    ranks[i] = better + 1;
  }
  return ranks;
}

}  // namespace

std::string_view preference_name(Preference p) {
  switch (p) {
    case Preference::kType1: return "type1";
    case Preference::kType2: return "type2";
    case Preference::kNone: return "none";
  }
  return "none";
}

Preference wer_preference(const UtteranceWer& wer, bool identical_references) {
  if (identical_references) return Preference::kNone;
  auto rate = [&](int j) -> std::optional<double> {
    if (!wer.per_reference[j]) return std::nullopt;
    return wer.per_reference[j]->rate();
  };
  return compare_variants(rate(0), rate(1), /*lower_is_better=*/true);
}

Preference sem_preference(const UtteranceSem& sem, bool identical_references) {
  if (identical_references) return Preference::kNone;
  return compare_variants(sem.per_reference[0], sem.per_reference[1],
                          /*lower_is_better=*/false);
}

EvaluationReport build_report(std::vector<ScoredUtterance> scores, std::string system) {
  if (scores.empty()) throw Error(ErrorCode::kEmptyBatch, "no scored utterances");
  std::sort(scores.begin(), scores.end(),
            [](const ScoredUtterance& a, const ScoredUtterance& b) {
              return a.utterance_id < b.utterance_id;
            });

  EvaluationReport report;
  report.system = std::move(system);
  const bool with_sem = std::all_of(scores.begin(), scores.end(),
                                    [](const ScoredUtterance& s) { return s.sem.has_value(); });

  std::vector<UtteranceWer> all_wer;
  std::vector<UtteranceSem> all_sem;
  std::map<std::string, std::vector<const ScoredUtterance*>> by_speaker;
  std::map<std::string, std::vector<const ScoredUtterance*>> by_etiology;
  PreferenceBreakdown sem_pref;
  for (const auto& s : scores) {
    all_wer.push_back(s.wer);
    tally(report.wer_preference, wer_preference(s.wer, s.identical_references));
    if (with_sem) {
      all_sem.push_back(*s.sem);
      tally(sem_pref, sem_preference(*s.sem, s.identical_references));
    }
    by_speaker[s.speaker_id].push_back(&s);
  }
  report.corpus_wer = corpus_wer(all_wer);
  finish(report.wer_preference);
  if (with_sem) {
    report.corpus_semscore = corpus_semscore(all_sem);
    finish(sem_pref);
    report.sem_preference = sem_pref;
  }

  auto summarize = [&](const std::vector<const ScoredUtterance*>& members,
                       std::size_t& n_star, double& wer,
                       std::optional<double>& semscore) {
    std::vector<UtteranceWer> w;
    std::vector<UtteranceSem> m;
    for (const auto* s : members) {
      w.push_back(s->wer);
      if (with_sem) m.push_back(*s->sem);
    }
    const CorpusWer cw = corpus_wer(w);
    n_star = cw.total_n_star;
    wer = cw.wer;
    if (with_sem) semscore = corpus_semscore(m);
  };

  std::vector<double> speaker_wers;
  std::map<std::string, std::vector<double>> etiology_speaker_wers;
  for (const auto& [speaker, members] : by_speaker) {
    SpeakerStats stats;
    stats.etiology = members.front()->etiology;
    stats.utterances = members.size();
    summarize(members, stats.n_star, stats.wer, stats.semscore);
    speaker_wers.push_back(stats.wer);
    const std::string etiology(etiology_name(stats.etiology));
    etiology_speaker_wers[etiology].push_back(stats.wer);
    for (const auto* s : members) by_etiology[etiology].push_back(s);
    report.per_speaker.emplace(speaker, stats);
  }
  std::tie(report.speaker_wer_mean, report.speaker_wer_std) =
      mean_and_population_std(speaker_wers);

  for (const auto& [etiology, members] : by_etiology) {
    EtiologyStats stats;
    stats.utterances = members.size();
    stats.speakers = etiology_speaker_wers[etiology].size();
    std::size_t n_star = 0;
    summarize(members, n_star, stats.wer, stats.semscore);
    std::tie(stats.speaker_wer_mean, stats.speaker_wer_std) =
        mean_and_population_std(etiology_speaker_wers[etiology]);
    report.per_etiology.emplace(etiology, stats);
  }

  report.per_utterance = std::move(scores);
  return report;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::kInvalidArgument, "pearson: series lengths differ");
  }
  if (xs.size() < 2) {
    throw Error(ErrorCode::kDegenerateVariance, "pearson: need at least 2 points");
  }
  const long double n = static_cast<long double>(xs.size());
  long double mx = 0;
  long double my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  long double sxy = 0;
  long double sxx = 0;
  long double syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const long double dx = xs[i] - mx;
    const long double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) {
    throw Error(ErrorCode::kDegenerateVariance, "pearson: constant series");
  }
  const long double r = sxy / (std::sqrt(sxx) * std::sqrt(syy));
  return std::clamp(static_cast<double>(r), -1.0, 1.0);
}

SystemComparison compare_systems(std::span<const EvaluationReport> reports) {
  if (reports.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least 2 systems to compare");
  }
  std::vector<double> wers;
  std::vector<double> sems;
  for (const auto& r : reports) {
    if (!r.corpus_semscore) {
      throw Error(ErrorCode::kInvalidArgument,
                  "system '" + r.system + "' has no corpus SemScore");
    }
    wers.push_back(r.corpus_wer.wer);
    sems.push_back(*r.corpus_semscore);
  }
  const auto wer_ranks = competition_ranks(wers, /*lower_is_better=*/true);
  const auto sem_ranks = competition_ranks(sems, /*lower_is_better=*/false);

  SystemComparison out;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out.rows.push_back({reports[i].system, wers[i], sems[i], wer_ranks[i], sem_ranks[i],
                        static_cast<long>(sem_ranks[i]) - static_cast<long>(wer_ranks[i])});
  }
  try {
    out.pearson = pearson(wers, sems);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateVariance) throw;
  }
  for (std::size_t a = 0; a < reports.size(); ++a) {
    for (std::size_t b = a + 1; b < reports.size(); ++b) {
      // Lower WER should go with higher SemScore.
      const double dw = wers[a] - wers[b];
      const double ds = sems[b] - sems[a];
      if ((dw < 0 && ds > 0) || (dw > 0 && ds < 0)) {
        out.discordant_pairs.emplace_back(reports[a].system, reports[b].system);
      }
    }
  }
  return out;
}

}  // namespace sapeval
