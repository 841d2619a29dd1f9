// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "sapeval/backend.hpp"
#include "sapeval/report.hpp"
#include "sapeval/scoring.hpp"
#include "sapeval/semantic.hpp"

namespace {

struct Corpus {
  std::vector<sapeval::ReferenceEntry> refs;
  std::map<std::string, std::string> hyps;
};

Corpus make_corpus(std::size_t n) {
  static const char* kVocab[] = {"OPEN", "THE", "DOOR", "PLEASE", "TURN", "LIGHTS", "ON", "OFF"};
  std::mt19937_64 rng(5);
  Corpus c;
  for (std::size_t i = 0; i < n; ++i) {
    sapeval::ReferenceEntry e;
    e.utterance_id = "u" + std::to_string(i);
    e.speaker_id = "s" + std::to_string(i % 40);
    for (int k = 0; k < 8; ++k) e.refs.with_disfluencies.push_back(kVocab[rng() % 8]);
    e.refs.without_disfluencies = e.refs.with_disfluencies;
    if (rng() % 3 == 0) e.refs.with_disfluencies.insert(e.refs.with_disfluencies.begin(), "UM");
    std::string hyp;
    for (int k = 0; k < 7; ++k) hyp += std::string(kVocab[rng() % 8]) + " ";
    c.hyps[e.utterance_id] = hyp;
    c.refs.push_back(std::move(e));
  }
  return c;
}

void BM_ScoreCorpusWer(benchmark::State& state) {
  const Corpus c = make_corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto scored = sapeval::score_utterances(c.refs, c.hyps, nullptr);
    benchmark::DoNotOptimize(sapeval::build_report(std::move(scored)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScoreCorpusWer)->Arg(100)->Arg(1000);

void BM_ScoreCorpusStubSemScore(benchmark::State& state) {
  const Corpus c = make_corpus(static_cast<std::size_t>(state.range(0)));
  sapeval::StubBackend stub;
  sapeval::SemanticScorer scorer(stub);
  for (auto _ : state) {
    auto scored = sapeval::score_utterances(c.refs, c.hyps, &scorer);
    benchmark::DoNotOptimize(sapeval::build_report(std::move(scored)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScoreCorpusStubSemScore)->Arg(100)->Arg(1000);

}  // namespace
