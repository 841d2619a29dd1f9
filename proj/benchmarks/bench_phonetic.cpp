// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "sapeval/phonetic.hpp"
#include "sapeval/text.hpp"

namespace {

void BM_Soundex(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sapeval::soundex("ASHCRAFT"));
}
BENCHMARK(BM_Soundex);

void BM_JaroWinkler(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sapeval::jaro_winkler("MARTHA", "MARHTA"));
}
BENCHMARK(BM_JaroWinkler);

void BM_ScoreSoundex(benchmark::State& state) {
  const sapeval::Tokens ref = {"HOW", "DO", "YOU", "SPELL", "EXERCISE"};
  const sapeval::Tokens hyp = {"HOW", "DO", "YOU", "FEEL", "EXERCISE"};
  for (auto _ : state) benchmark::DoNotOptimize(sapeval::score_soundex(ref, hyp));
}
BENCHMARK(BM_ScoreSoundex);

}  // namespace
