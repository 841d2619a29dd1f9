// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "sapeval/align.hpp"
#include "sapeval/text.hpp"

namespace {

sapeval::Tokens random_tokens(std::size_t n, std::mt19937_64& rng) {
  static const char* kVocab[] = {"THE", "A", "CAT", "SAT", "ON", "MAT", "UM", "DOG", "RAN", "HOME"};
  sapeval::Tokens t(n);
  for (auto& w : t) w = kVocab[rng() % 10];
  return t;
}

void BM_AlignWords(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ref = random_tokens(n, rng);
  const auto hyp = random_tokens(n - n / 10, rng);
  for (auto _ : state) benchmark::DoNotOptimize(sapeval::align_words(ref, hyp));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AlignWords)->RangeMultiplier(4)->Range(8, 512)->Complexity(benchmark::oNSquared);

void BM_AlignWithScript(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto ref = random_tokens(40, rng);
  const auto hyp = random_tokens(36, rng);
  for (auto _ : state) benchmark::DoNotOptimize(sapeval::align(ref, hyp));
}
BENCHMARK(BM_AlignWithScript);

void BM_UtteranceWer(benchmark::State& state) {
  std::mt19937_64 rng(3);
  sapeval::ReferencePair refs;
  refs.with_disfluencies = random_tokens(20, rng);
  refs.without_disfluencies.assign(refs.with_disfluencies.begin() + 2, refs.with_disfluencies.end());
  const auto hyp = random_tokens(18, rng);
  for (auto _ : state) benchmark::DoNotOptimize(sapeval::utterance_wer(refs, hyp));
}
BENCHMARK(BM_UtteranceWer);

}  // namespace
