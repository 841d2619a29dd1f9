// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <string>

#include "sapeval/normalize.hpp"

namespace {

void BM_Normalize(benchmark::State& state) {
  const std::string raw =
      "[coughs] (um) I want (to go) to the {g:store} at 3 pm, xxx and buy 12 apples for NASA.";
  for (auto _ : state) benchmark::DoNotOptimize(sapeval::normalize(raw));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * raw.size()));
}
BENCHMARK(BM_Normalize);

void BM_NormalizeHypothesis(benchmark::State& state) {
  const std::string text = "how do you spell exercise, don't you know?";
  for (auto _ : state) benchmark::DoNotOptimize(sapeval::normalize_hypothesis(text));
}
BENCHMARK(BM_NormalizeHypothesis);

}  // namespace
