// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

// The distro's static benchmark_main archive carries LTO bytecode from a
// different compiler release, so the entry point is provided here.
#include <benchmark/benchmark.h>

BENCHMARK_MAIN();
