// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_FIT_HPP_
#define SAPEVAL_FIT_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sapeval/semantic.hpp"

namespace sapeval {

// A human-rated (hypothesis, reference) pair with its component scores
// already computed. `rating` is the Likert judgement rescaled to [0, 1].
struct RatedSample {
  ComponentScores components;
  double rating = 0.0;
};

struct FoldReport {
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  ScorerWeights weights;      // fitted on the training part
  double mse = 0.0;           // on the held-out part
  std::optional<double> r2;   // nullopt when held-out ratings are constant
};

struct FitReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<FoldReport> folds;
  double mean_mse = 0.0;
  std::optional<double> mean_r2;  // over folds that define r2
};

struct FitResult {
  ScorerWeights weights;  // fitted on all samples
  FitReport report;
};

// Ordinary least squares of rating on (nli, bert, soundex) with no
// intercept, solved by Householder QR.
// Throws Error(kRankDeficient) if the component matrix lacks full column rank.
ScorerWeights least_squares(std::span<const RatedSample> samples);

// Fits the final weights on the full data; k-fold cross-validation with a
// seeded shuffle is reported as a diagnostic only.
// Throws Error(kTooFewSamples) when there are fewer samples than folds,
// Error(kRankDeficient), or Error(kInvalidArgument) for folds < 2 or a
// rating outside [0, 1].
FitResult fit_weights(std::span<const RatedSample> samples, std::size_t folds = 5,
                      std::uint64_t seed = 0);

}  // namespace sapeval

#endif  // SAPEVAL_FIT_HPP_
